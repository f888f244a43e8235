from qdilog.main import app

app(prog_name="qdilog")
