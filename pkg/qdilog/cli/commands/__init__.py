"""
Command modules, one per subcommand
"""
