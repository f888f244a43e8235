"""
Numerical services: special functions, q-series, Mellin-Barnes integrals,
asymptotic expansions and the verification suites built on them.
"""
