"""
qdilog
High-precision q-dilogarithm, Mellin–Barnes representations and asymptotic expansions
"""

__version__ = "1.0.0"
