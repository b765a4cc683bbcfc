"""
Galois field quantum mechanics engine.

Exact-arithmetic tables, searches and group checks for GQM(N, q).
"""

__version__ = "1.0.0"
