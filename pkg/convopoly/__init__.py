"""
convopoly: approximating polytopes for normalized convolution sets.

Builds de Bruijn walk encodings of integer sets, decomposes them into
cycles, turns cycles into rational corner vectors and checks the
resulting polytopes against brute-force enumeration.
"""

__version__ = "0.1.0"
