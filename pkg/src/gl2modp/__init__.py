"""Exact mod-p weight combinatorics for GL_2(Q_p) and its Galois side."""

__version__ = "0.1.0"
