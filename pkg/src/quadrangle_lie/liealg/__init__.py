"""Lie algebras of operators on the 27-dimensional module: E6, D_L and G2 over GF(2^k)."""
