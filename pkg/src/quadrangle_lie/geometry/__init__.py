"""Finite geometry of the O6-(2) quadrangle: fields, points and lines, root bases, Weyl group."""
