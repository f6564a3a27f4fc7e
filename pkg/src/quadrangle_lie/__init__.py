"""Top-level package for quadrangle-lie: Lie algebras in characteristic 2 from the O6-(2) quadrangle."""

__version__ = "0.1.0"
