"""Exact derived exterior powers and multiplicative Euler characteristics."""
__version__ = "0.1.0"
