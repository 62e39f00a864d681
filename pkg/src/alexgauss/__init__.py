"""Alexander polynomials from Gaussian contractions in the Weyl-Heisenberg algebra."""
__version__ = "0.1.0"
