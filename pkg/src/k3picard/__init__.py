"""Certify geometric Picard rank 1 for K3 surfaces of degree 6 and 8.

The pipeline reduces a rational model mod p, finds a line or a split
tritangent there, bounds the rank with the Weil polynomial, and rules out the
same curve over Q-bar with Groebner bases.
"""

from .errors import K3Error

__version__ = "0.1.0"

__all__ = ["K3Error", "__version__"]
