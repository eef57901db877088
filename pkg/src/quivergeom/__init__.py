"""Exact noncommutative Riemannian geometry on finite sets, finite groups
and Hopf quivers: quiver differential calculi, codifferentials, braided
exterior machinery, metrics, bimodule connections, curvature and moduli.
"""

from .linalg import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
