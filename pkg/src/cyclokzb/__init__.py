"""Weight-truncated cyclotomic Lie algebra toolkit.

Exact models of the holonomy Lie algebras attached to the punctured line and
the once-punctured elliptic curve at level N, the elliptic embedding between
them, extension classes of Tate objects over the distribution relations, and
a high-precision numeric layer for monodromy and Eisenstein/Hecke checks.
"""

from .errors import ContractViolation

__all__ = ["ContractViolation"]

__version__ = "0.1.0"
