"""High-precision numerics: polylogarithms, regularized iterated integrals,
Chen transport, and the toy two-variable transport check.

Every routine takes the binary precision explicitly; nothing reads or
mutates mpmath's global context outside a ``working`` block.
"""

from .bigc import BigC, mpf_to_fraction, reconstruct_rational, root_of_unity, working
from .linearized import linearized_transport_check
from .paths import PathSpec, TangentData
from .polylog import bernoulli_pairing, distribution_defect, li, multiple_li
from .quadrature import iterint, transport
from .star import dch_series, star_check

__all__ = [
    "BigC",
    "PathSpec",
    "TangentData",
    "bernoulli_pairing",
    "dch_series",
    "distribution_defect",
    "iterint",
    "li",
    "linearized_transport_check",
    "mpf_to_fraction",
    "multiple_li",
    "reconstruct_rational",
    "root_of_unity",
    "star_check",
    "transport",
    "working",
]
