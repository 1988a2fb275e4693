"""Exact lattice arithmetic and fixed-locus component counts.

Library surface in one place; see the subpackages for details:

- lattices: Gram matrices, Smith normal form, discriminant groups and
  forms, the Gauss-sum signature check
- e8: root enumeration and coverage of the 256 order-two classes
- embeddings: gluing-data classification, orbits, the wall criterion
- quiver: the local fixed-point model and the partition d statistic
- strata: component-count tables, two ways, with discrepancy records
- kernels: compiled/pure backend selection for the hot loops
- cli: the hkfl command
"""

from .errors import (BadParameter, BadParity, BoundTooLarge, CheckFailed,
                     Degenerate, HkflError, NotEven, NotSymmetric, OutOfScope,
                     Overflow, TooLarge, ZeroVector)
from .lattices import (DiscriminantProfile, Lattice, MilgramReport, QModTwoZ,
                       SnfResult, b_value, direct_sum, discriminant_profile,
                       divisibility, make_lattice, milgram_check,
                       named_lattice, q_value, rescale, smith_normal_form)

__version__ = "0.1.0"

__all__ = [
    "BadParameter", "BadParity", "BoundTooLarge", "CheckFailed", "Degenerate",
    "HkflError", "NotEven", "NotSymmetric", "OutOfScope", "Overflow",
    "TooLarge", "ZeroVector",
    "DiscriminantProfile", "Lattice", "MilgramReport", "QModTwoZ", "SnfResult",
    "b_value", "direct_sum", "discriminant_profile", "divisibility",
    "make_lattice", "milgram_check", "named_lattice", "q_value", "rescale",
    "smith_normal_form", "__version__",
]
