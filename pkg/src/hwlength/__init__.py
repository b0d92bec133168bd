"""Lengths of first local cohomology of homogeneous hypersurfaces mod p.

The D-module and unit F-module lengths of H^1_g(R) over F_p are read off the
Frobenius action (Hasse-Witt matrix) on H^{n-1}(Y, O_Y) of the projective
hypersurface Y = {g = 0}.
"""

from .field import FieldCtx, FieldElement, frobenius, is_prime, make_field
from .geometry import (
    HasseWittData,
    HypersurfaceP,
    cohomology_basis,
    good_reduction_check,
    hasse_witt_matrix,
    singular_points_bruteforce,
    smoothness_check,
)
from .lengths import LengthReport, char0_lengths, length_at_prime
from .mpoly import MultiPolyP, MultiPolyZ, parse_poly, reduce_mod
from .semilinear import (
    SemilinearOperator,
    char_poly,
    classify,
    iterate_matrix,
    nilpotent_part,
    quasilength,
    stable_part,
    stable_rank,
)
from .sweep import SweepConfig, SweepSummary, persist, read_reports, run_sweep
from .upoly import UniPoly, count_irreducible_factors, squarefree_decomposition

__version__ = "0.1.0"
