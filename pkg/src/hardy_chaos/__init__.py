"""Chaos decisions for adjoint multipliers and backward-shift functional
calculus on the Hardy space H^2."""

__version__ = "0.1.0"

from .chaos import (  # noqa: E402
    CDVerdict,
    ChaosReport,
    Tri,
    Verdict,
    circle_intersection,
    classify_chaos,
    inverse_invariance_check,
    is_cowen_douglas_sufficient,
    rooter_decomposition,
    verify_bn,
)
from .errors import (  # noqa: E402
    HardyChaosError,
    NotInvertibleError,
    ParseError,
    PreconditionError,
    SymbolDomainError,
)
from .extrema import modulus_extrema  # noqa: E402
from .hardy import HardyVec, inner, reproducing_kernel  # noqa: E402
from .operators import (  # noqa: E402
    adjoint_mult_operator,
    kernel_dimension,
    mult_operator,
    phi_of_shift,
    shift_operator,
)
from .orbits import liyorke_witness, orbit_stats  # noqa: E402
from .parser import SymbolFamily, parse_symbol  # noqa: E402
from .region import scalar_region_scan  # noqa: E402
from .roots import polynomial_roots  # noqa: E402
from .symbols import Symbol, invert_symbol, is_outer_rational  # noqa: E402
