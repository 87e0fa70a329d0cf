"""Sum rules for signed magnifications of the A, D, E lens-map families.

Exact polynomial arithmetic, an Euler-trace evaluator for sums of rational
functions over polynomial roots, the family catalog, a numeric image solver
and a source-plane region mapper.
"""

from .catalog import (
    DegenerateRootError,
    FamilySpec,
    Params,
    SourcePoint,
    back_substitute,
    eliminate,
    expected_coset_rep,
    hessian_determinant,
    jacobian_determinant,
    lens_map,
    magnification_fn,
    parse_family,
    potential,
)
from .images import PreImage, SolveReport, is_caustic, signed_sums, solve_images
from .polynomial import (
    BiPolynomial,
    DegenerateResultantError,
    NotInvertibleError,
    Polynomial,
    RationalFunction,
    discriminant,
    extended_gcd,
    mod_inverse,
    resultant,
)
from .regions import (
    GridSpec,
    MaxImageWitness,
    RegionMap,
    WitnessNotFoundError,
    caustic,
    critical_curve,
    find_max_image_witness,
    map_source_plane,
)
from .roots import RootFindingError, complex_roots
from .trace import PoleError, RepeatedRootsError, TraceReport, numeric_trace_oracle, trace_sum

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
