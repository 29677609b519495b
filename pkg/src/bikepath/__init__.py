"""Periodic bicycle paths, Darboux transformations and their invariants.

Exact rational arithmetic (``fractions.Fraction``) is the default; every
operation also runs on binary64 floats with explicit tolerances.
"""

from .darboux import (
    Correspondence,
    DarbouxParams,
    DarbouxVector,
    LinkageDecomposition,
    closure_analysis,
    closure_vectors,
    darboux_step,
    darboux_transform,
    decompose_linkages,
    edge_mobius,
    monodromy,
    verify_correspondence,
)
from .errors import BikePathError, DegenerateError, InvalidInputError, ModeError
from .geometry import FLOAT, RATIONAL, Point, point, shoelace_area, triangle_area
from .invariants import AreaBaseline, area_under_path, check_area_preservation, sweep_invariant
from .mobius import MobiusMap, ProjectiveParam, mobius_apply, mobius_conjugacy_invariant, mobius_fit, mobius_fixed_points
from .paths import (
    PeriodicPath,
    SignSequence,
    check_trapezoidal,
    classify_as_family,
    enumerate_sign_sequences,
    make_regular,
    make_sign_sequence_path,
    validate_path,
)
from .render import RenderSpec, render_svg
from .rigidity import ConstraintSystem, SolveConfig, random_search, solve_from_start

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
