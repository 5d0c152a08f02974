"""Sum-product experiments in small finite rings."""

from .certificates import DilatedSubring, Saturated, Subring, ZeroDivisorRich
from .errors import SumprodError
from .extraction import GoodSubset, katz_tao_extract, validate_extraction
from .freiman import FreimanModel, build_freiman_model, compute_graded_groups, homogeneous_structure_general
from .rings import (
    FiniteRing,
    RingSpec,
    arithmetic,
    build_ring,
    check_ring_axioms,
    classify_non_zero_divisors,
    inverse,
    units,
)
from .ringio import format_set, parse_set_literal, ring_from_name
from .ruzsa import plunnecke_check, ruzsa_cover, triangle_check, validate_cover
from .sets import RSet
from .setops import (
    additive_energy,
    difference_set,
    dilate,
    growth_report,
    iterated,
    product_set,
    representation_count,
    sumset,
)
from .special import (
    affine_zero_divisor_search,
    algebra_experiment,
    cyclic_ring_experiment,
    division_ring_experiment,
    m2_annihilator_spaces,
    product_ring_experiment,
)
from .sr import UNIT, SrConfig, compute_sr, verify_sr_properties
from .structure import (
    homogeneous_structure_invertible,
    inhomogeneous_structure,
    subring_closure,
    validate_certificate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
