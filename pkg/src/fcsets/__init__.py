"""Fusion-closed sets of primaries: classes, blocks, lattices, centers and locality."""

from .center import (
    CenterGroup,
    center,
    central_extensions,
    central_quotient,
    invariant_factors,
    is_abelian,
    maximal_central_extension,
    quotient_subgroup,
    subgroups,
)
from .errors import FCError, InvariantBreach, UnsupportedOperation
from .fcset import (
    BlockPartition,
    ClassPartition,
    FCSet,
    block_representation,
    blocks,
    classes,
    closure,
    dual,
    extent,
    full_fcset,
    is_fusion_closed,
    orthogonality_report,
    overlap,
    overlap_matrix,
    trivial_fcset,
)
from .lattice import (
    FCLattice,
    check_modularity,
    enumerate_fcsets,
    interval_counting_check,
)
from .local import (
    LocalityProfile,
    is_integral,
    is_local,
    is_nilpotent,
    is_twister,
    locality_profile,
    nilpotent_divisor_scan,
    ramond_class,
    verify_character_properties,
    weight_congruence_report,
)
from .modelfile import (
    ModelFile,
    bundled_models,
    load_bundled,
    load_model,
    parse_model,
    serialize_model,
)
from .ring import (
    FusionRing,
    fusion_matrix,
    global_characters,
    perron_frobenius_dims,
    validate_ring,
    verlinde_consistency,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
