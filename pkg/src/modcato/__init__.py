"""Exact character and multiplicity calculus for the modular category O.

Small-rank root systems over F_p: truncated formal characters, divided-power
contravariant Gram ranks, decomposition tables, Verma-flag calculus under
truncation and tensor functors, and shift-functor periodicity verification.
"""

__version__ = "0.1.0"

from .category_o import (  # noqa: F401
    DecompositionTable,
    FlagVector,
    SimpleCharacter,
    build_decomposition_table,
    decomposition_numbers,
    full_simple_character,
    hom_dim_projective,
    projective_verma_mult,
    q_module_mult,
    simple_character,
    steinberg_check,
    steinberg_digits,
    tensor_flag,
    truncate_flag,
    validate_table_consistency,
)
from .charring import (  # noqa: F401
    FormalCharacter,
    TruncationBox,
    char_add,
    char_multiply,
    char_scale,
    char_single,
    frobenius_twist_char,
    negate_weights,
    peel_decompose,
    verma_character,
    weyl_character,
    weyl_dimension,
)
from .hypalg import (  # noqa: F401
    GramMatrix,
    PBWMonomial,
    SizeGuard,
    UElement,
    binomial_mod_p,
    chi_eval,
    enumerate_f_monomials,
    gram_rank_char0,
    hc_project,
    shapovalov_gram,
    simple_weight_dim,
    straighten,
)
from .periodicity import (  # noqa: F401
    ShiftContext,
    shift_down_flag,
    shift_up_flag,
    verify_periodicity,
    verify_projective_shift,
    verify_updown,
)
from .reporting import CheckRecord, Report  # noqa: F401
from .rootdata import (  # noqa: F401
    RootSystem,
    RootVector,
    Weight,
    build_root_system,
    is_dominant,
    kostant_partition,
    leq,
    pairing,
)
from .topology import (  # noqa: F401
    CarvedOpen,
    LocallyClosedSet,
    OpenSet,
    carve_J_Jprime,
    is_locally_closed,
    min_l,
    periodicity_condition,
    shift_set,
)
