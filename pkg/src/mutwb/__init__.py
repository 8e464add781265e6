"""mutwb: an exact-arithmetic mutation workbench.

Seeds and quivers with involutive mutation, flat-torus curve
configurations with signed crossing ledgers, cluster X/A-transformations
as exact birational maps, torus local systems, representations of the
cylinder-with-disk quiver, exchange-graph exploration, and a CLI plus
JSON HTTP service tying it together.
"""

from .errors import (
    BudgetExceeded,
    DivisionByZeroExpr,
    LoopAtVertex,
    NonMonomialConstant,
    NonPrimitiveClass,
    NotRegular,
    NotSemisimple,
    NotSimple,
    NotSplitOverBase,
    PoleAtPoint,
    WorkbenchError,
    ZeroMonodromy,
)
from .seeds import (
    Seed,
    SkewLattice,
    make_seed,
    mutate_seed,
    mutate_seed_word,
    mutation_sign,
    named_seed,
    pairing,
    seed_from_json,
    seed_to_json,
)
from .quivers import (
    Quiver,
    b_matrix,
    b_matrix_mutate,
    mutate_quiver,
    quiver_from_arrows,
    quiver_of_seed,
    quiver_to_dot,
    reduce_quiver,
)
from .laurent import (
    LaurentExpr,
    RationalExpr,
    RationalMap,
    a_mutation_map,
    compose_maps,
    evaluate_map,
    x_mutation_map,
)
from .curves import (
    GeodesicConfig,
    IntersectionLedger,
    example_config,
    is_mutable,
    ledger_from_geodesics,
    mutate_geodesics,
    mutate_ledger,
    seed_of_config,
)
from .localsystems import Character, CommutingPair, holonomy, mutate_character, mutate_rank_n
from .q0 import Q0Rep, decompose, make_simple, mutate_rep
from .exchange import (
    DecoratedSeed,
    ExchangeGraph,
    canonical_key,
    explore,
    is_finite_type,
    root_decorated,
)

__version__ = "0.1.0"
