"""General Sombor indices on k-polygonal cacti.

Index computation, extremal cactus families, closed-form bounds, and
exhaustive verification over all cacti up to isomorphism.
"""

from .constructions import (
    BoundKind,
    BoundSpec,
    RangeError,
    bound_value,
    chain_adjacent,
    chain_nonadjacent,
    is_nice_saturated,
    n44_max,
    nice_saturated,
    saturated_count,
    star_cactus,
)
from .enumeration import canonical_code, count_cacti, enumerate_cacti, random_cactus
from .graph import (
    CactusError,
    Graph,
    GraphError,
    PolygonalCactus,
    PolygonTree,
    blocks,
    format_graph,
    is_chemical,
    parse_graph,
    polygon_tree,
    validate_cactus,
)
from .indices import (
    EdgeTypeCounts,
    IndexParams,
    alpha_sombor,
    delta,
    edge_type_counts,
    escalating_violations,
    general_sombor,
    majorizes,
    named_index,
    r,
    sombor_via_counts,
    special_escalating_violations,
)
from .verification import (
    VerificationReport,
    lemma_property_suite,
    rewire,
    verify_max_general,
    verify_min_alpha_sombor,
    verify_min_general,
)

__version__ = "0.1.0"
