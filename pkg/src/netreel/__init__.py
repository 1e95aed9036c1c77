"""netreel: animated realization sequences for probabilistic graphs.

Turns a graph whose edges carry occurrence probabilities into a sequence
of sampled realizations with stability-controlled layouts and matched
community colors, plus tools for summarizing and scoring the resulting
distributions of network statistics.
"""

from .bundle import FrameBundle, build_bundle, parse_bundle
from .community import (
    ColorAssignment,
    CommunityAssignment,
    CoCommunityGraph,
    StabilityScores,
    assign_colors,
    build_co_community_graph,
    detect_communities,
    stability_scores,
)
from .errors import ParseError, ValidationError
from .evaluate import (
    BALL_COUNT,
    BallDistribution,
    EmdReport,
    SamplingErrorReport,
    default_bin_width,
    emd,
    qdp,
    sampling_error,
)
from .layout import (
    DEFAULT_ALPHAS,
    AggregatedDistances,
    DistanceMatrix,
    Layout,
    LayoutSet,
    aggregate_distances,
    distance_matrix,
    layout_set,
    minimize_anchored,
    minimize_reference,
    stress,
)
from .model import (
    CssTensor,
    GraphRealization,
    ProbabilisticGraph,
    RealizationSequence,
    VIEW_MODES,
    apply_view,
    consensus_threshold,
    ingest_css,
    parse_css,
    parse_graph,
    sample_realizations,
)
from .stats import (
    StatDistribution,
    StatSpec,
    community_count,
    density,
    distribution,
    edge_occurrence,
    isolates,
    node_stability,
    shortest_path,
)

__version__ = "0.1.0"
