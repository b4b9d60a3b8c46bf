"""Monotone compression schemes and estimating-the-maximum learning.

The library builds compress-then-reconstruct learners from deterministic
order towers, chains them to arbitrary sample sizes, measures their
(epsilon, delta) behavior by exact-arithmetic Monte Carlo, reduces scheme
arity on sub-domains, and decides existence of bounded schemes on small
finite domains.
"""

from .analysis import (
    DescentError,
    DeskScaleError,
    ReductionWitness,
    SearchProblem,
    SearchResult,
    counting_refutes,
    descend,
    reconstruction_image,
    search_schemes,
    witness_to_text,
)
from .calkin_wilf import calkin_wilf_domain, fraction_at, index_of
from .chains import (
    DEFAULT_CAP,
    CompressionTrace,
    ResourceLimitError,
    compress_chain,
    decompress_chain,
    trace_from_text,
    trace_to_text,
)
from .classic import (
    PlanePoint,
    Rectangle,
    load_plane_csv,
    max_estimator,
    plane_point,
    rect_compress,
    rect_reconstruct,
)
from .config import ConfigError, ExperimentConfig, load_config, parse_rational
from .core import (
    Domain,
    EnumeratedDomain,
    FiniteDomain,
    FiniteSupportDistribution,
    Hypothesis,
    Point,
    Sample,
    draw_sample,
    emx_gap,
    erm_max_coverage,
    expectation,
    naturals_domain,
)
from .evaluation import EmxLearner, EvalReport, TrialRecord, apply_learner, evaluate
from .schemes import (
    MonotoneScheme,
    SchemeError,
    SoundnessReport,
    enumeration_scheme,
    identity_eta_scheme,
    seeded_subsets,
    tower_scheme,
    verify_soundness,
)
from .seeds import split_seed
from .towers import ContextChain, OrderTower, enumerated_tower, finite_proxy_tower

__all__ = [
    "CompressionTrace",
    "ConfigError",
    "ContextChain",
    "DEFAULT_CAP",
    "DescentError",
    "DeskScaleError",
    "Domain",
    "EmxLearner",
    "EnumeratedDomain",
    "EvalReport",
    "ExperimentConfig",
    "FiniteDomain",
    "FiniteSupportDistribution",
    "Hypothesis",
    "MonotoneScheme",
    "OrderTower",
    "PlanePoint",
    "Point",
    "Rectangle",
    "ReductionWitness",
    "ResourceLimitError",
    "Sample",
    "SchemeError",
    "SearchProblem",
    "SearchResult",
    "SoundnessReport",
    "TrialRecord",
    "apply_learner",
    "calkin_wilf_domain",
    "compress_chain",
    "counting_refutes",
    "decompress_chain",
    "descend",
    "draw_sample",
    "emx_gap",
    "enumerated_tower",
    "enumeration_scheme",
    "erm_max_coverage",
    "evaluate",
    "expectation",
    "finite_proxy_tower",
    "fraction_at",
    "identity_eta_scheme",
    "index_of",
    "load_config",
    "load_plane_csv",
    "max_estimator",
    "naturals_domain",
    "parse_rational",
    "plane_point",
    "reconstruction_image",
    "rect_compress",
    "rect_reconstruct",
    "search_schemes",
    "seeded_subsets",
    "split_seed",
    "tower_scheme",
    "trace_from_text",
    "trace_to_text",
    "verify_soundness",
    "witness_to_text",
]
