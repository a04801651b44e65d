"""Finding and avoiding oriented cycles in dense digraphs of high chromatic number."""

__version__ = "0.1.0"

from .digraph import (  # noqa: E402
    Digraph,
    DigraphError,
    EmptyDigraph,
    FormatError,
    InvalidVertex,
    LoopRejected,
    ParallelArcRejected,
    clone_vertex,
    degree_histograms,
    from_text,
    induced,
    mask_of,
    members,
    min_in_degree,
    min_out_degree,
    r_in_dominated,
    read_digraph,
    to_dot,
    to_text,
    write_digraph,
)
from .pattern import (  # noqa: E402
    CyclePattern,
    PathPattern,
    PatternClass,
    PatternError,
    all_patterns,
    blocks,
    classify,
    contains_motif,
    delete_segment,
    forbidden_family,
)
from .chromatic import (  # noqa: E402
    ChromaticResult,
    Coloring,
    burr_surrogate,
    chromatic_bounds,
    chromatic_exact,
    chromatic_number,
    gallai_roy_path,
)
from .search import (  # noqa: E402
    Embedding,
    SearchOutcome,
    Status,
    contains_pattern,
    find_oriented_path,
    forbidden_family_check,
    verify_embedding,
)
from .construct import (  # noqa: E402
    AugmentedLayout,
    SizeRejected,
    augmented_flip_free,
    balance_by_cloning,
    blowup_cycle,
    general_shift_digraph,
    shift_digraph,
)
from .extract import (  # noqa: E402
    ExtractionFailed,
    ExtractionParams,
    ExtractionTrace,
    PatternNotGuaranteed,
    extract_any,
    find_cohesive,
    thresholds,
)
from .sample import random_digraph  # noqa: E402
