"""Compressed indexes for read sets: eBWT, BCR and (relaxed) Wheeler paths."""
from .classic import (
    BCRIndex,
    EBWTIndex,
    NonPrimitiveReadError,
    backward_search,
    build_bcr,
    build_ebwt,
    classic_matches,
    colex_terminator_order,
    cycle_decomposition,
    omega_compare,
    omega_compare_counted,
)
from .core import (
    DNA_ALPHABET,
    Alphabet,
    ReadCollection,
    RunLengthBWT,
    SparseMarks,
    TextPosition,
    rle_encode,
)
from .indexfile import IndexFormatError, dumps, load, loads, save
from .query import (
    Occurrence,
    SearchState,
    certify,
    classify_match,
    count,
    locate_all,
    next_position,
    search,
    search_trace,
    true_matches,
)
from .relaxed import (
    ContextAssignment,
    RelaxedIndex,
    build_relaxed,
    contexts_from_genome,
    contexts_from_overlaps,
    empty_contexts,
    explicit_contexts,
    run_count_report,
)
from .wheeler import (
    EdgeLabelledGraph,
    PathIndex,
    WheelerPathIndex,
    WheelerViolation,
    build_wheeler_paths,
    reconstruct_graph,
    verify_wheeler,
)
