import pytest
from hypothesis import given

from conftest import EXAMPLE_GENOME, EXAMPLE_READS, readsets, readsets_with_contexts
from rwgindex import oracle
from rwgindex.core import ReadCollection
from rwgindex.relaxed import (
    ContextAssignment,
    build_relaxed,
    contexts_from_genome,
    contexts_from_overlaps,
    empty_contexts,
    explicit_contexts,
    longest_overlap,
    run_count_report,
)
from rwgindex.wheeler import build_wheeler_paths, index_graph, verify_wheeler


def test_genome_contexts(example_reads):
    ctx = contexts_from_genome(example_reads, EXAMPLE_GENOME)
    assert ctx.contexts == ("", "GA", "GAT", "GATTA", "GATTAG")
    assert ctx.provenance == ("empty", "genome", "genome", "genome", "genome")
    assert contexts_from_genome(example_reads, EXAMPLE_GENOME, cap=2).contexts == ("", "GA", "AT", "TA", "AG")


def test_genome_contexts_flag_missing_reads():
    reads = ReadCollection(["GAT", "CCC"])
    ctx = contexts_from_genome(reads, "AGAT")
    assert ctx.contexts == ("A", "") and ctx.flagged == (1,)


def test_longest_overlap():
    assert longest_overlap("GATTA", "TTAGA") == 3
    assert longest_overlap("AAA", "AAA") == 2  # proper suffix only
    assert longest_overlap("AC", "GT") == 0


def test_overlap_contexts(example_reads):
    ctx = contexts_from_overlaps(example_reads, min_overlap=2)
    assert ctx.contexts == ("TTA", "GA", "T", "TA", "G")
    assert ctx.provenance == ("overlap",) * 5
    with pytest.raises(ValueError):
        contexts_from_overlaps(example_reads, min_overlap=0)


def test_explicit_contexts(example_reads):
    ctx = explicit_contexts(example_reads, ["", "A", "", "", "C"])
    assert ctx.provenance == ("empty", "explicit", "empty", "empty", "explicit")
    with pytest.raises(ValueError):
        explicit_contexts(example_reads, ["A"])
    with pytest.raises(ValueError):
        explicit_contexts(example_reads, ["N"] * 5)


def test_assignment_validation():
    with pytest.raises(ValueError):
        ContextAssignment(("A",), ("guess",))
    with pytest.raises(ValueError):
        ContextAssignment(("A",), ())


def test_relaxed_example(relaxed_index):
    assert str(relaxed_index.bwt) == "GTTTTTTCCGGGAAAAAATTTAAAAAA"
    assert run_count_report(relaxed_index) == (7, 27, 5, 32)
    assert relaxed_index.source_ranks == [1, 4, 12, 19, 25]
    graph, ordering = index_graph(relaxed_index)
    assert verify_wheeler(graph, ordering, relaxed=True) is None
    assert verify_wheeler(graph, ordering).kind == "source-placement"


@given(readsets_with_contexts())
def test_relaxed_matches_oracle(case):
    reads, contexts = case
    index = build_relaxed(ReadCollection(reads), explicit_contexts(ReadCollection(reads), contexts))
    bwt, sources = oracle.naive_relaxed_bwt(reads, contexts)
    assert "".join(index.bwt.decode()) == bwt
    assert index.source_ranks == sources
    assert [tuple(p) for p in index.node_origin] == oracle.naive_relaxed_nodes(reads, contexts)
    graph, ordering = index_graph(index)
    assert verify_wheeler(graph, ordering, relaxed=True) is None


@given(readsets)
def test_empty_contexts_reproduce_paths(reads):
    rc = ReadCollection(reads)
    relaxed = build_relaxed(rc, empty_contexts(rc))
    paths = build_wheeler_paths(rc)
    assert relaxed.bwt == paths.bwt and relaxed.node_origin == paths.node_origin


def test_run_count_report_all_kinds(example_reads, ebwt_index, bcr_index, paths_index):
    assert run_count_report(ebwt_index) == (10, 27, 5, 27)
    assert run_count_report(bcr_index) == (19, 27, 5, 32)
    assert run_count_report(paths_index) == (11, 27, 5, 32)
    with pytest.raises(TypeError):
        run_count_report(object())


def test_reads_not_in_genome_keep_working():
    reads = ReadCollection(list(EXAMPLE_READS) + ["CCCC"])
    index = build_relaxed(reads, contexts_from_genome(reads, EXAMPLE_GENOME))
    assert index.contexts.flagged == (5,)
    assert index.n == 31
