import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE_READS, readsets
from rwgindex import oracle
from rwgindex.classic import build_bcr, strip_terminators
from rwgindex.core import ReadCollection
from rwgindex.wheeler import (
    EdgeLabelledGraph,
    build_wheeler_paths,
    index_graph,
    path_node_id,
    reads_to_path_graph,
    reconstruct_graph,
    spell_paths,
    verify_wheeler,
)


def test_path_graph_numbering():
    g = reads_to_path_graph(ReadCollection(["GA", "T"]))
    assert g.node_count == 5
    assert g.edges == ((1, 2, "G"), (2, 3, "A"), (4, 5, "T"))
    assert path_node_id((2, 1), 1, 0) == 4
    assert g.in_degrees()[1] == 0 and g.out_degrees()[3] == 0


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        EdgeLabelledGraph(2, ((1, 3, "A"),))
    with pytest.raises(ValueError):
        EdgeLabelledGraph(2, ((1, 2, "N"),))


def test_violation_kinds():
    g = EdgeLabelledGraph(4, ((1, 2, "A"), (3, 4, "C")))
    assert verify_wheeler(g, [1, 3, 2, 4]) is None
    assert verify_wheeler(g, [1, 2, 3, 4]).kind == "source-placement"
    assert verify_wheeler(g, [1, 2, 3, 4], relaxed=True) is None
    assert verify_wheeler(g, [1, 4, 2, 3], relaxed=True).kind == "label-order"
    g = EdgeLabelledGraph(4, ((1, 3, "A"), (2, 4, "A")))
    assert verify_wheeler(g, [1, 2, 4, 3], relaxed=True).kind == "origin-order"
    with pytest.raises(ValueError):
        verify_wheeler(g, [1, 1, 2, 3])


@st.composite
def graphs_with_orderings(draw):
    N = draw(st.integers(1, 6))
    edges = draw(st.lists(st.tuples(st.integers(1, N), st.integers(1, N), st.sampled_from("ACG")), max_size=8))
    ordering = draw(st.permutations(range(1, N + 1)))
    return N, edges, ordering


@given(graphs_with_orderings(), st.booleans())
def test_verify_matches_brute_force(case, relaxed):
    N, edges, ordering = case
    g = EdgeLabelledGraph(N, tuple(edges))
    got = verify_wheeler(g, ordering, relaxed=relaxed) is None
    assert got == oracle.brute_force_wheeler(N, edges, ordering, relaxed)


def test_paths_example(paths_index):
    assert str(paths_index.bwt) == "AGGTTTTTTTGCCGAAAAAATAATAAA"
    assert paths_index.rho == 11
    assert paths_index.source_ranks == [1, 2, 3, 4, 5]
    assert paths_index.node_count == 32
    graph, ordering = index_graph(paths_index)
    assert verify_wheeler(graph, ordering) is None


def test_paths_equal_bcr_of_reversed_reads():
    rev = ReadCollection([s[::-1] for s in EXAMPLE_READS])
    assert strip_terminators(build_bcr(rev).bwt.decode()) == list("AGGTTTTTTTGCCGAAAAAATAATAAA")


@given(readsets)
def test_paths_match_oracle(reads):
    index = build_wheeler_paths(ReadCollection(reads))
    bwt, sources = oracle.naive_relaxed_bwt(reads, [""] * len(reads))
    assert "".join(index.bwt.decode()) == bwt
    assert index.source_ranks == sources == list(range(1, len(reads) + 1))
    graph, ordering = index_graph(index)
    assert verify_wheeler(graph, ordering) is None


@given(readsets)
def test_paths_equal_stripped_bcr_of_reversed(reads):
    # with lexicographic ties, the dollar-free BWT is the BCR of the reversed
    # reads (colex terminator order) with terminators deleted
    index = build_wheeler_paths(ReadCollection(reads))
    rev = ReadCollection([s[::-1] for s in reads])
    assert index.bwt.decode() == strip_terminators(build_bcr(rev).bwt.decode())


@given(readsets)
def test_reconstruction_round_trip(reads):
    index = build_wheeler_paths(ReadCollection(reads))
    assert sorted(spell_paths(index)) == sorted(reads)
    g = reconstruct_graph(index)
    assert verify_wheeler(g, list(range(1, g.node_count + 1))) is None
    assert sorted(g.edges) == sorted(
        (index.node_origin.index(pos) + 1, index.node_origin.index(pos.advance()) + 1, reads[pos.read_id][pos.offset])
        for pos in index.node_origin
        if pos.offset < len(reads[pos.read_id])
    )


def test_random_path_graph_orderings_agree_with_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        reads = ["".join(rng.choice("AC") for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(1, 3))]
        g = reads_to_path_graph(ReadCollection(reads))
        ordering = list(range(1, g.node_count + 1))
        rng.shuffle(ordering)
        for relaxed in (False, True):
            assert (verify_wheeler(g, ordering, relaxed) is None) == oracle.brute_force_wheeler(
                g.node_count, g.edges, ordering, relaxed
            )
