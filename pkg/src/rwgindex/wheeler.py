"""Readsets as sets of labelled paths, ordered as (relaxed) Wheeler graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from .core import (
    Alphabet,
    DNA_ALPHABET,
    ReadCollection,
    RunLengthBWT,
    SparseMarks,
    TextPosition,
    rle_encode,
)

if TYPE_CHECKING:
    from .query import LFBreakTable, ToeholdSamples, WitnessPointerTable
    from .relaxed import ContextAssignment


@dataclass(frozen=True)
class EdgeLabelledGraph:
    node_count: int
    edges: tuple[tuple[int, int, str], ...]  # (origin, destination, label), nodes 1..N
    alphabet: Alphabet = DNA_ALPHABET

    def __post_init__(self):
        for u, v, a in self.edges:
            if not (1 <= u <= self.node_count and 1 <= v <= self.node_count):
                raise ValueError(f"edge ({u}, {v}) leaves 1..{self.node_count}")
            if a not in self.alphabet:
                raise ValueError(f"edge label {a!r} not in alphabet")

    def in_degrees(self) -> list[int]:
        deg = [0] * (self.node_count + 1)
        for _, v, _ in self.edges:
            deg[v] += 1
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * (self.node_count + 1)
        for u, _, _ in self.edges:
            deg[u] += 1
        return deg


def path_node_id(lengths: Sequence[int], read_id: int, k: int) -> int:
    """Node number of v_k of a read in :func:`reads_to_path_graph` numbering."""
    return sum(ln + 1 for ln in lengths[:read_id]) + k + 1


def reads_to_path_graph(reads: ReadCollection) -> EdgeLabelledGraph:
    edges, base = [], 0
    for s in reads:
        for k, ch in enumerate(s, start=1):
            edges.append((base + k, base + k + 1, ch))
        base += len(s) + 1
    return EdgeLabelledGraph(base, tuple(edges), reads.alphabet)


@dataclass(frozen=True)
class WheelerViolation:
    kind: str  # "label-order" | "origin-order" | "source-placement"
    detail: str
    first: tuple = ()
    second: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def verify_wheeler(
    graph: EdgeLabelledGraph, ordering: Sequence[int], relaxed: bool = False
) -> WheelerViolation | None:
    """Check the Wheeler monotonicity conditions under ``ordering``.

    ``ordering[v - 1]`` is the rank given to node v. Returns None when the
    ordering is valid, otherwise the first violation found. With
    ``relaxed=False`` in-degree-0 nodes must also precede all other nodes.
    """
    N = graph.node_count
    if sorted(ordering) != list(range(1, N + 1)):
        raise ValueError("ordering is not a permutation of 1..N")
    key = graph.alphabet.key
    ranked = [(ordering[u - 1], ordering[v - 1], a) for u, v, a in graph.edges]

    by_label: dict[str, list[tuple[int, int]]] = {}
    for u, v, a in ranked:
        by_label.setdefault(a, []).append((u, v))

    # labels: every destination of a smaller label precedes every destination of a larger one
    worst = None  # (max destination so far, edge achieving it)
    for a in sorted(by_label, key=key):
        group = by_label[a]
        low = min(group, key=lambda e: e[1])
        if worst is not None and worst[0] >= low[1]:
            return WheelerViolation(
                "label-order",
                f"edge into rank {worst[0]} labelled {worst[2]!r} does not precede "
                f"edge into rank {low[1]} labelled {a!r}",
                (worst[1][0], worst[0], worst[2]),
                (low[0], low[1], a),
            )
        high = max(group, key=lambda e: e[1])
        if worst is None or high[1] > worst[0]:
            worst = (high[1], high, a)

    # equal labels: strictly smaller origin never has a larger destination
    for a, group in by_label.items():
        group.sort()
        best = None  # (max destination among strictly smaller origins, edge)
        i = 0
        while i < len(group):
            j = i
            while j < len(group) and group[j][0] == group[i][0]:
                j += 1
            if best is not None and group[i][1] < best[0]:
                return WheelerViolation(
                    "origin-order",
                    f"edges labelled {a!r}: origin {best[1][0]} < {group[i][0]} "
                    f"but destination {best[0]} > {group[i][1]}",
                    (best[1][0], best[1][1], a),
                    (group[i][0], group[i][1], a),
                )
            top = group[j - 1]
            if best is None or top[1] > best[0]:
                best = (top[1], top)
            i = j

    if not relaxed:
        indeg = graph.in_degrees()
        src = [ordering[v - 1] for v in range(1, N + 1) if indeg[v] == 0]
        rest = [ordering[v - 1] for v in range(1, N + 1) if indeg[v] > 0]
        if src and rest and max(src) > min(rest):
            return WheelerViolation(
                "source-placement",
                f"node with in-degree 0 at rank {max(src)} follows a node with "
                f"positive in-degree at rank {min(rest)}",
                (max(src),),
                (min(rest),),
            )
    return None


def read_order(reads: ReadCollection) -> tuple[int, ...]:
    """Read ids in lexicographic order (ties by id).

    Forward path search over reads mirrors BCR over the reversed reads, whose
    colexicographic terminator order is this lexicographic order.
    """
    key = reads.alphabet.key
    return tuple(sorted(reads.ids, key=lambda i: ([key(c) for c in reads[i]], i)))


def order_path_nodes(
    reads: ReadCollection, contexts: Sequence[str], tie_rank: Sequence[int]
) -> list[tuple[int, int]]:
    """Nodes (read id, k) sorted colexicographically by context + read[:k].

    Prefix doubling over the chains context + read; equal strings are ordered
    by ``tie_rank[read id]``.
    """
    key = reads.alphabet.key
    chains = [ctx + s for ctx, s in zip(contexts, reads)]
    elems = [(rid, p) for rid, ch in enumerate(chains) for p in range(len(ch) + 1)]
    # rank[rid][p]: rank of reversed chain[:p] truncated to h symbols; 0 = empty
    rank = [[0] + [1 + key(c)[1] for c in ch] for ch in chains]
    longest = max((len(ch) for ch in chains), default=0)
    h = 1
    while h < longest:
        def pair(e, h=h):
            rid, p = e
            return (rank[rid][p], rank[rid][p - h] if p > h else 0)

        elems.sort(key=pair)
        new = [[0] * len(row) for row in rank]
        cur, prev = 0, None
        for e in elems:
            pk = pair(e)
            if pk != prev:
                cur += 1
                prev = pk
            new[e[0]][e[1]] = cur
        rank = new
        h *= 2
    ctx_len = [len(c) for c in contexts]
    nodes = [(rid, k) for rid, s in enumerate(reads) for k in range(len(s) + 1)]
    nodes.sort(key=lambda nk: (rank[nk[0]][ctx_len[nk[0]] + nk[1]], tie_rank[nk[0]]))
    return nodes


@dataclass(eq=False)
class PathIndex:
    """RLBWT of a readset stored as a set of paths, plus locating structures.

    Node ranks run 1..N with N = n + r. The BWT holds the label leaving each
    node that is not a sink, in rank order. ``reads``, ``node_origin`` and the
    full contexts are build-time data and are not serialized.
    """

    bwt: RunLengthBWT
    node_count: int
    sources: SparseMarks
    sinks: SparseMarks
    read_lengths: tuple[int, ...]
    alphabet: Alphabet
    first_node: TextPosition | None
    contexts: "ContextAssignment | None" = None
    samples: "ToeholdSamples | None" = None
    sink_next: tuple = ()
    breaks: "LFBreakTable | None" = None
    witness: "WitnessPointerTable | None" = None
    reads: ReadCollection | None = None
    node_origin: tuple[TextPosition, ...] | None = None
    smaller: dict = field(init=False, repr=False)

    kind = "paths"

    def __post_init__(self):
        smaller, total = {}, 0
        for c in self.alphabet.symbols:
            smaller[c] = total
            total += self.bwt.count(c)
        self.smaller = smaller

    @property
    def n(self) -> int:
        return len(self.bwt)

    @property
    def r(self) -> int:
        return len(self.read_lengths)

    @property
    def rho(self) -> int:
        return self.bwt.rho

    @property
    def source_ranks(self) -> list[int]:
        return list(self.sources.positions)

    @property
    def sink_ranks(self) -> list[int]:
        return list(self.sinks.positions)

    @property
    def source_mark(self) -> list[int]:
        return self.sources.bits()

    @property
    def sink_mark(self) -> list[int]:
        return self.sinks.bits()

    # navigation between node ranks and BWT positions
    def bwt_pos(self, node_rank: int) -> int | None:
        """BWT position of a node's outgoing label; None for sinks."""
        if node_rank in self.sinks:
            return None
        return self.sinks.rank0(node_rank)

    def node_of(self, bwt_pos: int) -> int:
        return self.sinks.select0(bwt_pos)

    def slice_of(self, i: int, j: int) -> tuple[int, int]:
        """BWT positions [p, q] of the non-sink nodes ranked i..j."""
        return self.sinks.rank0(i - 1) + 1, self.sinks.rank0(j)

    def destination(self, symbol: str, k: int) -> int:
        """Rank of the node entered by the k-th ``symbol`` edge in BWT order."""
        return self.sources.select0(self.smaller[symbol] + k)

    def lf(self, bwt_pos: int) -> int:
        c = self.bwt[bwt_pos]
        return self.destination(c, self.bwt.rank(c, bwt_pos))

    def full_context(self, pos: TextPosition) -> str:
        """Imaginary context plus read prefix ending at ``pos`` (build-time only)."""
        ctx = self.contexts.contexts[pos.read_id] if self.contexts is not None else ""
        return ctx + self.reads[pos.read_id][: pos.offset]


class WheelerPathIndex(PathIndex):
    kind = "paths"


def build_path_index(
    reads: ReadCollection,
    contexts: Sequence[str],
    cls: type[PathIndex] = PathIndex,
    assignment=None,
) -> PathIndex:
    from .query import build_break_table, build_sink_next, build_toehold_samples, build_witness_table

    tie = [0] * reads.r
    for pos, rid in enumerate(read_order(reads)):
        tie[rid] = pos
    nodes = order_path_nodes(reads, contexts, tie)
    N = len(nodes)
    lengths = reads.lengths
    labels, sources, sinks = [], [], []
    for rank, (rid, k) in enumerate(nodes, start=1):
        if k == 0:
            sources.append(rank)
        if k == lengths[rid]:
            sinks.append(rank)
        else:
            labels.append(reads[rid][k])
    index = cls(
        bwt=rle_encode(labels),
        node_count=N,
        sources=SparseMarks(sources, N),
        sinks=SparseMarks(sinks, N),
        read_lengths=lengths,
        alphabet=reads.alphabet,
        first_node=TextPosition(*nodes[0]) if nodes else None,
        contexts=assignment,
        reads=reads,
        node_origin=tuple(TextPosition(rid, k) for rid, k in nodes),
    )
    index.samples = build_toehold_samples(index)
    index.sink_next = build_sink_next(index)
    index.breaks = build_break_table(index)
    index.witness = build_witness_table(index)
    return index


def build_wheeler_paths(reads: ReadCollection) -> WheelerPathIndex:
    """Dollar-free path representation: sources first, nodes colex by read prefix."""
    return build_path_index(reads, [""] * reads.r, WheelerPathIndex)


def index_graph(index: PathIndex) -> tuple[EdgeLabelledGraph, list[int]]:
    """The underlying path graph of the readset and the index's node ordering."""
    graph = reads_to_path_graph(index.reads)
    ordering = [0] * graph.node_count
    for rank, pos in enumerate(index.node_origin, start=1):
        ordering[path_node_id(index.read_lengths, pos.read_id, pos.offset) - 1] = rank
    return graph, ordering


def reconstruct_graph(index: PathIndex) -> EdgeLabelledGraph:
    """Rebuild the labelled graph on node ranks from the BWT and the marks alone."""
    edges = []
    for p in range(1, index.n + 1):
        edges.append((index.node_of(p), index.lf(p), index.bwt[p]))
    return EdgeLabelledGraph(index.node_count, tuple(edges), index.alphabet)


def spell_paths(index: PathIndex) -> list[str]:
    """Labels of the paths from each source, in source-rank order."""
    out = []
    for src in index.sources.positions:
        node, chars = src, []
        while node not in index.sinks:
            p = index.bwt_pos(node)
            chars.append(index.bwt[p])
            node = index.lf(p)
        out.append("".join(chars))
    return out
