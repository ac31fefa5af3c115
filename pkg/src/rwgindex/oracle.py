"""Brute-force reference implementations.

Nothing here imports the rest of the package: these functions materialize
strings and sort them directly so they can check the real constructions.
Symbols are single characters; terminators are reported as "$1", "$2", ...
"""
from __future__ import annotations

from functools import cmp_to_key
from itertools import combinations
from typing import NamedTuple, Sequence

DNA = "ACGT"


class OracleMatch(NamedTuple):
    read_id: int
    start: int  # 1-based, inclusive
    end: int


def _order(reads: Sequence[str], extra: str = "") -> str:
    used = {c for s in reads for c in s} | set(extra)
    return DNA if used <= set(DNA) else "".join(sorted(used))


def naive_find_all(reads: Sequence[str], pattern: str) -> list[OracleMatch]:
    out = []
    m = len(pattern)
    if m == 0:
        return out
    for rid, s in enumerate(reads):
        for start in range(len(s) - m + 1):
            if s[start:start + m] == pattern:
                out.append(OracleMatch(rid, start + 1, start + m))
    return out


def naive_ebwt(reads: Sequence[str]) -> str:
    """Sort all rotations by comparing u^|v| with v^|u|; ties by (read, offset)."""
    order = _order(reads)
    rank = {c: i for i, c in enumerate(order)}
    rows = []
    for rid, s in enumerate(reads):
        for o in range(len(s)):
            rows.append((s[o:] + s[:o], rid, o))

    def cmp(x, y):
        u = [rank[c] for c in x[0] * len(y[0])]
        v = [rank[c] for c in y[0] * len(x[0])]
        if u != v:
            return -1 if u < v else 1
        return -1 if (x[1], x[2]) < (y[1], y[2]) else 1

    rows.sort(key=cmp_to_key(cmp))
    return "".join(rot[-1] for rot, _, _ in rows)


def naive_colex_order(reads: Sequence[str]) -> list[int]:
    order = _order(reads)
    return sorted(range(len(reads)), key=lambda i: ([order.index(c) for c in reads[i][::-1]], i))


def naive_bcr(reads: Sequence[str], terminator_order: Sequence[int] | None = None) -> list[str]:
    """Sort rotations of read + $_k with terminators below every symbol."""
    order = _order(reads)
    if terminator_order is None:
        terminator_order = naive_colex_order(reads)
    sub = {rid: k + 1 for k, rid in enumerate(terminator_order)}
    rows = []
    for rid, s in enumerate(reads):
        toks = [(1, order.index(c), c) for c in s] + [(0, sub[rid], f"${sub[rid]}")]
        for o in range(len(toks)):
            rows.append(toks[o:] + toks[:o])
    rows.sort(key=lambda row: [(a, b) for a, b, _ in row])
    return [row[-1][2] for row in rows]


def naive_lex_order(reads: Sequence[str]) -> list[int]:
    order = _order(reads)
    return sorted(range(len(reads)), key=lambda i: ([order.index(c) for c in reads[i]], i))


def naive_relaxed_bwt(reads: Sequence[str], contexts: Sequence[str]) -> tuple[str, list[int]]:
    """Edge labels of all context + prefix strings sorted colexicographically.

    Equal strings are ordered by the lexicographic rank of their reads.
    Returns the BWT and the ranks of the reads' start nodes.
    """
    order = _order(reads, "".join(contexts))
    tie = {rid: k for k, rid in enumerate(naive_lex_order(reads))}
    nodes = []
    for rid, s in enumerate(reads):
        for k in range(len(s) + 1):
            full = contexts[rid] + s[:k]
            nodes.append(([order.index(c) for c in reversed(full)], tie[rid], rid, k))
    nodes.sort()
    bwt = "".join(reads[rid][k] for _, _, rid, k in nodes if k < len(reads[rid]))
    sources = [rank for rank, (_, _, _, k) in enumerate(nodes, start=1) if k == 0]
    return bwt, sources


def naive_relaxed_nodes(reads: Sequence[str], contexts: Sequence[str]) -> list[tuple[int, int]]:
    """(read id, k) for every node, in the same order as :func:`naive_relaxed_bwt`."""
    order = _order(reads, "".join(contexts))
    tie = {rid: k for k, rid in enumerate(naive_lex_order(reads))}
    nodes = [
        ([order.index(c) for c in reversed(contexts[rid] + s[:k])], tie[rid], rid, k)
        for rid, s in enumerate(reads)
        for k in range(len(s) + 1)
    ]
    nodes.sort()
    return [(rid, k) for _, _, rid, k in nodes]


def naive_rle_runs(seq: Sequence) -> int:
    runs = 0
    for i, c in enumerate(seq):
        if i == 0 or seq[i - 1] != c:
            runs += 1
    return runs


def brute_force_wheeler(
    node_count: int,
    edges: Sequence[tuple[int, int, str]],
    ordering: Sequence[int],
    relaxed: bool,
    order: str = DNA,
) -> bool:
    """Check every pair of edges (and every pair of nodes) directly."""
    rank = {v: ordering[v - 1] for v in range(1, node_count + 1)}
    for (u, v, a), (u2, v2, a2) in combinations(edges, 2):
        for (x, y, p), (x2, y2, p2) in (((u, v, a), (u2, v2, a2)), ((u2, v2, a2), (u, v, a))):
            if order.index(p) < order.index(p2) and not rank[y] < rank[y2]:
                return False
            if p == p2 and rank[x] < rank[x2] and not rank[y] <= rank[y2]:
                return False
    if not relaxed:
        has_in = {v for _, v, _ in edges}
        for s in range(1, node_count + 1):
            for t in has_in:
                if s not in has_in and not rank[s] < rank[t]:
                    return False
    return True


def naive_reachable(
    edges: Sequence[tuple[int, int, str]], start: set[int], word: str
) -> set[int]:
    """Nodes reached from ``start`` by following edges spelling ``word``."""
    cur = set(start)
    for c in word:
        cur = {v for u, v, a in edges if a == c and u in cur}
    return cur


def naive_true_finals(reads: Sequence[str], pattern: str) -> set[tuple[int, int]]:
    """(read id, offset of final character) of every within-read match."""
    return {(m.read_id, m.end) for m in naive_find_all(reads, pattern)}


def naive_lcs_pointer(
    full: Sequence[str], true_len: Sequence[int], labels: Sequence[str | None], entry: int, side: int
) -> tuple[int, int] | None:
    """Best (rank, lcs) for one witness pointer by checking every candidate.

    ``full[x]`` is the full context of the node at rank x + 1, ``true_len`` its
    within-read context length and ``labels`` its outgoing label.
    """
    c = labels[entry]
    best = None
    ranks = range(entry - 1, -1, -1) if side < 0 else range(entry + 1, len(full))
    for y in ranks:
        if labels[y] != c:
            continue
        a, b = full[y][len(full[y]) - true_len[y]:], full[entry]
        k = 0
        while k < min(len(a), len(b)) and a[-1 - k] == b[-1 - k]:
            k += 1
        if best is None or k > best[1]:
            best = (y, k)
    return best


def naive_forward_search(
    reads: Sequence[str], contexts: Sequence[str], pattern: str
) -> list[tuple[int, int]]:
    """Nodes of the final search interval, simulated on the explicit node order.

    Each step follows every ``c``-edge out of the current interval and keeps
    all nodes ranked between the lowest and highest destination.
    """
    nodes = naive_relaxed_nodes(reads, contexts)
    rank = {node: i for i, node in enumerate(nodes)}
    lo, hi = 0, len(nodes) - 1
    for c in pattern:
        dest = [
            rank[(rid, k + 1)]
            for rid, k in nodes[lo:hi + 1]
            if k < len(reads[rid]) and reads[rid][k] == c
        ]
        if not dest:
            return []
        lo, hi = min(dest), max(dest)
    return nodes[lo:hi + 1]
