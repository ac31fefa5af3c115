"""Relaxed Wheeler graphs: paths ordered as if each read had a preceding context."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classic import BCRIndex, EBWTIndex
from .core import ReadCollection
from .wheeler import PathIndex, build_path_index

PROVENANCES = ("explicit", "genome", "overlap", "empty")


@dataclass(frozen=True)
class ContextAssignment:
    contexts: tuple[str, ...]
    provenance: tuple[str, ...]
    flagged: tuple[int, ...] = ()  # reads whose requested context could not be found

    def __post_init__(self):
        if len(self.contexts) != len(self.provenance):
            raise ValueError("one provenance tag per context")
        for tag in self.provenance:
            if tag not in PROVENANCES:
                raise ValueError(f"unknown provenance {tag!r}")

    def __len__(self) -> int:
        return len(self.contexts)


def empty_contexts(reads: ReadCollection) -> ContextAssignment:
    return ContextAssignment(("",) * reads.r, ("empty",) * reads.r)


def explicit_contexts(reads: ReadCollection, contexts: Sequence[str]) -> ContextAssignment:
    contexts = tuple(contexts)
    if len(contexts) != reads.r:
        raise ValueError(f"expected {reads.r} contexts, got {len(contexts)}")
    for ctx in contexts:
        reads.alphabet.check(ctx)
    return ContextAssignment(contexts, tuple("explicit" if c else "empty" for c in contexts))


def _cap(reads: ReadCollection, cap: int | None) -> int:
    return max(reads.lengths, default=0) if cap is None else cap


def contexts_from_genome(
    reads: ReadCollection, genome: str, cap: int | None = None
) -> ContextAssignment:
    """Context = up to ``cap`` genome symbols before the read's leftmost occurrence.

    Reads that do not occur get an empty context and are flagged.
    """
    cap = _cap(reads, cap)
    contexts, prov, flagged = [], [], []
    for rid, s in enumerate(reads):
        at = genome.find(s)
        if at < 0:
            contexts.append("")
            prov.append("empty")
            flagged.append(rid)
            continue
        ctx = genome[max(0, at - cap):at] if cap > 0 else ""
        reads.alphabet.check(ctx)
        contexts.append(ctx)
        prov.append("genome" if ctx else "empty")
    return ContextAssignment(tuple(contexts), tuple(prov), tuple(flagged))


def longest_overlap(q: str, s: str) -> int:
    """Longest proper suffix of ``q`` that is a prefix of ``s``."""
    for k in range(min(len(q) - 1, len(s)), 0, -1):
        if q.endswith(s[:k]):
            return k
    return 0


def contexts_from_overlaps(
    reads: ReadCollection, min_overlap: int = 1, cap: int | None = None
) -> ContextAssignment:
    """Context of R = the part of the read Q != R with the longest suffix-prefix
    overlap onto R that precedes the overlap. Ties go to the smaller read id.
    """
    if min_overlap < 1:
        raise ValueError("min_overlap must be at least 1")
    cap = _cap(reads, cap)
    contexts, prov = [], []
    for rid, s in enumerate(reads):
        best, best_q = 0, None
        for qid, q in enumerate(reads):
            if qid == rid:
                continue
            k = longest_overlap(q, s)
            if k >= min_overlap and k > best:
                best, best_q = k, qid
        if best_q is None:
            contexts.append("")
            prov.append("empty")
            continue
        ctx = reads[best_q][: len(reads[best_q]) - best]
        ctx = ctx[len(ctx) - cap:] if cap > 0 else ""
        contexts.append(ctx)
        prov.append("overlap" if ctx else "empty")
    return ContextAssignment(tuple(contexts), tuple(prov))


class RelaxedIndex(PathIndex):
    kind = "relaxed"


def build_relaxed(reads: ReadCollection, contexts: ContextAssignment) -> RelaxedIndex:
    """Rank node v_k of read R by the colex order of context(R) + R[:k].

    Equal strings are ordered like the reads' start nodes in the plain
    path index, so empty contexts reproduce that index exactly.
    """
    if len(contexts) != reads.r:
        raise ValueError("one context per read")
    for ctx in contexts.contexts:
        reads.alphabet.check(ctx)
    return build_path_index(reads, contexts.contexts, RelaxedIndex, contexts)


def run_count_report(index) -> tuple[int, int, int, int]:
    """(rho, n, r, N) for any index kind."""
    if isinstance(index, PathIndex):
        return index.rho, index.n, index.r, index.node_count
    if isinstance(index, EBWTIndex):
        return index.bwt.rho, index.reads.n, index.reads.r, len(index.bwt)
    if isinstance(index, BCRIndex):
        return index.bwt.rho, index.reads.n, index.reads.r, len(index.bwt)
    raise TypeError(f"unsupported index {type(index).__name__}")
