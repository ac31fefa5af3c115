"""Baseline readset transforms: the eBWT and the BCR representation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Sequence

from .core import ReadCollection, RunLengthBWT, TextPosition, is_terminator, rle_encode, terminator


class NonPrimitiveReadError(ValueError):
    def __init__(self, read_id: int, read: str):
        super().__init__(f"read {read_id} ({read}) is a power of a shorter string")
        self.read_id = read_id


def omega_compare_counted(u: Sequence, v: Sequence, key=None) -> tuple[int, int]:
    """Compare u^w and v^w; return (ordering, symbol comparisons used).

    By Fine and Wilf, agreement on the first |u| + |v| - gcd(|u|, |v|)
    symbols means the infinite repetitions are equal.
    """
    if not u or not v:
        raise ValueError("omega comparison needs non-empty strings")
    lu, lv = len(u), len(v)
    done = 0
    for i in range(lu + lv - gcd(lu, lv)):
        a, b = u[i % lu], v[i % lv]
        done += 1
        if a != b:
            if key is not None:
                a, b = key(a), key(b)
            return (-1 if a < b else 1), done
    return 0, done


def omega_compare(u: Sequence, v: Sequence) -> int:
    """-1, 0 or 1 as u^w is less than, equal to or greater than v^w."""
    return omega_compare_counted(u, v)[0]


def is_primitive(s: str) -> bool:
    return (s + s).find(s, 1) == len(s)


@dataclass(frozen=True)
class LFPermutation:
    mapping: tuple[int, ...]  # mapping[i - 1] = LF(i), 1-based

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError("LF mapping is not a permutation")

    @property
    def domain_size(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    @property
    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)


def cycle_decomposition(lf: LFPermutation | Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest element, sorted by it."""
    mapping = lf.mapping if isinstance(lf, LFPermutation) else tuple(lf)
    seen = [False] * (len(mapping) + 1)
    cycles = []
    for start in range(1, len(mapping) + 1):
        if seen[start]:
            continue
        cyc, i = [], start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = mapping[i - 1]
        cycles.append(tuple(cyc))
    return cycles


def lf_from_bwt(bwt: Sequence[str], key) -> LFPermutation:
    """LF(i) = C[c] + rank_c(i) for c = bwt[i]."""
    counts: dict[str, int] = {}
    for c in bwt:
        counts[c] = counts.get(c, 0) + 1
    before, total = {}, 0
    for c in sorted(counts, key=key):
        before[c] = total
        total += counts[c]
    seen: dict[str, int] = {}
    out = []
    for c in bwt:
        seen[c] = seen.get(c, 0) + 1
        out.append(before[c] + seen[c])
    return LFPermutation(tuple(out))


@dataclass(frozen=True)
class EBWTIndex:
    bwt: RunLengthBWT
    lf: LFPermutation
    reads: ReadCollection
    rows: tuple[tuple[int, int], ...]  # (read id, 0-based rotation start) per row

    kind = "ebwt"


@dataclass(frozen=True)
class BCRIndex:
    bwt: RunLengthBWT
    lf: LFPermutation
    reads: ReadCollection
    terminator_order: tuple[int, ...]  # terminator_order[k] = read id carrying $_{k+1}
    rows: tuple[tuple[int, int], ...]  # (read id, 0-based start in read+$) per row

    kind = "bcr"


def build_ebwt(reads: ReadCollection) -> EBWTIndex:
    for rid, s in enumerate(reads):
        if not is_primitive(s):
            raise NonPrimitiveReadError(rid, s)
    key = reads.alphabet.key
    rots = [(rid, o) for rid, s in enumerate(reads) for o in range(len(s))]

    def rot(item):
        rid, o = item
        s = reads[rid]
        return s[o:] + s[:o]

    def cmp(a, b):
        res = omega_compare_counted(rot(a), rot(b), key)[0]
        return res if res else (a > b) - (a < b)

    rots.sort(key=cmp_to_key(cmp))
    bwt = [reads[rid][o - 1] for rid, o in rots]
    return EBWTIndex(rle_encode(bwt), lf_from_bwt(bwt, key), reads, tuple(rots))


def colex_terminator_order(reads: ReadCollection) -> tuple[int, ...]:
    key = reads.alphabet.key
    return tuple(sorted(reads.ids, key=lambda i: ([key(c) for c in reversed(reads[i])], i)))


def build_bcr(reads: ReadCollection, terminator_order: Sequence[int] | None = None) -> BCRIndex:
    """BWT of the cyclic rotations of read + $_i, built column by column.

    Suffixes are inserted right to left: at step j every read still active
    gets its suffix of length j + 1 placed by rank over the partial BWT.
    """
    if terminator_order is None:
        terminator_order = colex_terminator_order(reads)
    terminator_order = tuple(terminator_order)
    if sorted(terminator_order) != list(reads.ids):
        raise ValueError("terminator order must be a permutation of read ids")
    key = reads.alphabet.key
    r = reads.r
    # suffix "$_k" sorts k-th; the symbol preceding it is the read's last character
    bwt: list[str] = [reads[rid][-1] for rid in terminator_order]
    origin: list[tuple[int, int]] = [(rid, len(reads[rid])) for rid in terminator_order]
    pos = {rid: k for k, rid in enumerate(terminator_order)}
    active = list(terminator_order)
    step = 0
    while active:
        step += 1
        # terminators in the partial BWT stand for the r "$" rows, already counted
        symbols = sorted({c for c in bwt if not is_terminator(c)}, key=key)
        prefix = {c: [0] * (len(bwt) + 1) for c in symbols}
        for i, c in enumerate(bwt):
            for d in symbols:
                prefix[d][i + 1] = prefix[d][i] + (d == c)
        smaller, total = {}, r
        for c in symbols:
            smaller[c] = total
            total += prefix[c][-1]
        inserts = []
        for rid in active:
            c = bwt[pos[rid]]
            new_pos = smaller[c] + prefix[c][pos[rid]]
            start = len(reads[rid]) - step
            prev = reads[rid][start - 1] if start > 0 else terminator(terminator_order.index(rid) + 1)
            inserts.append((new_pos, rid, prev, start))
        inserts.sort()
        for new_pos, rid, prev, start in inserts:
            bwt.insert(new_pos, prev)
            origin.insert(new_pos, (rid, start))
            pos[rid] = new_pos
        active = [rid for _, rid, _, start in inserts if start > 0]
    return BCRIndex(rle_encode(bwt), lf_from_bwt(bwt, key), reads, terminator_order, tuple(origin))


def bcr_terminator_of(index: BCRIndex, read_id: int) -> str:
    return terminator(index.terminator_order.index(read_id) + 1)


def strip_terminators(seq: Sequence[str]) -> list[str]:
    return [c for c in seq if not is_terminator(c)]


def backward_search(index: EBWTIndex | BCRIndex, pattern: str) -> tuple[int, int]:
    """Row interval [i, j] of rotations prefixed by ``pattern``; i > j when empty."""
    bwt = index.bwt
    key = index.reads.alphabet.key
    smaller, total = {}, 0
    for c in sorted(bwt.symbols(), key=key):
        smaller[c] = total
        total += bwt.count(c)
    i, j = 1, len(bwt)
    for c in reversed(pattern):
        if c not in smaller:
            return 1, 0
        i = smaller[c] + bwt.rank(c, i - 1) + 1
        j = smaller[c] + bwt.rank(c, j)
        if i > j:
            return i, j
    return i, j


def classic_matches(index: EBWTIndex | BCRIndex, pattern: str) -> list[tuple[TextPosition, bool]]:
    """Every row match of ``pattern`` as (final character position, lies within the read).

    Wrapping matches (only possible in the eBWT) report their final character
    modulo the read length.
    """
    i, j = backward_search(index, pattern)
    m = len(pattern)
    out = []
    for row in range(i, j + 1):
        rid, start = index.rows[row - 1]
        length = index.reads.lengths[rid]
        end = start + m  # 1-based offset of the final character, if unwrapped
        within = end <= length
        out.append((TextPosition(rid, (end - 1) % length + 1), within))
    return out
