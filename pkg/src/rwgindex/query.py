"""Counting, locating and certifying pattern matches.

Path-graph indexes (plain Wheeler paths and relaxed ones) are searched
forward, one pattern symbol at a time. Each search state carries a toehold:
the text position of the node that starts its interval, which lets locating
enumerate the interval from left to right without a suffix array.

Text positions name nodes: ``(read, k)`` is the node reached after the first
``k`` characters of the read, so ``k`` is also the offset of the last
character matched there. Offset 0 names a read's start node.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .classic import BCRIndex, EBWTIndex, backward_search, classic_matches
from .core import TextPosition
from .wheeler import PathIndex


@dataclass(frozen=True)
class ToeholdSamples:
    """Text position of the first character of every BWT run."""

    positions: tuple[TextPosition, ...]

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, run: int) -> TextPosition:
        return self.positions[run]


@dataclass(frozen=True)
class LFBreakTable:
    """Nodes whose rank successor cannot be derived from their text predecessor's.

    For any other node v = (read, k), the node ranked right after v is the
    node ranked right after (read, k - 1), advanced by one. Every start node
    is stored, so a predecessor query always lands in the same read.
    """

    keys: tuple[TextPosition, ...]  # sorted
    successors: tuple[TextPosition | None, ...]

    def __len__(self) -> int:
        return len(self.keys)

    def next_position(self, pos: TextPosition) -> TextPosition | None:
        i = bisect_right(self.keys, pos) - 1
        key = self.keys[i]
        if key.read_id != pos.read_id:
            raise KeyError(f"no break stored for read {pos.read_id}")
        succ = self.successors[i]
        if succ is None:
            return None
        return succ.advance(pos.offset - key.offset)


class WitnessPointer(NamedTuple):
    bwt_pos: int
    position: TextPosition  # the pointed character
    lcs: int  # common suffix of its true context with the entry's full context


class WitnessEntry(NamedTuple):
    position: TextPosition  # the entry's own character
    pred: WitnessPointer | None
    succ: WitnessPointer | None


@dataclass(frozen=True)
class WitnessPointerTable:
    """Pointers kept at run heads, run tails and the BWT characters around sinks."""

    entries: dict[int, WitnessEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, bwt_pos: int) -> WitnessEntry:
        return self.entries[bwt_pos]

    def __contains__(self, bwt_pos: int) -> bool:
        return bwt_pos in self.entries


class Occurrence(NamedTuple):
    position: TextPosition  # final matched character (offset 0: a read's start node)
    is_true: bool


@dataclass(frozen=True)
class SearchState:
    i: int
    j: int
    t: int
    toehold: TextPosition | None
    candidate: TextPosition | None = None
    candidate_rank: int | None = None

    @property
    def live(self) -> bool:
        return self.i <= self.j

    @property
    def interval(self) -> tuple[int, int]:
        return self.i, self.j

    @property
    def width(self) -> int:
        return max(0, self.j - self.i + 1)


# -- construction ------------------------------------------------------------


def build_toehold_samples(index: PathIndex) -> ToeholdSamples:
    bwt = index.bwt
    out = []
    for run in range(bwt.rho):
        node = index.node_of(bwt.run_start(run))
        out.append(index.node_origin[node - 1].advance())
    return ToeholdSamples(tuple(out))


def build_sink_next(index: PathIndex) -> tuple[TextPosition | None, ...]:
    """Per sink (rank order): the first node after it that has an outgoing edge."""
    out = []
    for s in index.sinks.positions:
        p = index.sinks.rank0(s)
        out.append(index.node_origin[index.node_of(p + 1) - 1] if p < index.n else None)
    return tuple(out)


def build_break_table(index: PathIndex) -> LFBreakTable:
    origin = index.node_origin
    N = len(origin)
    rank_of = {pos: rank for rank, pos in enumerate(origin, start=1)}

    def succ(rank: int) -> TextPosition | None:
        return origin[rank] if rank < N else None

    rows = []
    for rank, pos in enumerate(origin, start=1):
        nxt = succ(rank)
        if pos.offset > 0 and nxt is not None:
            prev = succ(rank_of[TextPosition(pos.read_id, pos.offset - 1)])
            if prev is not None and nxt == prev.advance():
                continue
        rows.append((pos, nxt))
    rows.sort()
    return LFBreakTable(tuple(k for k, _ in rows), tuple(v for _, v in rows))


def _common_suffix(a: str, b: str) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[-1 - i] == b[-1 - i]:
        i += 1
    return i


def witness_entry_positions(index: PathIndex) -> list[int]:
    bwt = index.bwt
    keep = set()
    for run in range(bwt.rho):
        keep.add(bwt.run_start(run))
        keep.add(bwt.run_end(run))
    for s in index.sinks.positions:
        p = index.sinks.rank0(s)
        keep.update(x for x in (p, p + 1) if 1 <= x <= index.n)
    return sorted(keep)


def build_witness_table(index: PathIndex) -> WitnessPointerTable:
    """Nearest-in-context pointers for every entry position.

    For an entry character c, ``pred`` points to the copy of c before it in
    the BWT whose true (within-read) context shares the longest suffix with
    the entry's full context; ``succ`` likewise after it. Ties go to the
    copy nearest the entry. Node ranks are sorted by full context, so that
    suffix is bounded by the minimum adjacent common suffix over the ranks
    in between, which lets each scan stop early.
    """
    if index.reads is None:
        raise ValueError("witness table needs build-time read data")
    origin = index.node_origin
    N = len(origin)
    full = [index.full_context(pos) for pos in origin]
    adj = [_common_suffix(full[x], full[x + 1]) for x in range(N - 1)]  # ranks x+1, x+2
    label = [None] * (N + 1)
    for p in range(1, index.n + 1):
        label[index.node_of(p)] = index.bwt[p]

    def scan(start: int, c: str, ranks, step: int) -> WitnessPointer | None:
        best, best_rank, runmin = -1, None, float("inf")
        for y in ranks:
            runmin = min(runmin, adj[min(y, y - step) - 1])
            if runmin <= best:
                break
            if label[y] == c:
                val = min(origin[y - 1].offset, runmin)
                if val > best:
                    best, best_rank = val, y
        if best_rank is None:
            return None
        return WitnessPointer(index.bwt_pos(best_rank), origin[best_rank - 1].advance(), best)

    entries = {}
    for p in witness_entry_positions(index):
        node = index.node_of(p)
        c = label[node]
        entries[p] = WitnessEntry(
            origin[node - 1].advance(),
            scan(node, c, range(node - 1, 0, -1), -1),
            scan(node, c, range(node + 1, N + 1), 1),
        )
    return WitnessPointerTable(entries)


# -- searching ---------------------------------------------------------------


def initial_state(index: PathIndex) -> SearchState:
    if index.node_count == 0:
        return SearchState(1, 0, 0, None)
    return SearchState(1, index.node_count, 0, index.first_node, index.first_node, 1)


def _dead(t: int) -> SearchState:
    return SearchState(1, 0, t, None)


def step(index: PathIndex, state: SearchState, c: str) -> SearchState:
    """Extend the match by ``c``, following edges forward.

    The new interval runs from the node entered by the first ``c`` in the
    current BWT slice to the node entered by the last one. If the slice
    starts with ``c`` the toehold just moves one position along its read;
    otherwise the first ``c`` heads a run and its position is sampled.
    Candidates are not maintained here; see :func:`certify`.
    """
    if not state.live or c not in index.smaller:
        return _dead(state.t + 1)
    bwt = index.bwt
    p, q = index.slice_of(state.i, state.j)
    if p > q:
        return _dead(state.t + 1)
    a, b = bwt.rank(c, p - 1), bwt.rank(c, q)
    if a == b:
        return _dead(state.t + 1)
    if bwt[p] == c:
        if state.i in index.sinks:
            head = index.sink_next[index.sinks.rank1(state.i) - 1]
        else:
            head = state.toehold
        toehold = head.advance()
    else:
        first = bwt.select(c, a + 1)
        assert bwt.is_run_head(first), "first symbol of a slice must head a run"
        toehold = index.samples[bwt.run_index(first)]
    return SearchState(index.destination(c, a + 1), index.destination(c, b), state.t + 1, toehold)


def search(index: PathIndex, pattern: str) -> SearchState:
    state = initial_state(index)
    for c in pattern:
        state = step(index, state, c)
        if not state.live:
            break
    return state


def search_trace(index: PathIndex, pattern: str) -> list[tuple[int, int]]:
    """Intervals visited by the search, starting with the full range."""
    state = initial_state(index)
    trace = [state.interval]
    for c in pattern:
        state = step(index, state, c)
        trace.append(state.interval if state.live else (1, 0))
        if not state.live:
            break
    return trace


def next_position(index: PathIndex, pos: TextPosition) -> TextPosition | None:
    """Text position of the node ranked right after the node at ``pos``."""
    return index.breaks.next_position(pos)


def count(index, pattern: str) -> int:
    """Total matches, true and false."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if isinstance(index, (EBWTIndex, BCRIndex)):
        i, j = backward_search(index, pattern)
        return max(0, j - i + 1)
    return search(index, pattern).width


def classify_match(index, occ: TextPosition, m: int) -> bool:
    """True when the match ending at ``occ`` lies entirely inside its read."""
    return occ.offset >= m


def locate_all(index, pattern: str) -> list[Occurrence]:
    """Every match in the final interval, left to right, with its classification."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if isinstance(index, (EBWTIndex, BCRIndex)):
        return [Occurrence(pos, ok) for pos, ok in classic_matches(index, pattern)]
    state = search(index, pattern)
    if not state.live:
        return []
    m = len(pattern)
    out, pos = [], state.toehold
    for _ in range(state.width):
        out.append(Occurrence(pos, classify_match(index, pos, m)))
        pos = next_position(index, pos)
    return out


def true_matches(index, pattern: str) -> list[TextPosition]:
    return [occ.position for occ in locate_all(index, pattern) if occ.is_true]


def _endpoint(index: PathIndex, cand_rank: int, c: str, b: int) -> int:
    """A ``c`` in the slice next to the candidate; it carries a witness entry."""
    bwt = index.bwt
    x = index.sinks.rank0(cand_rank)  # BWT characters ranked at or before the candidate
    rx = bwt.rank(c, x)
    return bwt.select(c, rx + 1) if rx < b else bwt.select(c, rx)


def certify(
    index: PathIndex, witness_table: WitnessPointerTable | None, pattern: str
) -> tuple[int, TextPosition | None]:
    """Count all matches and return one true match's final character, if any.

    A candidate true match of the prefix read so far is carried along. When
    its next character is not the next pattern symbol, the witness pointers
    at a nearby run endpoint either supply a new candidate or prove that no
    true match remains.
    """
    if not isinstance(index, PathIndex):
        raise TypeError("certify works on path-graph indexes only")
    if not pattern:
        raise ValueError("pattern must be non-empty")
    table = witness_table if witness_table is not None else index.witness
    bwt = index.bwt
    state = initial_state(index)
    cand, cand_rank = state.candidate, state.candidate_rank
    for c in pattern:
        if not state.live or c not in index.smaller:
            return 0, None
        t = state.t
        p, q = index.slice_of(state.i, state.j)
        if p > q:
            return 0, None
        a, b = bwt.rank(c, p - 1), bwt.rank(c, q)
        if a == b:
            return 0, None
        new = None
        if cand is not None:
            x = index.bwt_pos(cand_rank)
            if x is not None and bwt[x] == c:
                new = (index.lf(x), cand.advance())
            else:
                jpos = _endpoint(index, cand_rank, c, b)
                if jpos not in table:
                    raise AssertionError(f"no witness entry at BWT position {jpos}")
                entry = table[jpos]
                for ptr in (entry.succ, entry.pred):
                    if ptr is not None and p <= ptr.bwt_pos <= q and ptr.lcs >= t:
                        new = (index.lf(ptr.bwt_pos), ptr.position)
                        break
                else:
                    if entry.position.offset - 1 >= t:
                        new = (index.lf(jpos), entry.position)
        cand_rank, cand = new if new is not None else (None, None)
        state = step(index, state, c)
    return state.width, cand


def run_search_states(index: PathIndex, pattern: Sequence[str]) -> list[SearchState]:
    """All states of a search, for inspection and tests."""
    states = [initial_state(index)]
    for c in pattern:
        states.append(step(index, states[-1], c))
        if not states[-1].live:
            break
    return states
