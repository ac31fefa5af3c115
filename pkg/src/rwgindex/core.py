"""Alphabets, read collections, text positions and the run-length BWT."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from itertools import groupby
from typing import Hashable, Iterable, NamedTuple, Sequence

DNA = "ACGT"
TERMINATOR_PREFIX = "$"


def terminator(i: int) -> str:
    """Token for the ``i``-th end-of-string symbol (1-based)."""
    if i < 1:
        raise ValueError("terminator subscripts start at 1")
    return f"{TERMINATOR_PREFIX}{i}"


def is_terminator(token: Hashable) -> bool:
    return isinstance(token, str) and len(token) > 1 and token[0] == TERMINATOR_PREFIX


def terminator_index(token: str) -> int:
    return int(token[1:])


@dataclass(frozen=True)
class Alphabet:
    """Totally ordered symbol set. Terminators sort below every regular symbol."""

    symbols: tuple[str, ...] = tuple(DNA)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if len(s) != 1 or s == TERMINATOR_PREFIX:
                raise ValueError(f"invalid alphabet symbol {s!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @classmethod
    def from_symbols(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(sorted(set(symbols))))

    def __contains__(self, token) -> bool:
        return token in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def key(self, token: str) -> tuple[int, int]:
        if is_terminator(token):
            return (0, terminator_index(token))
        try:
            return (1, self._index[token])
        except KeyError:
            raise ValueError(f"symbol {token!r} not in alphabet {''.join(self.symbols)}") from None

    def check(self, seq: str) -> None:
        for ch in seq:
            if ch not in self._index:
                raise ValueError(f"symbol {ch!r} not in alphabet {''.join(self.symbols)}")


DNA_ALPHABET = Alphabet()


class TextPosition(NamedTuple):
    """A place in the readset: ``offset`` characters into read ``read_id``.

    Offsets are 1-based when they name a character. Offset 0 names the start
    node of a read (before its first character); only path-graph indexes use it.
    """

    read_id: int
    offset: int

    def advance(self, d: int = 1) -> "TextPosition":
        return TextPosition(self.read_id, self.offset + d)


class ReadCollection:
    """An ordered set of non-empty reads over one alphabet."""

    def __init__(self, reads: Iterable[str], alphabet: Alphabet | None = None):
        self.reads: tuple[str, ...] = tuple(reads)
        for i, s in enumerate(self.reads):
            if not s:
                raise ValueError(f"read {i} is empty")
        if alphabet is None:
            used = {ch for s in self.reads for ch in s}
            alphabet = DNA_ALPHABET if used <= set(DNA) else Alphabet.from_symbols(used)
        for s in self.reads:
            alphabet.check(s)
        self.alphabet = alphabet
        self.lengths: tuple[int, ...] = tuple(len(s) for s in self.reads)
        self.n = sum(self.lengths)

    @property
    def r(self) -> int:
        return len(self.reads)

    @property
    def ids(self) -> range:
        return range(len(self.reads))

    def __len__(self) -> int:
        return len(self.reads)

    def __getitem__(self, i: int) -> str:
        return self.reads[i]

    def __iter__(self):
        return iter(self.reads)

    def char_at(self, pos: TextPosition) -> str:
        if not 1 <= pos.offset <= self.lengths[pos.read_id]:
            raise IndexError(f"{pos} is outside read {pos.read_id}")
        return self.reads[pos.read_id][pos.offset - 1]

    def __repr__(self) -> str:
        return f"ReadCollection(r={self.r}, n={self.n})"


@dataclass(frozen=True)
class RunLengthBWT:
    """A symbol sequence stored as maximal runs, with rank/select.

    Positions are 1-based. Queries bisect per-symbol run tables, so each one
    costs O(log rho).
    """

    runs: tuple[tuple[str, int], ...]
    length: int = field(init=False)
    _starts: list[int] = field(init=False, repr=False, compare=False)
    _by_symbol: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        starts, total = [], 0
        by_symbol: dict[str, tuple[list[int], list[int], list[int]]] = {}
        for idx, (sym, ln) in enumerate(self.runs):
            if ln < 1:
                raise ValueError("run lengths must be positive")
            if idx and self.runs[idx - 1][0] == sym:
                raise ValueError("adjacent runs must carry different symbols")
            starts.append(total + 1)
            # per symbol: run start positions, occurrences before each run, run lengths
            s_starts, s_before, s_lens = by_symbol.setdefault(sym, ([], [], []))
            s_before.append(s_before[-1] + s_lens[-1] if s_lens else 0)
            s_starts.append(total + 1)
            s_lens.append(ln)
            total += ln
        object.__setattr__(self, "length", total)
        object.__setattr__(self, "_starts", starts)
        object.__setattr__(self, "_by_symbol", by_symbol)

    @property
    def rho(self) -> int:
        return len(self.runs)

    def __len__(self) -> int:
        return self.length

    def symbols(self) -> list[str]:
        return list(self._by_symbol)

    def decode(self) -> list[str]:
        out: list[str] = []
        for sym, ln in self.runs:
            out.extend([sym] * ln)
        return out

    def __str__(self) -> str:
        return "".join(self.decode())

    def run_index(self, pos: int) -> int:
        """0-based index of the run containing position ``pos``."""
        if not 1 <= pos <= self.length:
            raise IndexError(f"position {pos} outside 1..{self.length}")
        return bisect_right(self._starts, pos) - 1

    def run_start(self, idx: int) -> int:
        return self._starts[idx]

    def run_end(self, idx: int) -> int:
        return self._starts[idx] + self.runs[idx][1] - 1

    def __getitem__(self, pos: int) -> str:
        return self.runs[self.run_index(pos)][0]

    def is_run_head(self, pos: int) -> bool:
        return self._starts[self.run_index(pos)] == pos

    def is_run_tail(self, pos: int) -> bool:
        return self.run_end(self.run_index(pos)) == pos

    def count(self, symbol) -> int:
        entry = self._by_symbol.get(symbol)
        if entry is None:
            return 0
        return entry[1][-1] + entry[2][-1]

    def rank(self, symbol, pos: int) -> int:
        """Occurrences of ``symbol`` in positions 1..pos."""
        if not 0 <= pos <= self.length:
            raise IndexError(f"rank position {pos} outside 0..{self.length}")
        entry = self._by_symbol.get(symbol)
        if entry is None or pos == 0:
            return 0
        s_starts, s_before, s_lens = entry
        k = bisect_right(s_starts, pos) - 1
        if k < 0:
            return 0
        return s_before[k] + min(s_lens[k], pos - s_starts[k] + 1)

    def select(self, symbol, k: int) -> int:
        """Position of the ``k``-th occurrence of ``symbol`` (k >= 1)."""
        total = self.count(symbol)
        if not 1 <= k <= total:
            raise IndexError(f"select({symbol!r}, {k}) outside 1..{total}")
        s_starts, s_before, _ = self._by_symbol[symbol]
        run = bisect_left(s_before, k) - 1
        return s_starts[run] + (k - s_before[run]) - 1


def rle_encode(seq: Sequence[Hashable]) -> RunLengthBWT:
    return RunLengthBWT(tuple((sym, sum(1 for _ in grp)) for sym, grp in groupby(seq)))


def count_runs(seq: Sequence[Hashable]) -> int:
    return sum(1 for _ in groupby(seq))


class SparseMarks:
    """A bitvector over 1..size stored as the sorted list of its set positions.

    Space is O(number of marks) words, which keeps source/sink marks at O(r).
    """

    def __init__(self, marked: Iterable[int], size: int):
        self.positions: list[int] = sorted(marked)
        self.size = size
        if self.positions and not (1 <= self.positions[0] and self.positions[-1] <= size):
            raise ValueError("marked positions must lie in 1..size")
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("duplicate marked position")
        self._set = frozenset(self.positions)
        # zeros preceding the j-th mark; non-decreasing, drives select0
        self._zeros_before = [p - j - 1 for j, p in enumerate(self.positions)]

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, pos: int) -> bool:
        return pos in self._set

    def rank1(self, pos: int) -> int:
        return bisect_right(self.positions, pos)

    def rank0(self, pos: int) -> int:
        return pos - self.rank1(pos)

    def select1(self, k: int) -> int:
        return self.positions[k - 1]

    def select0(self, k: int) -> int:
        if not 1 <= k <= self.size - len(self.positions):
            raise IndexError(f"select0({k}) out of range")
        return k + bisect_left(self._zeros_before, k)

    def bits(self) -> list[int]:
        return [1 if i in self._set else 0 for i in range(1, self.size + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMarks) and self.size == other.size and self.positions == other.positions

    def __repr__(self) -> str:
        return f"SparseMarks({self.positions}, size={self.size})"
