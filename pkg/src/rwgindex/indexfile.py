"""Versioned binary index files.

Layout: magic, u16 version, u8 kind, then sections of (4-byte tag, u32
payload length, payload), then a CRC32 of everything before it. All
integers are little-endian and fixed width, so identical indexes give
byte-identical files.
"""
from __future__ import annotations

import struct
import zlib
from pathlib import Path

from .classic import BCRIndex, EBWTIndex, lf_from_bwt
from .core import Alphabet, ReadCollection, RunLengthBWT, SparseMarks, TextPosition
from .query import (
    LFBreakTable,
    ToeholdSamples,
    WitnessEntry,
    WitnessPointer,
    WitnessPointerTable,
)
from .relaxed import PROVENANCES, ContextAssignment, RelaxedIndex
from .wheeler import PathIndex, WheelerPathIndex

MAGIC = b"RWGI"
VERSION = 1
KINDS = ("ebwt", "bcr", "paths", "relaxed")
NONE = 0xFFFFFFFF


class IndexFormatError(ValueError):
    pass


class _Writer:
    def __init__(self):
        self.buf = bytearray()

    def u8(self, x: int):
        self.buf += struct.pack("<B", x)

    def u32(self, x: int):
        self.buf += struct.pack("<I", x)

    def text(self, s: str):
        raw = s.encode("utf-8")
        self.u32(len(raw))
        self.buf += raw

    def pos(self, p: TextPosition | None):
        if p is None:
            self.u32(NONE)
            self.u32(NONE)
        else:
            self.u32(p.read_id)
            self.u32(p.offset)

    def ints(self, xs):
        xs = list(xs)
        self.u32(len(xs))
        for x in xs:
            self.u32(x)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.at = 0

    def _take(self, n: int) -> bytes:
        if self.at + n > len(self.data):
            raise IndexFormatError("truncated section")
        out = self.data[self.at:self.at + n]
        self.at += n
        return out

    def u8(self) -> int:
        return self._take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self._take(4))[0]

    def text(self) -> str:
        return self._take(self.u32()).decode("utf-8")

    def pos(self) -> TextPosition | None:
        a, b = self.u32(), self.u32()
        return None if a == NONE else TextPosition(a, b)

    def ints(self) -> list[int]:
        return [self.u32() for _ in range(self.u32())]

    def done(self) -> bool:
        return self.at == len(self.data)


def _pointer(w: _Writer, ptr: WitnessPointer | None):
    if ptr is None:
        w.u32(NONE)
        return
    w.u32(ptr.bwt_pos)
    w.pos(ptr.position)
    w.u32(ptr.lcs)


def _read_pointer(rd: _Reader) -> WitnessPointer | None:
    at = rd.u32()
    if at == NONE:
        return None
    return WitnessPointer(at, rd.pos(), rd.u32())


def _runs(w: _Writer, bwt: RunLengthBWT):
    tokens = sorted({sym for sym, _ in bwt.runs})
    w.u32(len(tokens))
    for tok in tokens:
        w.text(tok)
    idx = {tok: i for i, tok in enumerate(tokens)}
    w.u32(bwt.rho)
    for sym, ln in bwt.runs:
        w.u32(idx[sym])
        w.u32(ln)


def _read_runs(rd: _Reader) -> RunLengthBWT:
    tokens = [rd.text() for _ in range(rd.u32())]
    runs = []
    for _ in range(rd.u32()):
        t, ln = rd.u32(), rd.u32()
        if t >= len(tokens):
            raise IndexFormatError("run symbol out of range")
        runs.append((tokens[t], ln))
    return RunLengthBWT(tuple(runs))


def dumps(index) -> bytes:
    sections: list[tuple[bytes, _Writer]] = []

    def section(tag: bytes) -> _Writer:
        w = _Writer()
        sections.append((tag, w))
        return w

    kind = index.kind
    if isinstance(index, PathIndex):
        alphabet, lengths = index.alphabet, index.read_lengths
    else:
        alphabet, lengths = index.reads.alphabet, index.reads.lengths
    section(b"ALPH").text("".join(alphabet.symbols))
    section(b"LENS").ints(lengths)
    _runs(section(b"RUNS"), index.bwt)

    if isinstance(index, PathIndex):
        w = section(b"NODE")
        w.u32(index.node_count)
        w.pos(index.first_node)
        section(b"SRCM").ints(index.sources.positions)
        section(b"SNKM").ints(index.sinks.positions)
        w = section(b"SAMP")
        w.u32(len(index.samples))
        for p in index.samples.positions:
            w.pos(p)
        w = section(b"SNXT")
        w.u32(len(index.sink_next))
        for p in index.sink_next:
            w.pos(p)
        w = section(b"BRKS")
        w.u32(len(index.breaks))
        for k, v in zip(index.breaks.keys, index.breaks.successors):
            w.pos(k)
            w.pos(v)
        w = section(b"WITN")
        w.u32(len(index.witness))
        for at in sorted(index.witness.entries):
            e = index.witness.entries[at]
            w.u32(at)
            w.pos(e.position)
            _pointer(w, e.pred)
            _pointer(w, e.succ)
        ctx = index.contexts
        if ctx is not None:
            w = section(b"CTXT")
            w.u32(len(ctx))
            for c, tag in zip(ctx.contexts, ctx.provenance):
                w.u8(PROVENANCES.index(tag))
                w.text(c)
            w.ints(ctx.flagged)
    else:
        w = section(b"ROWS")
        w.u32(len(index.rows))
        for rid, start in index.rows:
            w.u32(rid)
            w.u32(start)
        if isinstance(index, BCRIndex):
            section(b"TORD").ints(index.terminator_order)

    out = bytearray(MAGIC + struct.pack("<HB", VERSION, KINDS.index(kind)))
    for tag, w in sections:
        out += tag + struct.pack("<I", len(w.buf)) + w.buf
    out += b"CRC " + struct.pack("<I", zlib.crc32(bytes(out)))
    return bytes(out)


def loads(data: bytes):
    if len(data) < 7 or data[:4] != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    version, kind_code = struct.unpack("<HB", data[4:7])
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version} (expected {VERSION})")
    if kind_code >= len(KINDS):
        raise IndexFormatError(f"unknown index kind {kind_code}")
    if len(data) < 15 or data[-8:-4] != b"CRC ":
        raise IndexFormatError("missing checksum")
    if zlib.crc32(data[:-8]) != struct.unpack("<I", data[-4:])[0]:
        raise IndexFormatError("checksum mismatch: file is corrupted")
    kind = KINDS[kind_code]
    sections: dict[bytes, _Reader] = {}
    at = 7
    while at < len(data) - 8:
        tag = data[at:at + 4]
        (ln,) = struct.unpack("<I", data[at + 4:at + 8])
        sections[tag] = _Reader(data[at + 8:at + 8 + ln])
        at += 8 + ln
    if at != len(data) - 8:
        raise IndexFormatError("section lengths do not add up")

    def need(tag: bytes) -> _Reader:
        if tag not in sections:
            raise IndexFormatError(f"missing section {tag.decode()}")
        return sections[tag]

    try:
        alphabet = Alphabet(tuple(need(b"ALPH").text()))
        lengths = tuple(need(b"LENS").ints())
        bwt = _read_runs(need(b"RUNS"))
        if kind in ("paths", "relaxed"):
            return _load_path_index(kind, alphabet, lengths, bwt, need, sections)
        return _load_classic(kind, alphabet, lengths, bwt, need)
    except (struct.error, UnicodeDecodeError, ValueError, IndexError) as exc:
        if isinstance(exc, IndexFormatError):
            raise
        raise IndexFormatError(f"malformed index: {exc}") from exc


def _load_path_index(kind, alphabet, lengths, bwt, need, sections) -> PathIndex:
    rd = need(b"NODE")
    N, first = rd.u32(), rd.pos()
    sources = SparseMarks(need(b"SRCM").ints(), N)
    sinks = SparseMarks(need(b"SNKM").ints(), N)
    rd = need(b"SAMP")
    samples = ToeholdSamples(tuple(rd.pos() for _ in range(rd.u32())))
    rd = need(b"SNXT")
    sink_next = tuple(rd.pos() for _ in range(rd.u32()))
    rd = need(b"BRKS")
    keys, succs = [], []
    for _ in range(rd.u32()):
        keys.append(rd.pos())
        succs.append(rd.pos())
    rd = need(b"WITN")
    entries = {}
    for _ in range(rd.u32()):
        at = rd.u32()
        entries[at] = WitnessEntry(rd.pos(), _read_pointer(rd), _read_pointer(rd))
    contexts = None
    if b"CTXT" in sections:
        rd = sections[b"CTXT"]
        ctxs, tags = [], []
        for _ in range(rd.u32()):
            code = rd.u8()
            if code >= len(PROVENANCES):
                raise IndexFormatError("bad provenance code")
            tags.append(PROVENANCES[code])
            ctxs.append(rd.text())
        contexts = ContextAssignment(tuple(ctxs), tuple(tags), tuple(rd.ints()))
    if len(samples) != bwt.rho or len(sources) != len(lengths) or len(sinks) != len(lengths):
        raise IndexFormatError("section sizes disagree with the BWT")
    cls = RelaxedIndex if kind == "relaxed" else WheelerPathIndex
    return cls(
        bwt=bwt,
        node_count=N,
        sources=sources,
        sinks=sinks,
        read_lengths=lengths,
        alphabet=alphabet,
        first_node=first,
        contexts=contexts,
        samples=samples,
        sink_next=sink_next,
        breaks=LFBreakTable(tuple(keys), tuple(succs)),
        witness=WitnessPointerTable(entries),
    )


def _load_classic(kind, alphabet, lengths, bwt, need):
    rd = need(b"ROWS")
    rows = [(rd.u32(), rd.u32()) for _ in range(rd.u32())]
    symbols = bwt.decode()
    if len(rows) != len(symbols):
        raise IndexFormatError("row table does not match the BWT")
    # each row's BWT symbol is the one cyclically preceding its start
    chars = [[None] * ln for ln in lengths]
    for (rid, start), sym in zip(rows, symbols):
        if kind == "ebwt":
            chars[rid][(start - 1) % lengths[rid]] = sym
        elif start > 0:
            chars[rid][start - 1] = sym
    if any(c is None for row in chars for c in row):
        raise IndexFormatError("rows do not cover every read position")
    reads = ReadCollection(("".join(row) for row in chars), alphabet)
    lf = lf_from_bwt(symbols, alphabet.key)
    if kind == "ebwt":
        return EBWTIndex(bwt, lf, reads, tuple(rows))
    order = tuple(need(b"TORD").ints())
    return BCRIndex(bwt, lf, reads, order, tuple(rows))


def save(index, path: str | Path) -> None:
    Path(path).write_bytes(dumps(index))


def load(path: str | Path):
    return loads(Path(path).read_bytes())
