"""Command-line front end: build, query, stats, verify.

Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

from . import oracle
from .classic import NonPrimitiveReadError, build_bcr, build_ebwt, is_primitive
from .core import DNA, ReadCollection
from .indexfile import IndexFormatError, dumps, loads
from .query import certify, count, locate_all
from .relaxed import (
    PROVENANCES,
    ContextAssignment,
    build_relaxed,
    contexts_from_genome,
    contexts_from_overlaps,
    empty_contexts,
    explicit_contexts,
    run_count_report,
)
from .wheeler import PathIndex, build_wheeler_paths, index_graph, verify_wheeler

MODES = ("ebwt", "bcr", "paths", "relaxed")
CONTEXTS = ("none", "genome", "overlap", "file")
EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


@dataclass(frozen=True)
class BuildConfig:
    mode: str = "relaxed"
    context: str = "none"
    genome: str | None = None  # the genome sequence itself
    context_lines: tuple[str, ...] | None = None  # for context == "file"
    min_overlap: int = 1
    context_cap: int | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.context not in CONTEXTS:
            raise UsageError(f"unknown context source {self.context!r}")
        if self.mode != "relaxed" and self.context != "none":
            raise UsageError("context options are only valid with --mode relaxed")
        if self.context == "genome" and self.genome is None:
            raise UsageError("--context genome needs --genome")
        if self.context == "file" and self.context_lines is None:
            raise UsageError("--context file needs --context-file")
        if self.min_overlap < 1:
            raise UsageError("--min-overlap must be at least 1")
        if self.context_cap is not None and self.context_cap < 0:
            raise UsageError("--context-cap must be non-negative")


def make_contexts(reads: ReadCollection, config: BuildConfig) -> ContextAssignment:
    if config.context == "genome":
        return contexts_from_genome(reads, config.genome, config.context_cap)
    if config.context == "overlap":
        return contexts_from_overlaps(reads, config.min_overlap, config.context_cap)
    if config.context == "file":
        return explicit_contexts(reads, config.context_lines)
    return empty_contexts(reads)


def build_index(reads: ReadCollection, config: BuildConfig):
    config.validate()
    if config.mode == "ebwt":
        return build_ebwt(reads)
    if config.mode == "bcr":
        return build_bcr(reads)
    if config.mode == "paths":
        return build_wheeler_paths(reads)
    return build_relaxed(reads, make_contexts(reads, config))


# -- input -------------------------------------------------------------------


def parse_sequences(text: str, source: str = "input") -> list[str]:
    """Reads from plain text (one per line) or FASTA (headers start with '>')."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DataError(f"{source}: no reads found")
    if lines[0].startswith(">"):
        seqs, cur = [], None
        for ln in lines:
            if ln.startswith(">"):
                if cur is not None:
                    seqs.append("".join(cur))
                cur = []
            else:
                cur.append(ln.upper())
        seqs.append("".join(cur))
        if any(not s for s in seqs):
            raise DataError(f"{source}: FASTA record without sequence")
    else:
        seqs = lines
    for i, s in enumerate(seqs):
        bad = sorted(set(s) - set(DNA))
        if bad:
            raise DataError(f"{source}: read {i} has non-ACGT symbol(s) {''.join(bad)!r}")
    return seqs


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {what} {path}: {exc.strerror or exc}") from exc


def read_input(path: str) -> ReadCollection:
    return ReadCollection(parse_sequences(_read_text(path, "input"), path))


def load_config(args) -> BuildConfig:
    genome = lines = None
    if getattr(args, "genome", None):
        genome = "".join(parse_sequences(_read_text(args.genome, "genome"), args.genome))
    if getattr(args, "context_file", None):
        lines = tuple(ln.strip().upper() for ln in _read_text(args.context_file, "context file").splitlines())
    context = args.context or "none"
    extras = (genome, lines, args.min_overlap, args.context_cap)
    if args.mode != "relaxed" and any(x is not None for x in extras):
        raise UsageError("context options are only valid with --mode relaxed")
    min_overlap = 1 if args.min_overlap is None else args.min_overlap
    return BuildConfig(args.mode, context, genome, lines, min_overlap, args.context_cap)


def _load_index(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read index {path}: {exc.strerror or exc}") from exc
    try:
        return loads(data)
    except IndexFormatError as exc:
        raise DataError(f"{path}: {exc}") from exc


# -- reports -----------------------------------------------------------------


def stats_lines(index) -> list[str]:
    rho, n, r, N = run_count_report(index)
    lines = [f"kind={index.kind}", f"rho={rho}", f"n={n}", f"r={r}", f"N={N}"]
    if isinstance(index, PathIndex):
        ctx = index.contexts
        if ctx is None:
            prov = "none"
        else:
            prov = ",".join(f"{tag}:{ctx.provenance.count(tag)}" for tag in PROVENANCES)
        lines.append(f"provenance={prov}")
        if ctx is not None and ctx.flagged:
            lines.append("flagged=" + ",".join(map(str, ctx.flagged)))
        lines += [
            f"samples={len(index.samples)}",
            f"breaks={len(index.breaks)}",
            f"witness={len(index.witness)}",
        ]
    else:
        lines.append("provenance=none")
    return lines


def _check_pattern(index, pattern: str) -> None:
    if not pattern:
        raise UsageError("pattern must be non-empty")
    alphabet = index.alphabet if isinstance(index, PathIndex) else index.reads.alphabet
    bad = sorted(set(pattern) - set(alphabet.symbols))
    if bad:
        raise UsageError(f"pattern has out-of-alphabet symbol(s) {''.join(bad)!r}")


def query_lines(index, pattern: str, mode: str, include_false: bool = False) -> list[str]:
    _check_pattern(index, pattern)
    if mode == "count":
        occ = locate_all(index, pattern)
        return [f"total={count(index, pattern)}", f"true={sum(o.is_true for o in occ)}"]
    if mode == "locate":
        return [
            f"{o.position.read_id}\t{o.position.offset}\t{'true' if o.is_true else 'false'}"
            for o in locate_all(index, pattern)
            if o.is_true or include_false
        ]
    if isinstance(index, PathIndex):
        _, hit = certify(index, None, pattern)
    else:
        hits = [o.position for o in locate_all(index, pattern) if o.is_true]
        hit = hits[0] if hits else None
    return ["none" if hit is None else f"{hit.read_id}\t{hit.offset}"]


# -- verification ------------------------------------------------------------


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def random_patterns(reads: Sequence[str], how_many: int, max_len: int, seed: int = 0) -> list[str]:
    """Half substrings of reads, half random strings over the read symbols."""
    rng = random.Random(seed)
    symbols = sorted({c for s in reads for c in s})
    out = []
    for i in range(how_many):
        m = rng.randint(1, max_len)
        if i % 2 == 0:
            s = rng.choice(reads)
            m = min(m, len(s))
            at = rng.randint(0, len(s) - m)
            out.append(s[at:at + m])
        else:
            out.append("".join(rng.choice(symbols) for _ in range(m)))
    return out


def verify_index(index, reads: ReadCollection, patterns: Sequence[str]) -> list[Check]:
    """Compare one index against brute force on the readset it was built from."""
    raw = list(reads)
    kind = index.kind
    checks = []

    def add(name, ok, detail=""):
        checks.append(Check(f"{kind}: {name}", bool(ok), detail))

    if kind == "ebwt":
        add("bwt", index.bwt.decode() == list(oracle.naive_ebwt(raw)))
    elif kind == "bcr":
        add("bwt", index.bwt.decode() == oracle.naive_bcr(raw))
    else:
        contexts = index.contexts.contexts if index.contexts is not None else ("",) * len(raw)
        bwt, sources = oracle.naive_relaxed_bwt(raw, contexts)
        add("bwt", "".join(index.bwt.decode()) == bwt)
        add("sources", index.source_ranks == sources)
        if index.reads is not None:
            graph, ordering = index_graph(index)
            add("wheeler", verify_wheeler(graph, ordering, relaxed=True) is None)

    bad = []
    for P in patterns:
        truth = oracle.naive_true_finals(raw, P)
        occ = locate_all(index, P)
        found = {(o.position.read_id, o.position.offset) for o in occ if o.is_true}
        if found != truth:
            bad.append(f"{P}: true matches")
        if kind in ("paths", "relaxed"):
            nodes = oracle.naive_forward_search(raw, contexts, P)
            if count(index, P) != len(nodes) or [tuple(o.position) for o in occ] != nodes:
                bad.append(f"{P}: count/locate")
            _, hit = certify(index, None, P)
            if (hit is None) != (not truth) or (hit is not None and tuple(hit) not in truth):
                bad.append(f"{P}: witness")
        elif kind == "bcr":
            if count(index, P) != len(truth):
                bad.append(f"{P}: count")
        elif count(index, P) < len(truth):
            bad.append(f"{P}: count")
    add(f"queries ({len(patterns)} patterns)", not bad, "; ".join(bad[:5]))
    return checks


def verify_loaded(loaded, fresh, patterns: Sequence[str]) -> list[Check]:
    """A loaded index must answer exactly like a fresh build of the same input."""
    ok = loaded.kind == fresh.kind and loaded.bwt == fresh.bwt
    bad = []
    if ok:
        for P in patterns:
            for mode in ("count", "locate", "witness"):
                if query_lines(loaded, P, mode, True) != query_lines(fresh, P, mode, True):
                    bad.append(f"{P}: {mode}")
    return [Check(f"index file: matches fresh {fresh.kind} build", ok and not bad, "; ".join(bad[:5]))]


# -- commands ----------------------------------------------------------------


def cmd_build(args) -> int:
    reads = read_input(args.input)
    config = load_config(args)
    try:
        index = build_index(reads, config)
    except NonPrimitiveReadError as exc:
        raise DataError(f"{exc} (the eBWT needs primitive reads)") from exc
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    data = dumps(index)
    try:
        Path(args.out).write_bytes(data)
    except OSError as exc:
        raise DataError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    print("\n".join(stats_lines(index)))
    return EXIT_OK


def cmd_query(args) -> int:
    index = _load_index(args.index)
    mode = "count" if args.count else "locate" if args.locate else "witness"
    for line in query_lines(index, args.pattern.strip().upper(), mode, args.include_false):
        print(line)
    return EXIT_OK


def cmd_stats(args) -> int:
    print("\n".join(stats_lines(_load_index(args.index))))
    return EXIT_OK


def cmd_verify(args) -> int:
    reads = read_input(args.input)
    modes = MODES if args.mode in (None, "all") else (args.mode,)
    if args.patterns:
        patterns = [ln.strip().upper() for ln in _read_text(args.patterns, "patterns").splitlines() if ln.strip()]
    else:
        try:
            how_many, max_len = (int(x) for x in args.random.split(","))
        except ValueError:
            raise UsageError("--random expects COUNT,LEN") from None
        if how_many < 0 or max_len < 1:
            raise UsageError("--random expects COUNT >= 0 and LEN >= 1")
        patterns = random_patterns(list(reads), how_many, max_len, args.seed)
    loaded = _load_index(args.index) if args.index else None

    checks = []
    for mode in modes:
        if mode == "ebwt" and not all(is_primitive(s) for s in reads):
            checks.append(Check("ebwt: skipped", True, "readset has non-primitive reads"))
            continue
        context = (args.context or "overlap") if mode == "relaxed" else "none"
        args_mode = argparse.Namespace(**{**vars(args), "mode": mode, "context": context})
        if mode != "relaxed":
            args_mode.genome = args_mode.context_file = None
            args_mode.min_overlap = args_mode.context_cap = None
        config = load_config(args_mode)
        try:
            index = build_index(reads, config)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
        checks += verify_index(index, reads, patterns)
        if loaded is not None and loaded.kind == mode:
            checks += verify_loaded(loaded, index, patterns)
    if loaded is not None and loaded.kind not in modes:
        raise UsageError(f"index kind {loaded.kind} is not among the verified modes")

    for chk in checks:
        line = f"{'PASS' if chk.ok else 'FAIL'} {chk.name}"
        print(line + (f" ({chk.detail})" if chk.detail else ""))
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_context_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--context", choices=CONTEXTS, help="context source (relaxed mode only)")
    p.add_argument("--genome", help="reference sequence for --context genome")
    p.add_argument("--context-file", help="one context per line, aligned with the reads")
    p.add_argument("--min-overlap", type=int, default=None, help="shortest overlap used (default 1)")
    p.add_argument("--context-cap", type=int, default=None, help="longest context kept")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rwgindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build an index file from reads")
    p.add_argument("input", help="reads: plain text, one per line, or FASTA")
    p.add_argument("--mode", choices=MODES, default="relaxed")
    _add_context_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="count, locate or certify a pattern")
    p.add_argument("index")
    p.add_argument("--pattern", required=True)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--count", action="store_true")
    what.add_argument("--locate", action="store_true")
    what.add_argument("--witness", action="store_true")
    p.add_argument("--include-false", action="store_true", help="also list false matches")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", help="print key=value statistics")
    p.add_argument("index")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="cross-check the indexes against brute force")
    p.add_argument("input")
    p.add_argument("--mode", choices=MODES + ("all",), default="all")
    _add_context_flags(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--patterns", help="file with one pattern per line")
    src.add_argument("--random", default="100,6", help="COUNT,LEN random patterns (default 100,6)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", help="also check that this index file answers like a fresh build")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported by argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "build" and args.context not in (None, "none") and args.mode != "relaxed":
            raise UsageError("context options are only valid with --mode relaxed")
        return args.func(args)
    except UsageError as exc:
        print(f"rwgindex: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"rwgindex: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
