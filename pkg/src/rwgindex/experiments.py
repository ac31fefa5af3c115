"""Run-count experiments on simulated read sets."""
from __future__ import annotations

import random
import statistics
from dataclasses import dataclass

from .classic import build_bcr
from .core import DNA, ReadCollection
from .relaxed import build_relaxed, contexts_from_genome


@dataclass(frozen=True)
class TrendConfig:
    trials: int = 40
    genome_length: tuple[int, int] = (100, 500)
    coverage: tuple[int, int] = (5, 20)
    read_length: tuple[int, int] = (20, 40)
    seed: int = 0


@dataclass(frozen=True)
class TrendTrial:
    genome_length: int
    coverage: int
    read_length: int
    reads: int
    rho_bcr: int
    rho_relaxed: int

    @property
    def ratio(self) -> float:
        return self.rho_relaxed / self.rho_bcr


def simulate_reads(rng: random.Random, genome: str, coverage: int, read_length: int) -> list[str]:
    """Uniformly placed substrings until ``coverage`` times the genome is covered."""
    how_many = max(1, coverage * len(genome) // read_length)
    starts = [rng.randint(0, len(genome) - read_length) for _ in range(how_many)]
    return [genome[a:a + read_length] for a in starts]


def run_count_trial(rng: random.Random, config: TrendConfig) -> TrendTrial:
    length = rng.randint(*config.genome_length)
    genome = "".join(rng.choice(DNA) for _ in range(length))
    coverage = rng.randint(*config.coverage)
    read_length = rng.randint(*config.read_length)
    reads = ReadCollection(simulate_reads(rng, genome, coverage, read_length))
    relaxed = build_relaxed(reads, contexts_from_genome(reads, genome))
    return TrendTrial(length, coverage, read_length, reads.r, build_bcr(reads).bwt.rho, relaxed.rho)


def run_count_trend(config: TrendConfig = TrendConfig()) -> list[TrendTrial]:
    rng = random.Random(config.seed)
    return [run_count_trial(rng, config) for _ in range(config.trials)]


def summarize(trials: list[TrendTrial]) -> dict[str, float]:
    ratios = sorted(t.ratio for t in trials)
    q = statistics.quantiles(ratios, n=4) if len(ratios) > 1 else ratios * 3
    return {
        "trials": len(trials),
        "not_worse": sum(t.rho_relaxed <= t.rho_bcr for t in trials) / len(trials),
        "min": ratios[0],
        "q1": q[0],
        "median": statistics.median(ratios),
        "q3": q[2],
        "max": ratios[-1],
    }
