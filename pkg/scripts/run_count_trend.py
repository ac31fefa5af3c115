"""Compare BWT runs of BCR and genome-context relaxed indexes on simulated reads.

    python scripts/run_count_trend.py --trials 40 --seed 0
"""
import argparse

from rwgindex.experiments import TrendConfig, run_count_trend, summarize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quiet", action="store_true", help="summary only")
    args = ap.parse_args()

    trials = run_count_trend(TrendConfig(trials=args.trials, seed=args.seed))
    if not args.quiet:
        print("genome\tcov\treadlen\treads\trho_bcr\trho_relaxed\tratio")
        for t in trials:
            print(f"{t.genome_length}\t{t.coverage}\t{t.read_length}\t{t.reads}\t"
                  f"{t.rho_bcr}\t{t.rho_relaxed}\t{t.ratio:.3f}")
    for key, value in summarize(trials).items():
        print(f"{key}={value:.3f}" if isinstance(value, float) else f"{key}={value}")


if __name__ == "__main__":
    main()
