"""Print the indexes of the five-read example: BWTs, run counts, LF cycles, a search trace."""
from rwgindex import (
    ReadCollection,
    build_bcr,
    build_ebwt,
    build_relaxed,
    build_wheeler_paths,
    contexts_from_genome,
    cycle_decomposition,
    locate_all,
    search_trace,
)

READS = ["GATTA", "TTAGA", "TAGATA", "GATAC", "ATACAT"]
GENOME = "GATTAGATACAT"


def show(name, index, cycles=True):
    print(f"{name}: {''.join(index.bwt.decode())}  rho={index.bwt.rho}")
    if cycles:
        for cyc in cycle_decomposition(index.lf):
            print("   (" + ",".join(map(str, cyc)) + ")")


def main():
    reads = ReadCollection(READS)
    show("eBWT", build_ebwt(reads))
    show("BCR", build_bcr(reads))
    paths = build_wheeler_paths(reads)
    show("paths", paths, cycles=False)
    print("   sources:", paths.source_ranks)
    relaxed = build_relaxed(reads, contexts_from_genome(reads, GENOME))
    show("relaxed", relaxed, cycles=False)
    print("   contexts:", relaxed.contexts.contexts)
    print("   GAT trace:", search_trace(relaxed, "GAT"))
    for occ in locate_all(relaxed, "GAT"):
        print(f"   read {occ.position.read_id} offset {occ.position.offset}: {'true' if occ.is_true else 'false'}")


if __name__ == "__main__":
    main()
