import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rwgindex import (
    ReadCollection,
    build_bcr,
    build_ebwt,
    build_relaxed,
    build_wheeler_paths,
    contexts_from_genome,
)

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

EXAMPLE_READS = ("GATTA", "TTAGA", "TAGATA", "GATAC", "ATACAT")
EXAMPLE_GENOME = "GATTAGATACAT"


def dna(min_size=1, max_size=10, alphabet="ACGT"):
    return st.text(alphabet=alphabet, min_size=min_size, max_size=max_size)


readsets = st.lists(dna(max_size=9), min_size=1, max_size=6)
small_alpha_readsets = st.lists(dna(max_size=9, alphabet="AC"), min_size=1, max_size=6)
patterns = dna(max_size=5)


@st.composite
def readsets_with_contexts(draw, alphabet="ACGT"):
    reads = draw(st.lists(dna(max_size=9, alphabet=alphabet), min_size=1, max_size=6))
    contexts = draw(st.lists(dna(0, 6, alphabet), min_size=len(reads), max_size=len(reads)))
    return reads, contexts


@pytest.fixture(scope="session")
def example_reads():
    return ReadCollection(EXAMPLE_READS)


@pytest.fixture(scope="session")
def ebwt_index(example_reads):
    return build_ebwt(example_reads)


@pytest.fixture(scope="session")
def bcr_index(example_reads):
    return build_bcr(example_reads)


@pytest.fixture(scope="session")
def paths_index(example_reads):
    return build_wheeler_paths(example_reads)


@pytest.fixture(scope="session")
def relaxed_index(example_reads):
    return build_relaxed(example_reads, contexts_from_genome(example_reads, EXAMPLE_GENOME))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
