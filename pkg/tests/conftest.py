import pytest

from valuation_lab.checks import random_configuration, _trial_rng

CORPUS_SEED = 1729
CORPUS_SIZE = 1000
CORPUS_MAX_POINTS = 12


@pytest.fixture(scope="session")
def fuzz_corpus():
    """The 1000-configuration corpus used by the acceptance criteria."""
    return [
        random_configuration(_trial_rng(CORPUS_SEED, trial), CORPUS_MAX_POINTS)
        for trial in range(CORPUS_SIZE)
    ]
