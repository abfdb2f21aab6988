import itertools
import random
import warnings

import pytest

from structcyc import PetriNet

CANCELING = [((0, 0), (1, 0)), ((1, 0), (0, 0))]
TWO_ROUND = [((0, 0), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (0, 0))]


@pytest.fixture
def canceling():
    return PetriNet(2, CANCELING)


@pytest.fixture
def two_round():
    return PetriNet(2, TWO_ROUND)


def all_tiny_nets(max_transitions=3):
    """Every net with d=2, entries in {0,1} and at most ``max_transitions`` transitions."""
    vecs = list(itertools.product((0, 1), repeat=2))
    pairs = [(u, v) for u in vecs for v in vecs]
    for k in range(max_transitions + 1):
        for combo in itertools.combinations(pairs, k):
            yield PetriNet(2, combo)


def random_net(rng: random.Random, max_dim=5, max_entry=3, max_transitions=6):
    d = rng.randint(1, max_dim)
    ts = []
    for _ in range(rng.randint(0, max_transitions)):
        ts.append((tuple(rng.randint(0, max_entry) for _ in range(d)),
                   tuple(rng.randint(0, max_entry) for _ in range(d))))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return PetriNet(d, ts)


def random_nets(count, seed, **kw):
    rng = random.Random(seed)
    return [random_net(rng, **kw) for _ in range(count)]


_acceptance_lines = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
