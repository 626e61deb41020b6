import random
from pathlib import Path

import pytest

from qtorb import polytope as pt
from qtorb.model import ModelError, model_from_vectors

DATA = Path(__file__).resolve().parent.parent / "src" / "qtorb" / "data"

P112 = [(1, 1), (1, -1), (-1, 0)]
CP2 = [(1, 0), (0, 1), (-1, -1)]
TRI222 = [(2, 0), (0, 2), (2, 2)]


def hirzebruch(k):
    return [(1, 0), (0, 1), (-1, k), (0, -1)]


# the realization used for P(1,1,2): A=(0,0) on F1,F2; B=(1,0) on F1,F3; C=(0,1) on F2,F3
P112_REALIZATION = pt.Realization.of([(0, 0), (1, 0), (0, 1)])
SQUARE_REALIZATION = pt.Realization.of([(0, 0), (1, 0), (1, 1), (0, 1)])


def random_model(P, rng, lo=-3, hi=3, tries=2000):
    for _ in range(tries):
        vecs = [tuple(rng.randint(lo, hi) for _ in range(P.dim)) for _ in range(P.facet_count)]
        try:
            return model_from_vectors(P, vecs)
        except ModelError:
            continue
    raise RuntimeError("no valid random model found")


def random_unimodular(n, rng, steps=6):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        choice = rng.random()
        if n > 1 and choice < 0.6:
            f = rng.choice([-2, -1, 1, 2])
            rows[i] = [a + f * b for a, b in zip(rows[i], rows[j])]
        elif n > 1 and choice < 0.8:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return rows


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture
def triangle():
    return pt.simplex(2)


@pytest.fixture
def square():
    return pt.polygon(4)


@pytest.fixture
def p112(triangle):
    return model_from_vectors(triangle, P112)


@pytest.fixture
def cp2(triangle):
    return model_from_vectors(triangle, CP2)


@pytest.fixture
def tri222(triangle):
    return model_from_vectors(triangle, TRI222)


@pytest.fixture
def teardrop():
    return model_from_vectors(pt.segment(), [(2,), (-1,)])


@pytest.fixture
def cp1():
    return model_from_vectors(pt.segment(), [(1,), (-1,)])


# ---------------------------------------------------------------------------
# per-criterion summary lines for the acceptance module

CRITERIA = {}


def record_criterion(number, title, passed):
    CRITERIA[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, passed = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
