import numpy as np
import pytest

from hurwitz1 import covering_from_branch_points
from hurwitz1._fixtures import fixture, fixture_matrix, load_fixtures
from hurwitz1.frobenius import StructureKind

LEMNISCATIC = (1.0, 0.0, -1.0)
EQUIANHARMONIC = (1.0, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3))

ALL_KINDS = [
    StructureKind("holo-s"),
    StructureKind("double-s"),
    StructureKind("double-t"),
    StructureKind("double-combo", 1.0),
]


@pytest.fixture(scope="session")
def lemn_cov():
    return covering_from_branch_points(LEMNISCATIC)


@pytest.fixture(scope="session")
def equi_cov():
    return covering_from_branch_points(EQUIANHARMONIC)


@pytest.fixture(scope="session")
def oracle():
    return load_fixtures()


def random_triples(seed, count, scale=1.5):
    """Seeded well-separated branch triples (shared sampling for tests)."""
    from hurwitz1.wdvv import sample_branch_points

    rng = np.random.default_rng(seed)
    return [sample_branch_points(rng, scale) for _ in range(count)]


__all__ = ["LEMNISCATIC", "EQUIANHARMONIC", "ALL_KINDS", "fixture", "fixture_matrix", "random_triples"]
