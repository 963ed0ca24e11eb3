from __future__ import annotations

import random

import numpy as np
import pytest

from sgmindeg import builders
from sgmindeg.action import PartialAction
from sgmindeg.core import from_partial_maps


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="run long extended tests (S_6 subgroup lattice cases, ~3 min)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "long: extended tests behind --run-long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


NULL2 = [[0, 0], [0, 0]]  # two-element null semigroup {0, a}, a^2 = 0


def random_small_semigroups(count: int, max_order: int = 8, seed: int = 20240817):
    """Closures of random partial maps on up to 4 points, capped at max_order.

    Deterministic given the seed; mixes monoids, semigroups with zero, and
    semigroups with non-regular classes."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 60:
        attempts += 1
        degree = rng.randint(2, 4)
        k = rng.randint(1, 2)
        gens = [
            tuple(rng.randrange(-1, degree) for _ in range(degree)) for _ in range(k)
        ]
        try:
            s, maps = from_partial_maps(degree, gens, max_size=200)
        except Exception:
            continue
        if s.size > max_order:
            continue
        act = PartialAction(
            degree=degree, maps=np.array([list(m) for m in maps], dtype=np.int32)
        )
        out.append((s, act))
    assert len(out) >= count
    return out


@pytest.fixture(scope="session")
def random_corpus():
    return random_small_semigroups(205)


@pytest.fixture(scope="session")
def builder_corpus():
    """The builder families at desk scale, keyed by label."""
    items = [
        builders.full_transformation(2),
        builders.full_transformation(3),
        builders.partial_transformation(2),
        builders.symmetric_inverse(2),
        builders.symmetric_inverse(3),
        builders.binary_relations(2),
        builders.matrix_monoid(2, 2),
        builders.matrix_monoid(2, 3),
        builders.rectangular_band(2, 2),
        builders.rectangular_band(1, 3),
        builders.chain_semilattice(3),
        builders.chain_semilattice(5),
        builders.cyclic(6),
        builders.symmetric_group(3),
        builders.sigma_square(3, (1, 0, 2)),
        builders.sigma_square(3, (0, 1, 2)),
        builders.aggm_01(2, 3, [frozenset({0, 1})]),
    ]
    return {b.label: b for b in items}


@pytest.fixture(scope="session")
def sim2():
    return builders.symmetric_inverse(2).semigroup


@pytest.fixture(scope="session")
def t2():
    return builders.full_transformation(2).semigroup


@pytest.fixture(scope="session")
def m2f2():
    return builders.matrix_monoid(2, 2).semigroup


@pytest.fixture(scope="session")
def b2():
    return builders.binary_relations(2).semigroup


@pytest.fixture(scope="session")
def s2_rb22():
    return builders.rectangular_group(builders.cyclic(2).semigroup, 2, 2).semigroup
