"""Shared fixtures and strategies.

Structural pools (spaces, bases, tables) are precomputed once and sampled;
that keeps the property tests fast and their shrunk counterexamples readable.
"""

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from redsep import (
    MODES,
    FinSpace,
    IndexedFamily,
    SetClass,
    SubsetMask,
    all_bases,
    all_tables,
    all_topologies,
    generate_topology,
)

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

SPACE_POOL = [s for k in range(4) for s in all_topologies(k)]
BASE_POOL = all_bases(2, 2)
TABLE_POOL = [
    (n, m, tuple(t)) for n in range(4) for m in range(1, 4) for t in all_tables(n, m)
]


@pytest.fixture
def sierpinski():
    return generate_topology(2, [SubsetMask.from_points(2, [1])])


@pytest.fixture
def five_open():
    """Three points whose opens are {}, {1}, {0,1}, {1,2}, and everything."""
    return generate_topology(
        3, [SubsetMask.from_points(3, p) for p in ([1], [0, 1], [1, 2])]
    )


@pytest.fixture
def chain3():
    """Three points with nested opens {}, {2}, {1,2}, {0,1,2}."""
    return generate_topology(3, [SubsetMask.from_points(3, p) for p in ([2], [1, 2])])


@pytest.fixture
def connected3():
    """A connected non-discrete space whose 2-point subspaces go discrete."""
    return generate_topology(
        3, [SubsetMask.from_points(3, p) for p in ([1], [2], [1, 2])]
    )


def mask(n, points):
    return SubsetMask.from_points(n, points)


def sclass(n, sets):
    return SetClass(n, [SubsetMask.from_points(n, s) for s in sets])


spaces = st.sampled_from(SPACE_POOL)
bases = st.sampled_from(BASE_POOL)
modes = st.sampled_from(MODES)
tables = st.sampled_from(TABLE_POOL)


def masks(n):
    return st.integers(0, (1 << n) - 1).map(lambda b: SubsetMask(n, b))


def set_classes(n):
    return st.lists(masks(n), min_size=1, max_size=4).map(lambda ms: SetClass(n, set(ms)))


@st.composite
def base_mode_families(draw, value_pool=None):
    """A base, a mode, and a family assigning every relevant index."""
    base = draw(bases)
    mode = draw(modes)
    n = draw(st.integers(0, 3))
    pool = value_pool(n) if value_pool else masks(n)
    assignments = {idx: draw(pool) for idx in base.relevant_indices(mode)}
    return base, mode, IndexedFamily(n, mode, assignments)
