import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import towers
from eqtowers.canonical import (
    c_bound, c_closed_bound, c_exact, canonicalize, canonicity_index,
    find_counterexample,
)
from eqtowers.eqrel import EqRel, enumerate_partitions
from eqtowers.errors import NoWitnessFound, PreconditionError, Unresolved
from eqtowers.extraction import BEST_EFFORT
from eqtowers.hstructure import basic, exact_shape, shrink, special_index_set, special_width
from eqtowers.verify import check_extraction


def test_canonicity_index_examples():
    b2 = basic(2)
    assert canonicity_index(b2, [7, 7, 7, 7]) == 0
    assert canonicity_index(b2, [3, 1, 2, 0]) == 2
    assert canonicity_index(b2, [0, 0, 1, 1]) == 1
    assert canonicity_index(b2, [0, 1, 1, 0]) is None
    t = EqRel((0, 0, 0, 0))
    from eqtowers.hstructure import HStructure
    s = HStructure.from_levels([t, t, EqRel.from_classes(4, [[0, 1], [2, 3]])])
    # the trivial relation last occurs at level 1
    assert canonicity_index(s, [1, 1, 1, 1]) == 1


def test_c_bound_examples():
    assert c_bound(1, 2) == 4
    assert c_bound(2, 2) == 64
    assert c_bound(3, 1) == 1
    assert c_bound(4, 0) == 0
    # one recursion step at a time
    assert c_bound(3, 2) == c_bound(2, 3 * 2 ** 3)
    assert c_bound(2, 24) == c_bound(1, 2 * 24 ** 2)
    with pytest.raises(PreconditionError):
        c_bound(0, 2)


def test_c_closed_bound_examples():
    assert c_closed_bound(1, 2) == 4
    assert c_closed_bound(2, 2) == 256
    assert c_closed_bound(2, 3) == 1296
    assert c_closed_bound(4, 6) == 144 ** 48
    with pytest.raises(PreconditionError):
        c_closed_bound(2, 1)


@pytest.mark.parametrize("h", range(1, 5))
def test_bound_ledger_consistency(h):
    for w in range(2, 7):
        assert c_bound(h, w) <= c_closed_bound(h, w)


@pytest.mark.parametrize("h", range(1, 5))
def test_c_bound_monotone_in_w(h):
    vals = [c_bound(h, w) for w in range(0, 11)]
    assert vals == sorted(vals)


def c1_by_partitions(w):
    """Least v such that every partition of [0, v) has a class of size >= w or >= w classes."""
    v = 1
    while True:
        if all(max(len(c) for c in e.classes()) >= w or e.num_classes() >= w
               for e in enumerate_partitions(v)):
            return v
        v += 1


@pytest.mark.parametrize("w", [2, 3, 4])
def test_c_exact_h1_against_partition_oracle(w):
    got = c_exact(1, w)
    assert got == c1_by_partitions(w)
    assert got == (w - 1) ** 2 + 1
    assert got <= c_bound(1, w)


def canonical_square_exists(v, colour):
    # every 2x2 sub-shape of the (v, v) tree, canonical at level 0, 1 or 2
    levels = [[0] * (v * v), [x // v for x in range(v * v)], list(range(v * v))]
    for a, b in itertools.combinations(range(v), 2):
        for pa in itertools.combinations(range(v), 2):
            for pb in itertools.combinations(range(v), 2):
                ys = [a * v + p for p in pa] + [b * v + p for p in pb]
                for lab in levels:
                    if all((colour[x] == colour[y]) == (lab[x] == lab[y])
                           for x, y in itertools.combinations(ys, 2)):
                        return True
    return False


def test_c_exact_h2_w2():
    # (2,3) shape admits a bad colouring, checked by brute force over all partitions
    assert not all(canonical_square_exists(3, e.class_of) for e in enumerate_partitions(9))
    bad = find_counterexample(2, 3, 2)
    assert bad is not None and not canonical_square_exists(3, bad)
    assert find_counterexample(2, 4, 2) is None
    assert c_exact(2, 2) == 4
    assert c_exact(2, 2) <= c_bound(2, 2)


@pytest.mark.parametrize("seed", range(30))
def test_random_colourings_of_the_threshold_shape(seed):
    rng = random.Random(seed)
    colour = [rng.randrange(rng.randint(1, 16)) for _ in range(16)]
    assert canonical_square_exists(4, colour)


@pytest.mark.parametrize("w", [2, 3, 4])
def test_counterexamples_below_threshold_h1(w):
    v = (w - 1) ** 2
    bad = find_counterexample(1, v, w)
    sizes = [bad.count(c) for c in set(bad)]
    assert max(sizes) < w and len(sizes) < w


def test_c_exact_cap_and_domain():
    assert c_exact(1, 4, cap=9) is Unresolved.EXCEEDS_CAP
    assert c_exact(1, 4, cap=10) == 10
    with pytest.raises(PreconditionError):
        c_exact(3, 2)
    with pytest.raises(PreconditionError):
        c_exact(1, 1)


def test_canonicalize_examples():
    s = exact_shape([4])
    assert canonicalize(s, ((0,), 4), [1, 1, 2, 2], 2) == ((0, 1), 0)
    assert canonicalize(s, ((0,), 4), [1, 2, 3, 4], 2) == ((0, 1), 1)
    b3 = basic(3)
    ys, i = canonicalize(b3, ((0, 1, 2), 3), [5] * 27, 2, BEST_EFFORT)
    assert ys == shrink(b3, ((0, 1, 2), 3), (0, 1, 2), 2) and i == 0


def test_canonicalize_preconditions():
    s = exact_shape([3])
    with pytest.raises(PreconditionError):
        canonicalize(s, ((0,), 3), [0, 1, 2], 2)
    with pytest.raises(NoWitnessFound):
        canonicalize(s, ((0,), 3), [0, 1, 2], 4, BEST_EFFORT)
    with pytest.raises(PreconditionError):
        canonicalize(s, ((0,), 3), [0, 1, 2], 1, BEST_EFFORT)


@pytest.mark.parametrize("w", [2, 3])
def test_canonicalize_k1_all_partitions(w):
    v = c_bound(1, w)
    s = exact_shape([v])
    for e in enumerate_partitions(v):
        ys, i = canonicalize(s, ((0,), v), e.class_of, w)
        assert check_extraction(s, ys, index_set=(0,), w=w, values=e.class_of, canonical_at=i)


@pytest.mark.parametrize("seed", range(4))
def test_canonicalize_guaranteed_k2_width64(seed):
    rng = random.Random(seed)
    s = exact_shape([64, 64])
    palette = rng.choice([2, 5, 40, 4096])
    f = [rng.randrange(palette) for _ in range(s.n)]
    ys, i = canonicalize(s, ((0, 1), 64), f, 2)
    assert check_extraction(s, ys, index_set=(0, 1), w=2, values=f, canonical_at=i)


@settings(max_examples=150, deadline=None)
@given(towers(max_n=12, max_h=3), st.data())
def test_canonicalize_best_effort_is_sound(s, data):
    index = special_index_set(s)
    if not index or special_width(s) < 2:
        return
    f = data.draw(st.lists(st.integers(0, 3), min_size=s.n, max_size=s.n))
    try:
        ys, i = canonicalize(s, (index, special_width(s)), f, 2, BEST_EFFORT)
    except NoWitnessFound:
        return
    assert check_extraction(s, ys, index_set=index, w=2, values=f, canonical_at=i)
    assert len(ys) == 2 ** len(index)
