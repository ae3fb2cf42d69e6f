import itertools

import pytest
from hypothesis import given, settings

from conftest import towers
from eqtowers.eqrel import EqRel, enumerate_partitions, eq_trivial, is_refinement
from eqtowers.errors import PreconditionError, SchemaError
from eqtowers.hstructure import (
    Coloring, HStructure, SpecialCert, basic, compress, exact_shape, extend,
    induce, is_special, quotient, shrink, special_index_set, special_width,
    tight_cert,
)
from eqtowers.verify import induced_profile


def levels_of(s):
    return [list(e.class_of) for e in s.levels]


def i12_example():
    # h=3 on [0,4): E_0 = E_1 trivial, E_2 = {{0,1},{2,3}}
    t = eq_trivial(4)
    return HStructure.from_levels([t, t, EqRel.from_classes(4, [[0, 1], [2, 3]])])


def all_towers(n, h):
    parts = list(enumerate_partitions(n))

    def rec(prefix):
        if len(prefix) == h:
            yield HStructure.from_levels(prefix)
            return
        for e in parts:
            if is_refinement(e, prefix[-1]):
                yield from rec(prefix + [e])

    yield from rec([eq_trivial(n)])


def test_basic_two():
    s = basic(2)
    assert s.n == 4
    assert s.ground.labels == ("00", "01", "10", "11")
    assert s.levels[0].is_trivial()
    assert s.levels[1].classes() == [[0, 1], [2, 3]]
    assert tight_cert(s) == SpecialCert((0, 1), 2)
    assert s.n >= 2 ** 2


@pytest.mark.parametrize("h", [2, 3, 4, 5])
def test_basic_certificate(h):
    s = basic(h)
    assert s.n == h ** h
    assert special_index_set(s) == tuple(range(h))
    assert special_width(s) == h
    assert is_special(s, range(h), h)
    assert not is_special(s, range(h), h + 1)


def test_basic_cap():
    with pytest.raises(PreconditionError):
        basic(6)
    with pytest.raises(PreconditionError):
        basic(1)


def test_index_set_examples():
    assert special_index_set(basic(2)) == (0, 1)
    s = i12_example()
    assert special_index_set(s) == (1, 2)
    assert special_width(s) == 2
    one = HStructure.from_levels([eq_trivial(1), eq_trivial(1)])
    assert special_index_set(one) == ()
    assert not is_special(basic(2), {0, 1}, 3)
    with pytest.raises(PreconditionError):
        is_special(basic(2), {0, 1}, 1)


def test_induce_examples():
    s = basic(2)
    full, mapping = induce(s, range(4))
    assert full == s and mapping == (0, 1, 2, 3)
    sub, _ = induce(s, {0, 1})
    assert sub.n == 2 and special_index_set(sub) == (1,)
    sub, _ = induce(s, {0, 2})
    assert sub.levels[1].is_discrete() and special_index_set(sub) == (0,)
    with pytest.raises(PreconditionError):
        induce(s, [])


def test_shrink_examples():
    assert shrink(basic(2), ((0, 1), 2), {0, 1}, 2) == (0, 1, 2, 3)
    b3 = basic(3)
    ys = shrink(b3, ((0, 1, 2), 3), {0, 2}, 2)
    assert len(ys) == 4
    assert induced_profile(levels_of(b3), ys) == ((0, 2), 2)
    ys = shrink(b3, ((0, 1, 2), 3), {2}, 3)
    assert ys == (0, 1, 2)
    # all inside one deepest class
    assert len({b3.levels[2].class_of[y] for y in ys}) == 1


def test_shrink_rejects_bad_args():
    b3 = basic(3)
    with pytest.raises(PreconditionError):
        shrink(b3, ((0, 1, 2), 3), {0}, 4)
    with pytest.raises(PreconditionError):
        shrink(b3, ((0, 1, 2), 3), set(), 2)
    with pytest.raises(PreconditionError):
        shrink(b3, ((0, 1), 3), {0}, 2)


@pytest.mark.parametrize("sub", [s for r in range(1, 4) for s in itertools.combinations(range(3), r)])
@pytest.mark.parametrize("v", [2, 3])
def test_shrink_size_and_profile_on_basic3(sub, v):
    b3 = basic(3)
    ys = shrink(b3, ((0, 1, 2), 3), sub, v)
    assert len(ys) == v ** len(sub)
    assert induced_profile(levels_of(b3), ys) == (sub, v)


def test_extend_examples():
    b2 = basic(2)
    e = extend(b2, ((0, 1), 2), 2, {0, 1}, 2)
    assert e == b2
    e = extend(b2, ((0, 1), 2), 3, {0, 1, 2}, 2)
    assert e.n == 8 and is_special(e, {0, 1, 2}, 2)
    assert [lv[:4] for lv in levels_of(e)[:2]] == levels_of(b2)
    # the old points stay apart at the new level, as they were under the virtual discrete E_2
    assert len({e.levels[2].class_of[x] for x in range(4)}) == 4
    e = extend(b2, ((0, 1), 2), 2, {0, 1}, 3)
    assert e.n == 9 and special_width(e) == 3
    assert induce(e, range(4))[0].levels == b2.levels


def test_extend_rejects_bad_args():
    b2 = basic(2)
    with pytest.raises(PreconditionError):
        extend(b2, ((0, 1), 2), 1, {0}, 2)
    with pytest.raises(PreconditionError):
        extend(b2, ((0, 1), 2), 3, {0, 2}, 2)
    with pytest.raises(PreconditionError):
        extend(b2, ((0, 1), 2), 2, {0, 1, 2}, 2)


@settings(max_examples=60, deadline=None)
@given(towers(max_n=8, max_h=3))
def test_extend_then_restrict_is_identity(s):
    index = special_index_set(s)
    if not index or special_width(s) < 2:
        return
    w = special_width(s)
    for h2, extra in [(s.h, ()), (s.h + 1, (s.h,))]:
        e = extend(s, (index, w), h2, set(index) | set(extra), w + 1)
        assert is_special(e, set(index) | set(extra), w + 1)
        back, _ = induce(e, range(s.n))
        assert back.levels[: s.h] == s.levels
        if h2 > s.h:
            assert back.levels[s.h].is_discrete()


def test_quotient_examples():
    q, blocks = quotient(basic(2), 0)
    assert q.n == 1 and blocks == [[0, 1, 2, 3]]
    q, blocks = quotient(basic(2), 1)
    assert q.n == 2 and q.h == 1 and q.levels[0].is_trivial()
    assert tight_cert(q) == SpecialCert((0,), 2)
    q, blocks = quotient(basic(3), 2)
    assert q.n == 9 and q.h == 2
    assert q.levels[1].classes() == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    with pytest.raises(PreconditionError):
        quotient(basic(2), 2)


def test_compress_examples():
    b3 = basic(3)
    c, level_map = compress(b3, ((0, 1, 2), 3))
    assert c is b3 and level_map == (0, 1, 2)
    s = i12_example()
    c, level_map = compress(s, ((1, 2), 2))
    assert level_map == (1, 2)
    assert c.h == 2 and c.levels[0].is_trivial() and c.levels[1] == s.levels[2]
    assert is_special(c, {0, 1}, 2)
    assert special_width(c) == special_width(s)


@pytest.mark.parametrize("sub", [(0,), (1,), (0, 2), (1, 2), (0, 1, 2)])
def test_compress_and_shrink_commute_on_basic3(sub):
    b3 = basic(3)
    cert = ((0, 1, 2), 3)
    # shrink, then compress the induced structure
    left, _ = induce(b3, shrink(b3, cert, sub, 2))
    left, _ = compress(left, tight_cert(left))
    # compress (identity on basic), then shrink and compress the shrunk part
    c0, _ = compress(b3, cert)
    right, _ = induce(c0, shrink(c0, cert, sub, 2))
    right, _ = compress(right, tight_cert(right))
    assert left.levels == right.levels
    assert special_index_set(left) == tuple(range(len(sub)))


def test_shrink_commutes_with_compress_on_non_contiguous_index():
    b3 = basic(3)
    s, _ = induce(b3, shrink(b3, ((0, 1, 2), 3), {0, 2}, 3))
    cert = tight_cert(s)
    assert cert == SpecialCert((0, 2), 3)
    c, level_map = compress(s, cert)
    assert level_map == (0, 2)
    for sub in [(0,), (2,), (0, 2)]:
        for v in (2, 3):
            direct = shrink(s, cert, sub, v)
            via = shrink(c, ((0, 1), 3), [level_map.index(i) for i in sub], v)
            assert direct == via


def _certified(s):
    index = special_index_set(s)
    return index, special_width(s)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("h", [1, 2, 3])
def test_is_special_monotone_in_w_exhaustive(n, h):
    for s in all_towers(n, h):
        index, width = _certified(s)
        if not index:
            assert not is_special(s, index, 2)
            continue
        for w in range(2, n + 2):
            if is_special(s, index, w):
                assert all(is_special(s, index, v) for v in range(2, w + 1))
                # size bound
                assert s.n >= w ** len(index)


@settings(max_examples=200, deadline=None)
@given(towers(max_n=10, max_h=4))
def test_size_bound(s):
    index, width = _certified(s)
    if index and width >= 2:
        assert s.n >= width ** len(index)


@settings(max_examples=100, deadline=None)
@given(towers(max_n=10, max_h=3))
def test_shrink_verified_independently(s):
    index, width = _certified(s)
    if not index or width < 2:
        return
    for r in range(1, len(index) + 1):
        for sub in itertools.combinations(index, r):
            ys = shrink(s, (index, width), sub, 2)
            assert len(ys) == 2 ** r
            assert induced_profile(levels_of(s), ys) == (sub, 2)


def test_exact_shape():
    s = exact_shape([4, 4])
    assert s.n == 16 and s.h == 2
    assert s.levels[1].classes()[1] == [4, 5, 6, 7]
    assert tight_cert(s) == SpecialCert((0, 1), 4)


def test_serialization():
    b3 = basic(3)
    assert HStructure.from_dict(b3.to_dict()) == b3
    assert "labels" in b3.to_dict()
    with pytest.raises(SchemaError):
        HStructure.from_dict({"h": 2, "n": 4, "levels": [[0, 0, 0, 0]]})
    with pytest.raises(SchemaError):
        HStructure.from_dict({"h": 2, "n": 4, "levels": [[0, 0, 2, 2], [0, 0, 0, 0]]})
    f = Coloring((1, 0, 3))
    assert Coloring.from_dict(f.to_dict()) == f
    with pytest.raises(SchemaError):
        Coloring.from_dict({"n": 2, "values": [1, -1]})


def test_structure_validation():
    with pytest.raises(PreconditionError):
        HStructure.from_levels([EqRel.from_classes(2, [[0], [1]])])
    with pytest.raises(PreconditionError):
        HStructure.from_levels([eq_trivial(4), EqRel.from_classes(4, [[0, 1], [2, 3]]),
                                EqRel.from_classes(4, [[0, 2], [1], [3]])])
