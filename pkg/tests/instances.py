"""Random valid inputs for the extractors, built from basic(h) by shrink/extend."""

import random

from eqtowers.hstructure import basic, extend, induce, shrink


def special_from_basic(rng: random.Random, w: int = 2, max_n: int = 600):
    """An (I, w^(max(I)+1))-special structure of size <= max_n, or None."""
    h0 = rng.randint(2, 4)
    b = basic(h0)
    sub = sorted(rng.sample(range(h0), rng.randint(1, h0)))
    v = rng.randint(2, h0)
    s, _ = induce(b, shrink(b, (tuple(range(h0)), h0), sub, v))
    h2 = rng.randint(h0, 4)
    index2 = set(sub)
    index2 |= {i for i in range(h2) if i not in index2 and rng.random() < 0.25}
    index2 = sorted(index2)
    w2 = max(w ** (max(index2) + 1), v)
    if w2 ** len(index2) > max_n:
        return None
    return extend(s, (tuple(sub), v), h2, index2, w2), tuple(index2), w2


def classwise_injective(rng, s, level, spread=3):
    """Values one-to-one inside each E_level-class, colliding freely across classes."""
    lab = s.level(level).class_of
    members = {}
    for x in range(s.n):
        members.setdefault(lab[x], []).append(x)
    vals = [0] * s.n
    for cls in members.values():
        for x, v in zip(cls, rng.sample(range(spread * len(cls)), len(cls))):
            vals[x] = v
    return vals


def level_canonical(rng, s, k, spread=3):
    """Constant on E_{k+1}-classes, distinct across E_{k+1}-classes inside an E_k-class."""
    coarse, finer = s.level(k).class_of, s.level(k + 1).class_of
    groups = {}
    for x in range(s.n):
        groups.setdefault(coarse[x], {}).setdefault(finer[x], []).append(x)
    vals = [0] * s.n
    for kids in groups.values():
        for cls, v in zip(kids.values(), rng.sample(range(spread * len(kids)), len(kids))):
            for x in cls:
                vals[x] = v
    return vals
