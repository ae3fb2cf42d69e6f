import random

from hypothesis import strategies as st

from eqtowers.eqrel import EqRel, GroundSet
from eqtowers.hstructure import HStructure, exact_shape


def tower_from_paths(paths):
    """Tower whose E_i groups elements by the first i entries of their path."""
    h = len(paths[0])
    levels = [EqRel.from_labels([tuple(p[:i]) for p in paths]) for i in range(h)]
    return HStructure(GroundSet(len(paths)), tuple(levels))


@st.composite
def towers(draw, max_n=6, max_h=3, max_branch=3):
    n = draw(st.integers(1, max_n))
    h = draw(st.integers(1, max_h))
    paths = [tuple(draw(st.integers(0, max_branch - 1)) for _ in range(h)) for _ in range(n)]
    return tower_from_paths(paths)


def random_tower(rng: random.Random, n, h, branch=3):
    return tower_from_paths([tuple(rng.randrange(branch) for _ in range(h)) for _ in range(n)])


def sixteen():
    """X = [0,16), E_1 = four blocks of four consecutive points."""
    return exact_shape([4, 4])
