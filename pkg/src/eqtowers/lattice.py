"""Finite lattices, representations into partition lattices, and n-CPP checks.

A representation of ``L`` on ``A`` is a one-to-one map ``alpha`` from ``L``
into the equivalence relations on ``A`` sending ``0_L`` to the trivial
relation, ``1_L`` to the discrete one, and joins to intersections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .eqrel import EqRel, enumerate_partitions, eq_discrete, eq_trivial
from .errors import PreconditionError, SchemaError, Unresolved
from .hstructure import HStructure, GroundSet, is_special


def _check_table(leq):
    n = len(leq)
    for row in leq:
        if len(row) != n or any(not isinstance(b, bool) for b in row):
            raise PreconditionError("leq must be a square table of booleans")


def _bound(leq, a, b, upper):
    n = len(leq)
    if upper:
        cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
        best = [c for c in cands if all(leq[c][d] for d in cands)]
    else:
        cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
        best = [c for c in cands if all(leq[d][c] for d in cands)]
    return best[0] if len(best) == 1 else None


def is_lattice(leq) -> bool:
    """Partial order in which every pair has a join and a meet."""
    _check_table(leq)
    n = len(leq)
    if n == 0:
        return False
    for a in range(n):
        if not leq[a][a]:
            return False
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                return False
            for c in range(n):
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    return False
    return all(_bound(leq, a, b, True) is not None and _bound(leq, a, b, False) is not None
               for a in range(n) for b in range(a, n))


class FiniteLattice:
    """A lattice on ``0..n-1`` given by its order table; join/meet are derived."""

    def __init__(self, leq):
        if any(b not in (0, 1) for row in leq for b in row):
            raise PreconditionError("leq entries must be booleans")
        leq = tuple(tuple(bool(b) for b in row) for row in leq)
        if not is_lattice(leq):
            raise PreconditionError("table is not a lattice order")
        self.leq = leq
        n = len(leq)
        self.join = tuple(tuple(_bound(leq, a, b, True) for b in range(n)) for a in range(n))
        self.meet = tuple(tuple(_bound(leq, a, b, False) for b in range(n)) for a in range(n))
        self.bottom = next(a for a in range(n) if all(leq[a]))
        self.top = next(a for a in range(n) if all(leq[b][a] for b in range(n)))

    @property
    def n(self):
        return len(self.leq)

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"

    def to_dict(self):
        return {"n": self.n, "leq": [list(r) for r in self.leq]}

    @classmethod
    def from_dict(cls, obj):
        try:
            n, leq = obj["n"], obj["leq"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"lattice needs keys 'n' and 'leq': {exc}") from None
        if not isinstance(leq, list) or len(leq) != n or any(
                not isinstance(r, list) or len(r) != n or any(not isinstance(b, bool) for b in r)
                for r in leq):
            raise SchemaError("leq must be an n x n list of booleans")
        try:
            return cls(leq)
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise PreconditionError("a chain needs n >= 1")
    return FiniteLattice([[a <= b for b in range(n)] for a in range(n)])


def boolean(atoms: int) -> FiniteLattice:
    """Subsets of an ``atoms``-element set, elements numbered by bitmask."""
    n = 1 << atoms
    return FiniteLattice([[a & b == a for b in range(n)] for a in range(n)])


def linear_sum(K: FiniteLattice, L: FiniteLattice) -> FiniteLattice:
    """``K ⊕ L``: ``L`` stacked above ``K`` with ``1_K`` and ``0_L`` identified.

    ``K`` keeps its numbering; the other elements of ``L`` follow in order.
    """
    idx_L = {}
    nxt = K.n
    for b in range(L.n):
        if b == L.bottom:
            idx_L[b] = K.top
        else:
            idx_L[b] = nxt
            nxt += 1
    n = nxt
    leq = [[False] * n for _ in range(n)]
    for a in range(K.n):
        for b in range(K.n):
            leq[a][b] = K.leq[a][b]
    for a in range(L.n):
        for b in range(L.n):
            if L.leq[a][b]:
                leq[idx_L[a]][idx_L[b]] = True
    for a in range(K.n):
        for b in range(L.n):
            leq[a][idx_L[b]] = True
    return FiniteLattice(leq)


def is_isomorphic(K: FiniteLattice, L: FiniteLattice) -> bool:
    """Order isomorphism by backtracking over bijections."""
    if K.n != L.n:
        return False
    n = K.n

    def profile(lat, a):
        return (sum(lat.leq[b][a] for b in range(n)), sum(lat.leq[a][b] for b in range(n)))

    pk = [profile(K, a) for a in range(n)]
    pl = [profile(L, b) for b in range(n)]
    if sorted(pk) != sorted(pl):
        return False
    image = [None] * n
    used = [False] * n

    def extend(a):
        if a == n:
            return True
        for b in range(n):
            if used[b] or pl[b] != pk[a]:
                continue
            if all(K.leq[a][c] == L.leq[b][image[c]] and K.leq[c][a] == L.leq[image[c]][b]
                   for c in range(a)):
                image[a], used[b] = b, True
                if extend(a + 1):
                    return True
                used[b] = False
        image[a] = None
        return False

    return extend(0)


@dataclass(frozen=True)
class Representation:
    lattice: FiniteLattice
    ground: int
    alpha: tuple

    def __post_init__(self):
        alpha = tuple(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) != self.lattice.n:
            raise PreconditionError(
                f"alpha has {len(alpha)} entries for a lattice of size {self.lattice.n}")
        if any(e.n != self.ground for e in alpha):
            raise PreconditionError("every alpha(r) must live on the ground set")

    def to_dict(self):
        return {"lattice": self.lattice.to_dict(), "ground": self.ground,
                "alpha": [list(e.class_of) for e in self.alpha]}

    @classmethod
    def from_dict(cls, obj):
        from .eqrel import _eqrel_from_array
        try:
            lat = FiniteLattice.from_dict(obj["lattice"])
            m = obj["ground"]
            alpha = [_eqrel_from_array(a, m) for a in obj["alpha"]]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"representation needs 'lattice', 'ground', 'alpha': {exc}") from None
        try:
            return cls(lat, m, tuple(alpha))
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


@dataclass(frozen=True)
class RepCheck:
    ok: bool
    condition: Optional[str] = None
    elements: tuple = ()

    def __bool__(self):
        return self.ok


def is_representation(rep: Representation) -> RepCheck:
    """Check injectivity, bottom, top and joins; report the first failure."""
    L, alpha = rep.lattice, rep.alpha
    if rep.ground < 1:
        raise PreconditionError("empty ground")
    seen = {}
    for r, e in enumerate(alpha):
        if e in seen:
            return RepCheck(False, "injective", (seen[e], r))
        seen[e] = r
    if not alpha[L.bottom].is_trivial():
        return RepCheck(False, "bottom", (L.bottom,))
    if not alpha[L.top].is_discrete():
        return RepCheck(False, "top", (L.top,))
    for r in range(L.n):
        for s in range(r + 1, L.n):
            if alpha[L.join[r][s]] != alpha[r].meet(alpha[s]):
                return RepCheck(False, "join", (r, s))
    return RepCheck(True)


def restrict_rep(rep: Representation, B):
    """``(alpha|B, valid)``; the restriction may stop being one-to-one."""
    ys = sorted(set(B))
    if not ys:
        raise PreconditionError("B must be nonempty")
    cand = Representation(rep.lattice, len(ys), tuple(e.restrict(ys) for e in rep.alpha))
    return cand, bool(is_representation(cand))


def _require_rep(rep):
    check = is_representation(rep)
    if not check:
        raise PreconditionError(
            f"not a representation: {check.condition} fails at {check.elements}")


def is_ncpp(rep: Representation, n: int) -> bool:
    """Exact evaluation of the recursive n-CPP property.

    ``B`` ranges over nonempty subsets of ``A`` (``B = A`` allowed) whose
    restriction is itself a representation.
    """
    _require_rep(rep)
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return _ncpp(rep, n)


def _ncpp(rep, n):
    if n == 0:
        return all(e.num_classes() != 2 for e in rep.alpha)
    m = rep.ground
    good = []
    for size in range(1, m + 1):
        for ys in itertools.combinations(range(m), size):
            cand, valid = restrict_rep(rep, ys)
            if valid and _ncpp(cand, n - 1):
                good.append((ys, {e.class_of for e in cand.alpha}))
    if not good:
        return False
    for theta in enumerate_partitions(m):
        if not any(theta.restrict(ys).class_of in images for ys, images in good):
            return False
    return True


def search_ncpp(L: FiniteLattice, n: int, max_ground: int):
    """Smallest n-CPP representation of ``L`` by increasing ground size.

    Within a size, candidates run through the partitions of the non-extreme
    elements in lexicographic order.  Returns ``Unresolved.NONE_UP_TO_BOUND``
    if nothing is found up to ``max_ground``.
    """
    if n < 0 or max_ground < 1:
        raise PreconditionError("need n >= 0 and max_ground >= 1")
    inner = [r for r in range(L.n) if r not in (L.bottom, L.top)]
    for m in range(1, max_ground + 1):
        parts = list(enumerate_partitions(m))
        for choice in itertools.product(parts, repeat=len(inner)):
            alpha = [None] * L.n
            alpha[L.bottom] = eq_trivial(m)
            alpha[L.top] = eq_discrete(m)
            for r, e in zip(inner, choice):
                alpha[r] = e
            rep = Representation(L, m, tuple(alpha))
            if is_representation(rep) and _ncpp(rep, n):
                return rep
    return Unresolved.NONE_UP_TO_BOUND


def chain_rep_from_hstructure(s: HStructure) -> Representation:
    """Representation of the chain ``h+1`` with ``alpha(i) = E_i`` and ``alpha(h)`` discrete."""
    if not is_special(s, range(s.h), 2):
        raise PreconditionError(
            "tower is not (h,2)-special, so i -> E_i would not be one-to-one")
    return Representation(chain(s.h + 1), s.n, tuple(s.levels) + (eq_discrete(s.n),))


def hstructure_from_chain_rep(rep: Representation) -> HStructure:
    """The tower ``alpha(0), …, alpha(h-1)`` of a representation of a chain."""
    _require_rep(rep)
    L = rep.lattice
    if not is_isomorphic(L, chain(L.n)):
        raise PreconditionError("lattice is not a chain")
    if L.n < 2:
        raise PreconditionError("a chain with one element gives no tower")
    order = sorted(range(L.n), key=lambda r: sum(L.leq[q][r] for q in range(L.n)))
    return HStructure(GroundSet(rep.ground), tuple(rep.alpha[r] for r in order[:-1]))
