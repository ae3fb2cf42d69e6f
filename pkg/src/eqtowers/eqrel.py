"""Equivalence relations (partitions) on finite ground sets ``[0, n)``.

A relation is stored as its ``class_of`` array: ``class_of[x]`` is the least
element of the class of ``x``.  That normal form is unique, so structural
equality of two :class:`EqRel` values is equality of relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError, SchemaError


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: Optional[tuple] = None

    def __post_init__(self):
        if self.size < 0:
            raise PreconditionError(f"ground size must be >= 0, got {self.size}")
        if self.labels is not None:
            labels = tuple(str(lab) for lab in self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise PreconditionError(
                    f"{len(labels)} labels for a ground set of size {self.size}")
            if len(set(labels)) != len(labels):
                raise PreconditionError("ground labels must be distinct")


def _size(g) -> int:
    return g.size if isinstance(g, GroundSet) else int(g)


@dataclass(frozen=True)
class EqRel:
    class_of: tuple

    def __post_init__(self):
        cls = tuple(self.class_of)
        object.__setattr__(self, "class_of", cls)
        for x, c in enumerate(cls):
            if not isinstance(c, int) or c < 0 or c > x or cls[c] != c:
                raise PreconditionError(
                    f"class_of is not in canonical-representative normal form at {x}")

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "EqRel":
        """Relation whose classes are the fibres of ``labels``."""
        first = {}
        out = []
        for x, lab in enumerate(labels):
            out.append(first.setdefault(lab, x))
        return cls(tuple(out))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "EqRel":
        lab = [None] * n
        for i, block in enumerate(classes):
            for x in block:
                if not 0 <= x < n or lab[x] is not None:
                    raise PreconditionError(f"classes do not partition [0, {n})")
                lab[x] = i
        if any(v is None for v in lab):
            raise PreconditionError(f"classes do not cover [0, {n})")
        return cls.from_labels(lab)

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n)

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def num_classes(self) -> int:
        return sum(1 for x, c in enumerate(self.class_of) if x == c)

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.class_of)

    def is_discrete(self) -> bool:
        return all(x == c for x, c in enumerate(self.class_of))

    def classes(self) -> list:
        """Classes as sorted lists, ordered by canonical representative."""
        blocks = {}
        for x, c in enumerate(self.class_of):
            blocks.setdefault(c, []).append(x)
        return [blocks[c] for c in sorted(blocks)]

    def meet(self, other: "EqRel") -> "EqRel":
        """Intersection of the two relations (common refinement)."""
        _same_ground(self, other)
        return EqRel.from_labels(zip(self.class_of, other.class_of))

    def restrict(self, ys: Sequence[int]) -> "EqRel":
        """``self ∩ Y²`` relabelled onto ``[0, |Y|)`` in the order of ``ys``."""
        return EqRel.from_labels(self.class_of[y] for y in ys)

    def to_dict(self) -> dict:
        return {"n": self.n, "class_of": list(self.class_of)}

    @classmethod
    def from_dict(cls, obj) -> "EqRel":
        try:
            n = obj["n"]
            class_of = obj["class_of"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"EqRel needs keys 'n' and 'class_of': {exc}") from None
        return _eqrel_from_array(class_of, n)


def _eqrel_from_array(class_of, n=None) -> EqRel:
    if not isinstance(class_of, list) or any(
            not isinstance(c, int) or isinstance(c, bool) for c in class_of):
        raise SchemaError("class_of must be a list of integers")
    if n is not None and n != len(class_of):
        raise SchemaError(f"n={n} but class_of has {len(class_of)} entries")
    try:
        return EqRel(tuple(class_of))
    except PreconditionError as exc:
        raise SchemaError(str(exc)) from None


def _same_ground(a: EqRel, b: EqRel):
    if a.n != b.n:
        raise PreconditionError(f"mismatched ground sets ({a.n} vs {b.n})")


def eq_trivial(g) -> EqRel:
    n = _size(g)
    if n < 1:
        raise PreconditionError("empty ground")
    return EqRel((0,) * n)


def eq_discrete(g) -> EqRel:
    n = _size(g)
    if n < 1:
        raise PreconditionError("empty ground")
    return EqRel(tuple(range(n)))


def is_refinement(fine: EqRel, coarse: EqRel) -> bool:
    """True iff every ``fine``-class lies inside a single ``coarse``-class."""
    _same_ground(fine, coarse)
    cc = coarse.class_of
    # the representative of a fine class is its least element
    return all(cc[x] == cc[r] for x, r in enumerate(fine.class_of))


def classes(e: EqRel) -> list:
    return e.classes()


def classes_within(e_coarse: EqRel, cls: Iterable[int], e_fine: EqRel) -> list:
    """The ``e_fine``-classes contained in the ``e_coarse``-class ``cls``."""
    _same_ground(e_coarse, e_fine)
    members = sorted(set(cls))
    if not members:
        raise PreconditionError("cls is not a class of e_coarse: empty")
    rep = e_coarse.class_of[members[0]]
    full = [x for x, c in enumerate(e_coarse.class_of) if c == rep]
    if full != members:
        raise PreconditionError(f"cls is not a class of e_coarse: {members}")
    if not is_refinement(e_fine, e_coarse):
        raise PreconditionError("e_fine does not refine e_coarse")
    blocks = {}
    for x in members:
        blocks.setdefault(e_fine.class_of[x], []).append(x)
    return [blocks[c] for c in sorted(blocks)]


def enumerate_partitions(n: int) -> Iterator[EqRel]:
    """Every partition of ``[0, n)`` once, in restricted-growth-string order.

    Lazy: callers may stop early.  The restricted growth string ``a`` with
    ``a[0] = 0`` and ``a[i] <= max(a[:i]) + 1`` is mapped to its normal form.
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    a = [0] * n
    # m[i] = max(a[:i + 1])
    m = [0] * n
    while True:
        yield EqRel.from_labels(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def bell(n: int) -> int:
    """Bell numbers via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
