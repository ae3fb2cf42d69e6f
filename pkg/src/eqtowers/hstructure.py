"""Towers of equivalence relations (h-structures) and their special certificates.

An h-structure is a nonempty ground set with relations ``E_0 ⊇ E_1 ⊇ … ⊇
E_{h-1}``, ``E_0`` trivial.  Level ``h`` is always read as the discrete
relation and is never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .eqrel import EqRel, GroundSet, eq_discrete, is_refinement
from .errors import PreconditionError, SchemaError

INFINITE_WIDTH = math.inf


@dataclass(frozen=True)
class SpecialCert:
    index_set: tuple
    width: int

    def __post_init__(self):
        object.__setattr__(self, "index_set", tuple(sorted(set(self.index_set))))
        if self.width < 2:
            raise PreconditionError(f"special width must be >= 2, got {self.width}")

    def to_dict(self):
        return {"I": list(self.index_set), "w": self.width}


@dataclass(frozen=True)
class Coloring:
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise PreconditionError(f"coloring values must be nonnegative ints, got {v!r}")

    @property
    def n(self):
        return len(self.values)

    @property
    def ground(self):
        return GroundSet(self.n)

    def __getitem__(self, x):
        return self.values[x]

    def __len__(self):
        return len(self.values)

    def to_dict(self):
        return {"n": self.n, "values": list(self.values)}

    @classmethod
    def from_dict(cls, obj):
        try:
            n, values = obj["n"], obj["values"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"coloring needs keys 'n' and 'values': {exc}") from None
        if not isinstance(values, list) or len(values) != n:
            raise SchemaError("coloring 'values' must be a list of length n")
        try:
            return cls(tuple(values))
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


def as_values(f, n: Optional[int] = None) -> tuple:
    vals = f.values if isinstance(f, Coloring) else tuple(f)
    if n is not None and len(vals) != n:
        raise PreconditionError(f"coloring has {len(vals)} values for a ground of size {n}")
    return vals


@dataclass(frozen=True)
class HStructure:
    ground: GroundSet
    levels: tuple

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise PreconditionError("an h-structure needs h >= 1")
        if self.ground.size < 1:
            raise PreconditionError("empty ground")
        for i, e in enumerate(levels):
            if not isinstance(e, EqRel) or e.n != self.ground.size:
                raise PreconditionError(f"level {i} is not a relation on the ground set")
        if not levels[0].is_trivial():
            raise PreconditionError("E_0 must be trivial")
        for i in range(len(levels) - 1):
            if not is_refinement(levels[i + 1], levels[i]):
                raise PreconditionError(f"E_{i + 1} does not refine E_{i}")

    @classmethod
    def from_levels(cls, levels: Sequence[EqRel], labels=None) -> "HStructure":
        n = levels[0].n if levels else 0
        return cls(GroundSet(n, labels), tuple(levels))

    @property
    def h(self) -> int:
        return len(self.levels)

    @property
    def n(self) -> int:
        return self.ground.size

    def level(self, i: int) -> EqRel:
        """``E_i`` for ``0 <= i <= h``; ``E_h`` is the discrete relation."""
        if i == self.h:
            return eq_discrete(self.n)
        return self.levels[i]

    def to_dict(self) -> dict:
        out = {"h": self.h, "n": self.n}
        if self.ground.labels is not None:
            out["labels"] = list(self.ground.labels)
        out["levels"] = [list(e.class_of) for e in self.levels]
        return out

    @classmethod
    def from_dict(cls, obj) -> "HStructure":
        try:
            h, n, raw = obj["h"], obj["n"], obj["levels"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"h-structure needs keys 'h', 'n', 'levels': {exc}") from None
        if not isinstance(raw, list) or len(raw) != h:
            raise SchemaError(f"expected {h} levels")
        from .eqrel import _eqrel_from_array
        levels = [_eqrel_from_array(arr, n) for arr in raw]
        try:
            return cls(GroundSet(n, obj.get("labels")), tuple(levels))
        except PreconditionError as exc:
            raise SchemaError(str(exc)) from None


def children(s: HStructure, depth: int, members: Sequence[int]) -> list:
    """Split ``members`` (inside one ``E_depth``-class) into ``E_{depth+1}``-classes.

    Groups come back sorted, ordered by least element.
    """
    if depth + 1 >= s.h:
        return [[x] for x in sorted(members)]
    lab = s.levels[depth + 1].class_of
    groups = {}
    for x in sorted(members):
        groups.setdefault(lab[x], []).append(x)
    return list(groups.values())


def basic(h: int, cap: int = 5) -> HStructure:
    """All functions ``h -> h``, related at level ``i`` when they agree below ``i``.

    Element ``x`` is the base-``h`` numeral whose ``j``-th most significant
    digit is ``f(j)``.
    """
    if h < 2:
        raise PreconditionError(f"basic structure needs h >= 2, got {h}")
    if h > cap:
        raise PreconditionError(f"h={h} exceeds cap {cap} (h^h elements)")
    n = h ** h
    levels = []
    for i in range(h):
        block = h ** (h - i)
        levels.append(EqRel(tuple(x - x % block for x in range(n))))
    labels = []
    for x in range(n):
        digits = []
        for _ in range(h):
            x, d = divmod(x, h)
            digits.append(str(d))
        labels.append("".join(reversed(digits)))
    return HStructure(GroundSet(n, tuple(labels)), tuple(levels))


def special_index_set(s: HStructure) -> tuple:
    out = []
    for i in range(s.h):
        if s.levels[i].is_discrete():
            continue
        last = max(j for j in range(s.h) if s.levels[j] == s.levels[i])
        if last == i:
            out.append(i)
    return tuple(out)


def _split_counts(s: HStructure, i: int) -> list:
    """Number of ``E_{i+1}``-classes inside each ``E_i``-class."""
    upper = s.levels[i].class_of
    lower = s.level(i + 1).class_of
    seen = {}
    for x in range(s.n):
        seen.setdefault(upper[x], set()).add(lower[x])
    return [len(v) for v in seen.values()]


def special_width(s: HStructure):
    """Least branching over the special levels; ``INFINITE_WIDTH`` if there are none."""
    index = special_index_set(s)
    if not index:
        return INFINITE_WIDTH
    return min(min(_split_counts(s, i)) for i in index)


def tight_cert(s: HStructure) -> SpecialCert:
    """The certificate ``(I, w)`` with ``I`` and ``w`` read off the structure."""
    index = special_index_set(s)
    width = special_width(s)
    if not index or width < 2:
        raise PreconditionError("structure carries no special certificate")
    return SpecialCert(index, width)


def is_special(s: HStructure, index_set: Iterable[int], w: int) -> bool:
    if w < 2:
        raise PreconditionError(f"special width must be >= 2, got {w}")
    index = tuple(sorted(set(index_set)))
    if not index:
        return False
    return index == special_index_set(s) and special_width(s) >= w


def _cert(cert) -> SpecialCert:
    if isinstance(cert, SpecialCert):
        return cert
    index, width = cert
    return SpecialCert(tuple(index), width)


def require_special(s: HStructure, cert) -> SpecialCert:
    cert = _cert(cert)
    if not cert.index_set:
        raise PreconditionError("certificate index set is empty")
    if not is_special(s, cert.index_set, cert.width):
        raise PreconditionError(
            f"structure is not ({set(cert.index_set)}, {cert.width})-special "
            f"(index set {set(special_index_set(s))}, width {special_width(s)})")
    return cert


def induce(s: HStructure, ys: Iterable[int]):
    """Substructure on ``Y``, relabelled to ``[0, |Y|)`` in ascending order.

    Returns ``(structure, mapping)`` with ``mapping[new] = old``.
    """
    mapping = tuple(sorted(set(ys)))
    if not mapping:
        raise PreconditionError("cannot induce on an empty set")
    if mapping[0] < 0 or mapping[-1] >= s.n:
        raise PreconditionError("Y is not a subset of the ground set")
    labels = None
    if s.ground.labels is not None:
        labels = tuple(s.ground.labels[y] for y in mapping)
    levels = tuple(e.restrict(mapping) for e in s.levels)
    return HStructure(GroundSet(len(mapping), labels), levels), mapping


def shrink(s: HStructure, cert, sub_index: Iterable[int], v: int) -> tuple:
    """A set ``Y`` of size ``v^{|I'|}`` inducing an ``(I', v)``-special substructure.

    Walks the class tree from the top.  Leaving level ``i``, a class keeps its
    ``v`` least children when ``i`` is in ``I'`` and only its least child
    otherwise.
    """
    cert = require_special(s, cert)
    sub = tuple(sorted(set(sub_index)))
    if not sub:
        raise PreconditionError("I' must be nonempty")
    if not set(sub) <= set(cert.index_set):
        raise PreconditionError(f"I'={set(sub)} is not a subset of I={set(cert.index_set)}")
    if not 2 <= v <= cert.width:
        raise PreconditionError(f"need 2 <= v <= {cert.width}, got v={v}")
    return _select_shape(s, set(sub), v)


def _select_shape(s: HStructure, branching: set, v: int) -> tuple:
    frontier = [list(range(s.n))]
    for depth in range(s.h):
        keep = v if depth in branching else 1
        nxt = []
        for cls in frontier:
            kids = children(s, depth, cls)
            if len(kids) < keep:
                raise PreconditionError(f"a class at level {depth} has fewer than {keep} children")
            nxt.extend(kids[:keep])
        frontier = nxt
    return tuple(sorted(x for cls in frontier for x in cls))


def extend(s: HStructure, cert, h2: int, index2: Iterable[int], w2: int) -> HStructure:
    """An ``(I', w')``-special ``h'``-structure whose first ``|X|`` ids carry ``s``.

    Fresh sibling subtrees are grafted at every node that branches too little,
    and every old element heads a fresh subtree for the levels ``>= h``.
    Fresh ids are assigned in depth-first order starting at ``|X|``.
    """
    cert = require_special(s, cert)
    index2 = set(index2)
    if h2 < s.h:
        raise PreconditionError(f"h'={h2} is below h={s.h}")
    if not set(cert.index_set) <= index2:
        raise PreconditionError("I' must contain I")
    if not index2 <= set(range(h2)):
        raise PreconditionError(f"I' must lie inside [0, {h2})")
    if w2 < cert.width:
        raise PreconditionError(f"w'={w2} is below w={cert.width}")

    paths = {}
    next_id = [s.n]
    node_id = [0]

    def grow(depth, members, path):
        nid = node_id[0]
        node_id[0] += 1
        path = path + (nid,)
        if depth == h2:
            if members:
                (x,) = members
            else:
                x = next_id[0]
                next_id[0] += 1
            paths[x] = path
            return
        if depth < s.h:
            groups = children(s, depth, members) if members else []
        else:
            groups = [members] if members else []
        want = w2 if depth in index2 else 1
        for g in groups:
            grow(depth + 1, g, path)
        for _ in range(max(want - len(groups), 0)):
            grow(depth + 1, [], path)

    grow(0, list(range(s.n)), ())
    n2 = next_id[0]
    levels = tuple(EqRel.from_labels(paths[x][i] for x in range(n2)) for i in range(h2))
    labels = None
    if s.ground.labels is not None:
        used = set(s.ground.labels)
        labels = list(s.ground.labels)
        for x in range(s.n, n2):
            lab = f"+{x}"
            while lab in used:
                lab = "+" + lab
            used.add(lab)
            labels.append(lab)
    return HStructure(GroundSet(n2, labels and tuple(labels)), levels)


def quotient(s: HStructure, k: int):
    """The structure on ``E_k``-classes; returns ``(structure, classes)``.

    ``F_i`` relates two classes when their members are ``E_i``-related.  For
    ``k = 0`` there is one class and the result is the one-point 1-structure.
    """
    if not 0 <= k < s.h:
        raise PreconditionError(f"level {k} out of range [0, {s.h})")
    blocks = s.level(k).classes()
    reps = [b[0] for b in blocks]
    if k == 0:
        levels = (EqRel((0,)),)
    else:
        levels = tuple(EqRel.from_labels(s.levels[i].class_of[r] for r in reps)
                       for i in range(k))
    return HStructure(GroundSet(len(blocks)), levels), blocks


def compress(s: HStructure, cert):
    """Keep only the special levels: returns ``(k-structure, level_map)``.

    ``level_map[j]`` is the original index of new level ``j``.
    """
    cert = _cert(cert)
    if not cert.index_set:
        raise PreconditionError("I must be nonempty")
    require_special(s, cert)
    return compress_levels(s, cert.index_set)


def compress_levels(s: HStructure, index_set: Sequence[int]):
    index = tuple(index_set)
    if index == tuple(range(s.h)):
        return s, index
    return HStructure(s.ground, tuple(s.levels[i] for i in index)), index


def exact_shape(branching: Sequence[int]) -> HStructure:
    """The tree structure with ``branching[i]`` children at every level-``i`` node."""
    n = 1
    for b in branching:
        n *= b
    levels = []
    block = n
    for b in branching:
        levels.append(EqRel(tuple(x - x % block for x in range(n))))
        block //= b
    return HStructure(GroundSet(n), tuple(levels))
