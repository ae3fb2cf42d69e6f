"""Pigeonhole primitives and extractors for special h-structures.

Every extractor runs on the compressed tower (only the special levels kept),
so a certificate ``(I, w)`` behaves like ``([0, |I|), w)``.  The compressed
tower shares its ground set with the original, so element ids never need
translating back.

Two modes:

``guaranteed``
    the certificate width must meet the extractor's threshold; success is certain.
``best_effort``
    any certificate is accepted and the same algorithm is attempted; running
    out of room raises :class:`NoWitnessFound`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import NoWitnessFound, PreconditionError
from .hstructure import (
    SpecialCert,
    as_values,
    children,
    compress_levels,
    induce,
    quotient,
    require_special,
    shrink,
    special_index_set,
)

GUARANTEED = "guaranteed"
BEST_EFFORT = "best_effort"


def normalize_mode(mode: str) -> str:
    m = mode.replace("-", "_")
    if m not in (GUARANTEED, BEST_EFFORT):
        raise PreconditionError(f"unknown mode {mode!r}")
    return m


# -- pigeonhole ---------------------------------------------------------------

def _colors_by_count(vals):
    """Distinct values ordered by (count desc, value asc)."""
    counts = Counter(vals)
    return sorted(counts, key=lambda v: (-counts[v], v)), counts


def _pick_constant(vals, size, take_all=False):
    if not vals:
        return None
    order, counts = _colors_by_count(vals)
    color = order[0]
    if counts[color] < size:
        return None
    pos = [i for i, v in enumerate(vals) if v == color]
    return (pos if take_all else pos[:size]), color


def _pick_constant_or_injective(vals, size, take_all=False):
    hit = _pick_constant(vals, size, take_all)
    if hit is not None:
        return hit[0], "constant"
    first = {}
    for i, v in enumerate(vals):
        first.setdefault(v, i)
    reps = sorted(first.values())
    if len(reps) < size:
        return None
    return (reps if take_all else reps[:size]), "injective"


def php1(f, a: int, c: int):
    """``a+1`` positions on which ``f`` is constant, from ``c·a+1`` values below ``c``.

    The colour is the most frequent one (least value on ties); the positions
    are its ``a+1`` earliest occurrences.  Returns ``(A, colour)``.
    """
    vals = as_values(f)
    if c < 1 or a < 0:
        raise PreconditionError("php1 needs c >= 1 and a >= 0")
    if len(vals) < c * a + 1:
        raise PreconditionError(f"domain too small: {len(vals)} < c*a+1 = {c * a + 1}")
    for x, v in enumerate(vals):
        if not 0 <= v < c:
            raise PreconditionError(f"value out of range at {x}: {v} not in [0, {c})")
    pos, color = _pick_constant(vals, a + 1)
    return tuple(pos), color


def php2(f, a: int):
    """``a+1`` positions on which ``f`` is constant or one-to-one.

    Constant wins whenever some value occurs ``a+1`` times; otherwise the
    earliest occurrence of each value is used.  Returns ``(A, mode)``.
    """
    vals = as_values(f)
    if a < 0:
        raise PreconditionError("php2 needs a >= 0")
    if len(vals) < a * a + 1:
        raise PreconditionError(f"domain too small: {len(vals)} < a^2+1 = {a * a + 1}")
    pos, kind = _pick_constant_or_injective(vals, a + 1)
    return tuple(pos), kind


# -- precondition helpers -----------------------------------------------------

def _check_values_below(vals, c):
    for x, v in enumerate(vals):
        if v >= c:
            raise PreconditionError(f"value out of range at {x}: {v} >= c={c}")


def _classwise_injective_witness(s, level, vals):
    seen = {}
    lab = s.level(level).class_of
    for x, v in enumerate(vals):
        key = (lab[x], v)
        if key in seen:
            return seen[key], x
        seen[key] = x
    return None


def _need_width(cert, need, what):
    if cert.width < need:
        raise PreconditionError(
            f"width {cert.width} below the guaranteed threshold {need} for {what}")


# -- monochromatic ------------------------------------------------------------

def mono_extract(s, cert, f, c: int, w: int, mode: str = GUARANTEED):
    """``(Y, d)`` with ``f ≡ d`` on ``Y`` and ``Y`` inducing an ``(I, w)``-special substructure."""
    mode = normalize_mode(mode)
    cert = require_special(s, cert)
    vals = as_values(f, s.n)
    if c < 1 or w < 2:
        raise PreconditionError("mono_extract needs c >= 1 and w >= 2")
    _check_values_below(vals, c)
    if mode == GUARANTEED:
        _need_width(cert, c * w, "mono_extract (c*w)")
    comp, _ = compress_levels(s, cert.index_set)
    k = comp.h

    def rec(members, depth):
        kids = children(comp, depth, members)
        if depth == k - 1:
            hit = _pick_constant([vals[kid[0]] for kid in kids], w)
            if hit is None:
                raise NoWitnessFound(f"no colour class of size {w} at level {depth}")
            pos, d = hit
            return [kids[p][0] for p in pos], d
        sub = [rec(kid, depth + 1) for kid in kids]
        hit = _pick_constant([d for _, d in sub], w)
        if hit is None:
            raise NoWitnessFound(f"fewer than {w} children share a colour at level {depth}")
        pos, d = hit
        return [x for p in pos for x in sub[p][0]], d

    ys, d = rec(list(range(s.n)), 0)
    return tuple(sorted(ys)), d


# -- one-to-one ---------------------------------------------------------------

def injective_extract(s, cert, f, w: int, mode: str = GUARANTEED):
    """``Y`` inducing an ``(I, w)``-special substructure with ``f`` one-to-one on it.

    ``f`` must already be one-to-one on each ``E_k``-class, ``k = max(I)``.
    """
    mode = normalize_mode(mode)
    cert = require_special(s, cert)
    vals = as_values(f, s.n)
    if w < 2:
        raise PreconditionError("w must be >= 2")
    k = max(cert.index_set)
    bad = _classwise_injective_witness(s, k, vals)
    if bad is not None:
        raise PreconditionError(
            f"f is not one-to-one on the E_{k}-class of {bad[0]}: f({bad[0]}) = f({bad[1]})")
    if mode == GUARANTEED:
        _need_width(cert, w ** (k + 1), "injective_extract (w^(k+1))")
    return _injective_core(s, cert.index_set, vals, w, trim=mode == GUARANTEED)


def _injective_core(s, index, vals, w, trim):
    comp, _ = compress_levels(s, index)
    k = comp.h
    frontier = [list(range(s.n))]
    for depth in range(k - 1):
        nxt = []
        for cls in frontier:
            kids = children(comp, depth, cls)
            if len(kids) < w:
                raise NoWitnessFound(f"a class at level {depth} has fewer than {w} children")
            nxt.extend(kids[:w])
        frontier = nxt
    used = set()
    ys = []
    for cls in sorted(frontier, key=lambda c: c[0]):
        pool = cls[: w ** k] if trim else cls
        picked = []
        for x in pool:
            if vals[x] in used:
                continue
            used.add(vals[x])
            picked.append(x)
            if len(picked) == w:
                break
        if len(picked) < w:
            raise NoWitnessFound(f"class of {cls[0]} has fewer than {w} unused values")
        ys.extend(picked)
    return tuple(sorted(ys))


# -- canonical at a given level -----------------------------------------------

def canonical_k_extract(s, cert, k: int, f, w: int, mode: str = GUARANTEED):
    """``Y`` inducing an ``(I, w)``-special substructure on which ``f`` is ``(k+1)``-canonical.

    ``f`` must be constant on every ``E_{k+1}``-class and separate the
    ``E_{k+1}``-classes inside each ``E_k``-class.  The classes of
    ``E_{k+1}`` are collapsed to points and the one-to-one extractor runs on
    the quotient.
    """
    mode = normalize_mode(mode)
    cert = require_special(s, cert)
    vals = as_values(f, s.n)
    if k not in cert.index_set:
        raise PreconditionError(f"k={k} is not in I={set(cert.index_set)}")
    if w < 2:
        raise PreconditionError("w must be >= 2")
    finer = s.level(k + 1).class_of
    for x in range(s.n):
        r = finer[x]
        if vals[x] != vals[r]:
            raise PreconditionError(
                f"f is not constant on the E_{k + 1}-class of {r}: f({r}) != f({x})")
    coarse = s.level(k).class_of
    owner = {}
    for x in range(s.n):
        y = owner.setdefault((coarse[x], vals[x]), x)
        if finer[y] != finer[x]:
            raise PreconditionError(
                f"distinct E_{k + 1}-classes of {y} and {x} in one E_{k}-class "
                f"share the value {vals[x]}")
    if mode == GUARANTEED:
        _need_width(cert, w ** (k + 1), "canonical_k_extract (w^(k+1))")
    return _canonical_k_core(s, cert.index_set, k, vals, w, trim=mode == GUARANTEED)


def _canonical_k_core(s, index, k, vals, w, trim):
    if k == max(index):
        return _injective_core(s, index, vals, w, trim)
    q, blocks = quotient(s, k + 1)
    g = [vals[b[0]] for b in blocks]
    picked = _injective_core(q, special_index_set(q), g, w, trim)
    return tuple(sorted(x for a in picked for x in blocks[a]))


# -- the constant / one-to-one dichotomy --------------------------------------

@dataclass(frozen=True)
class Dichotomy:
    j: int
    Y: Optional[tuple] = None
    Z: Optional[tuple] = None
    canonical_index: Optional[int] = None


def dichotomy_extract(s, cert, f, w: int, mode: str = GUARANTEED) -> Dichotomy:
    """Find ``j ∈ I`` with a constant ``Y`` below ``j`` and a one-to-one ``Z`` above it.

    ``Y`` (present when ``j != max(I)``) induces an ``(I ∩ [j, h), w)``-special
    substructure; ``Z`` (present when ``j != min(I)``) an ``(I ∩ [0, j), w)``-special one.
    """
    from .canonical import c_closed_bound, canonicalize

    mode = normalize_mode(mode)
    cert = require_special(s, cert)
    as_values(f, s.n)
    index = cert.index_set
    k = len(index)
    if w < 2:
        raise PreconditionError("w must be >= 2")
    if mode == GUARANTEED:
        _need_width(cert, c_closed_bound(k, w), "dichotomy_extract ((k!w)^(2k!))")
    if k == 1:
        return Dichotomy(index[0])
    base, jc = canonicalize(s, cert, f, w, mode)
    sub, mapping = induce(s, base)
    sub_cert = SpecialCert(index, w)

    def part(levels):
        ys = shrink(sub, sub_cert, levels, w)
        return tuple(mapping[y] for y in ys)

    if jc == s.h:
        j = index[-1]
        return Dichotomy(j, None, part([i for i in index if i < j]), jc)
    j = jc
    ys = part([i for i in index if i >= j]) if j != index[-1] else None
    zs = part([i for i in index if i < j]) if j != index[0] else None
    return Dichotomy(j, ys, zs, jc)
