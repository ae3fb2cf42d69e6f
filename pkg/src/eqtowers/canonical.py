"""Canonical colourings, the canonicalization recursion and its bound ledger.

``f`` is *i-canonical* on a tower when ``f(x) = f(y)`` exactly for the pairs
related by ``E_i`` (``E_h`` discrete, so ``h``-canonical means one-to-one).
"""

from __future__ import annotations

import math
from typing import Optional

from .eqrel import EqRel
from .errors import NoWitnessFound, PreconditionError, Unresolved
from .extraction import (
    GUARANTEED,
    _canonical_k_core,
    _pick_constant,
    _pick_constant_or_injective,
    normalize_mode,
)
from .hstructure import (
    HStructure,
    SpecialCert,
    as_values,
    children,
    compress_levels,
    exact_shape,
    induce,
    require_special,
    shrink,
    special_index_set,
)


def canonicity_index(s: HStructure, f) -> Optional[int]:
    """Largest ``i <= h`` for which ``f`` is ``i``-canonical, or ``None``."""
    pattern = EqRel.from_labels(as_values(f, s.n))
    found = None
    for i in range(s.h + 1):
        if s.level(i) == pattern:
            found = i
    return found


def c_bound(h: int, w: int) -> int:
    """Upper bound on ``C_h(w)`` from the recursion ``C_1(w) <= w²``, ``C_{h+1}(w) <= C_h((h+1)w^{h+1})``."""
    if h < 1:
        raise PreconditionError(f"h must be >= 1, got {h}")
    if w < 0:
        raise PreconditionError(f"w must be >= 0, got {w}")
    if w <= 1:
        return w
    while h > 1:
        h -= 1
        w = (h + 1) * w ** (h + 1)
    return w * w


def c_closed_bound(h: int, w: int) -> int:
    """``(h!·w)^(2·h!)``."""
    if h < 1 or w < 2:
        raise PreconditionError(f"need h >= 1 and w >= 2, got h={h}, w={w}")
    hf = math.factorial(h)
    return (hf * w) ** (2 * hf)


def canonicalize(s: HStructure, cert, f, w: int, mode: str = GUARANTEED):
    """``(Y, i)``: ``Y`` induces an ``(I, w)``-special substructure, ``f`` is ``i``-canonical on it.

    Guaranteed mode follows the induction exactly: children of a node with
    ``m`` levels below it are canonicalized at width ``m·t^m``, ``php1`` aligns
    ``t^m`` of them on a common index, and then either ``php2`` (children all
    constant) or the level-canonical extractor finishes.  Best-effort mode
    keeps every survivor at each step and asks for width ``w`` throughout.
    The answer is always trimmed to the least ``(I, w)`` shape.
    """
    mode = normalize_mode(mode)
    cert = require_special(s, cert)
    vals = as_values(f, s.n)
    if w < 2:
        raise PreconditionError("w must be >= 2")
    index = cert.index_set
    if mode == GUARANTEED:
        need = c_bound(len(index), w)
        if cert.width < need:
            raise PreconditionError(
                f"width {cert.width} below the guaranteed threshold C={need}")
    if cert.width < w:
        raise NoWitnessFound(f"width {cert.width} is below the target {w}")
    if len(set(vals)) == 1:
        ys = shrink(s, cert, index, w)
        sub, _ = induce(s, ys)
        return ys, canonicity_index(sub, [vals[y] for y in ys])

    comp, _ = compress_levels(s, index)
    ys, _ = _canonicalize_rec(comp, vals, w, mode == GUARANTEED)
    sub, mapping = induce(s, ys)
    trimmed = shrink(sub, SpecialCert(index, w), index, w)
    ys = tuple(mapping[y] for y in trimmed)
    sub, _ = induce(s, ys)
    i = canonicity_index(sub, [vals[y] for y in ys])
    if i is None:
        raise AssertionError("canonicalize produced a non-canonical set")
    return ys, i


def _canonicalize_rec(comp, vals, w, guaranteed):
    k = comp.h

    def rec(members, depth, target):
        m = k - depth
        if m == 1:
            hit = _pick_constant_or_injective(
                [vals[x] for x in members], target, take_all=not guaranteed)
            if hit is None:
                raise NoWitnessFound(f"no constant or one-to-one {target}-set at level {depth}")
            pos, kind = hit
            return [members[p] for p in pos], depth if kind == "constant" else k

        inner = m * target ** m if guaranteed else target
        results = []
        for kid in children(comp, depth, members):
            try:
                results.append(rec(kid, depth + 1, inner))
            except NoWitnessFound:
                if guaranteed:
                    raise
        if guaranteed:
            hit = _pick_constant([j for _, j in results], target ** m)
            if hit is None:
                raise NoWitnessFound(f"no common index among {target ** m} children")
            return finish(results, hit[0], hit[1], depth, target)
        by_index = {}
        for pos, (_, j) in enumerate(results):
            by_index.setdefault(j, []).append(pos)
        for j in sorted(by_index, key=lambda j: (-len(by_index[j]), j)):
            if len(by_index[j]) < target:
                break
            try:
                return finish(results, by_index[j], j, depth, target)
            except NoWitnessFound:
                continue
        raise NoWitnessFound(f"no child index class survives at level {depth}")

    def finish(results, chosen, j, depth, target):
        if j == depth + 1:
            g = [vals[results[p][0][0]] for p in chosen]
            hit = _pick_constant_or_injective(g, target, take_all=not guaranteed)
            if hit is None:
                raise NoWitnessFound(f"class values neither constant nor distinct at level {depth}")
            pos, kind = hit
            ys = [x for p in pos for x in results[chosen[p]][0]]
            return sorted(ys), depth if kind == "constant" else depth + 1
        zs = sorted(x for p in chosen for x in results[p][0])
        sub, mapping = induce(comp, zs)
        picked = _canonical_k_core(sub, special_index_set(sub), j - 1,
                                   [vals[x] for x in mapping], target, trim=guaranteed)
        return [mapping[y] for y in picked], j

    return rec(list(range(comp.n)), 0, w)


# -- brute-force oracle for C_h(w) --------------------------------------------

def _common_prefix(p, q, w, h):
    """Number of leading base-``w`` digits (out of ``h``) shared by ``p`` and ``q``."""
    k = 0
    for i in range(h - 1, -1, -1):
        if p // w ** i != q // w ** i:
            break
        k += 1
    return k


def _agreement(s: HStructure):
    """``agree[x][y]``: the largest ``i <= h`` with ``x E_i y``."""
    labs = [e.class_of for e in s.levels] + [tuple(range(s.n))]
    return [[max(i for i in range(s.h + 1) if labs[i][x] == labs[i][y])
             for y in range(s.n)] for x in range(s.n)]


def find_counterexample(h: int, v: int, w: int):
    """A colouring of the exact ``(h, v)`` shape with no canonical ``(h, w)`` subset.

    Colourings are set partitions (restricted growth strings), built left to
    right and abandoned as soon as the prefix contains a canonical subset.
    Permuting the elements of one deepest class is an automorphism, so only
    strings that are nondecreasing inside each deepest class are visited.

    Listed in increasing order, an ``(h, w)`` subset is exactly a sequence
    whose ``p``-th and ``q``-th entries agree down to the common base-``w``
    prefix length of ``p`` and ``q``; being ``L``-canonical then fixes which
    pairs share a colour.  The subset search backtracks over that sequence.
    Returns the colouring or ``None``.
    """
    s = exact_shape([v] * h)
    n = s.n
    size = w ** h
    leaf = s.levels[h - 1].class_of
    agree = _agreement(s)
    lcp = [[_common_prefix(p, q, w, h) for q in range(size)] for p in range(size)]
    color = [0] * n

    def fits(y, pos, ys, level):
        for q, z in ys:
            if agree[y][z] != lcp[pos][q]:
                return False
            if (color[y] == color[z]) != (lcp[pos][q] >= level):
                return False
        return True

    def canonical_ending_at(x, level):
        # the last entry is x; the others are placed in increasing order below it
        placed = [(size - 1, x)]

        def place(pos, lo):
            if pos == size - 1:
                return True
            for y in range(lo, x):
                if fits(y, pos, placed, level):
                    placed.append((pos, y))
                    if place(pos + 1, y + 1):
                        return True
                    placed.pop()
            return False

        return place(0, 0)

    def bad_at(x):
        if x < size - 1:
            return False
        return any(canonical_ending_at(x, level) for level in range(h + 1))

    def dfs(x, top):
        if x == n:
            return True
        lo = color[x - 1] if x > 0 and leaf[x] == leaf[x - 1] else 0
        for c in range(lo, top + 2):
            color[x] = c
            if bad_at(x):
                continue
            if dfs(x + 1, max(top, c)):
                return True
        return False

    return tuple(color) if dfs(0, -1) else None


def c_exact(h: int, w: int, cap: Optional[int] = None):
    """Least ``v`` such that every colouring of the exact ``(h, v)`` shape has a canonical ``(h, w)`` subset.

    Any ``(h, v')``-special structure with ``v' >= v`` contains the exact shape,
    and a counterexample restricts to the smaller shape, so scanning ``v``
    upward is exact.  Returns ``Unresolved.EXCEEDS_CAP`` past ``cap``
    (default: ``c_bound(h, w)``).
    """
    if h not in (1, 2):
        raise PreconditionError(f"c_exact is only feasible for h in {{1, 2}}, got {h}")
    if w < 2:
        raise PreconditionError(f"w must be >= 2, got {w}")
    if cap is None:
        cap = c_bound(h, w)
    for v in range(2, cap + 1):
        if find_counterexample(h, v, w) is None:
            return v
    return Unresolved.EXCEEDS_CAP
