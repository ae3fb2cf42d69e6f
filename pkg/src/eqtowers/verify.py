"""Independent re-validation of extractor outputs.

Nothing here calls into ``hstructure``'s index-set/width code or the
extractors: relations are rebuilt as sets of blocks over ``Y`` and every
property is recomputed from scratch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass
class Verdict:
    ok: bool = True
    problems: list = field(default_factory=list)

    def fail(self, msg):
        self.ok = False
        self.problems.append(msg)

    def __bool__(self):
        return self.ok


def _blocks(class_of, ys):
    out = {}
    for y in ys:
        out.setdefault(class_of[y], set()).add(y)
    return frozenset(frozenset(b) for b in out.values())


def induced_profile(levels, ys):
    """``(index_set, width)`` of the tower ``levels`` restricted to ``ys``.

    ``levels`` is a list of ``class_of`` arrays; level ``h`` is discrete.
    Width is ``None`` when the index set is empty.
    """
    ys = sorted(set(ys))
    h = len(levels)
    rels = [_blocks(lab, ys) for lab in levels]
    rels.append(frozenset(frozenset([y]) for y in ys))
    index = []
    for i in range(h):
        if all(len(b) == 1 for b in rels[i]):
            continue
        if max(j for j in range(h) if rels[j] == rels[i]) == i:
            index.append(i)
    width = None
    for i in index:
        for block in rels[i]:
            count = sum(1 for sub in rels[i + 1] if sub <= block)
            width = count if width is None else min(width, count)
    return tuple(index), width


def check_extraction(s, ys, *, index_set, w, values=None, constant=False,
                     injective=False, canonical_at=None) -> Verdict:
    """Re-check membership, the induced ``(I, w)`` certificate and the colour property."""
    v = Verdict()
    ys = list(ys)
    if not ys:
        v.fail("empty set")
        return v
    if len(set(ys)) != len(ys):
        v.fail("repeated elements")
    if any(not (0 <= y < s.n) for y in ys):
        v.fail("element outside the ground set")
        return v
    levels = [e.class_of for e in s.levels]
    got_index, got_width = induced_profile(levels, ys)
    if tuple(sorted(index_set)) != got_index:
        v.fail(f"induced index set {got_index} != {tuple(sorted(index_set))}")
    if got_width is None or got_width < w:
        v.fail(f"induced width {got_width} < {w}")
    if values is not None:
        seen = [values[y] for y in ys]
        if constant and len(set(seen)) != 1:
            v.fail("colouring not constant on Y")
        if injective and len(set(seen)) != len(seen):
            v.fail("colouring not one-to-one on Y")
        if canonical_at is not None:
            lab = levels[canonical_at] if canonical_at < len(levels) else list(range(s.n))
            for x, y in itertools.combinations(ys, 2):
                if (values[x] == values[y]) != (lab[x] == lab[y]):
                    v.fail(f"not {canonical_at}-canonical at pair ({x}, {y})")
                    break
    return v
