"""Two finite constructions on plain integer arrays."""

from __future__ import annotations

import bisect

from .errors import PreconditionError


def collapse_generator(t0):
    """Send each ``x`` to the first index carrying the same ``t0``-value.

    Returns ``(t, t1, t2)`` where ``t1[t[x]] == t0[x]`` and
    ``t2[t0[x]] == t[x]`` for every ``x``.
    """
    t0 = list(t0)
    first = {}
    t = []
    for x, v in enumerate(t0):
        # t(z) = z for a first occurrence, so t(x) = t(z) = z
        t.append(first.setdefault(v, x))
    t1 = {z: t0[z] for z in sorted(set(t))}
    t2 = {v: z for v, z in sorted(first.items())}
    return t, t1, t2


def median_tail_split(values):
    """Least ``d`` with ``|{f > d}| <= |{f <= d}|`` and ``Y = {x : f(x) >= d}``.

    ``values`` must be one-to-one and nonnegative.  Returns ``(d, Y)``.
    """
    vals = list(values)
    if not vals:
        raise PreconditionError("need at least one element")
    where = {}
    for x, v in enumerate(vals):
        if not isinstance(v, int) or v < 0:
            raise PreconditionError(f"value at {x} is not a nonnegative integer")
        if v in where:
            raise PreconditionError(f"not one-to-one: f({where[v]}) = f({x}) = {v}")
        where[v] = x
    n = len(vals)
    ordered = sorted(vals)
    # the counts only change at attained values, so the least d is 0 or one of them
    for d in [0] + ordered:
        below = bisect.bisect_right(ordered, d)
        if n - below <= below:
            break
    ys = [x for x, v in enumerate(vals) if v >= d]
    return d, ys
