"""Command-line front end.

Exit codes: 0 success, 1 precondition violation, 2 best-effort extraction
found no witness, 3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__, SCHEMA_VERSION
from .canonical import c_bound, c_closed_bound, c_exact, canonicalize
from .errors import NoWitnessFound, PreconditionError, SchemaError, Unresolved
from .extraction import (
    canonical_k_extract,
    dichotomy_extract,
    injective_extract,
    mono_extract,
    normalize_mode,
)
from .gadgets import collapse_generator, median_tail_split
from .hstructure import (
    Coloring,
    HStructure,
    basic,
    exact_shape,
    induce,
    special_index_set,
    special_width,
    tight_cert,
)
from .lattice import (
    FiniteLattice,
    Representation,
    boolean,
    chain,
    is_isomorphic,
    is_ncpp,
    is_representation,
    linear_sum,
    search_ncpp,
)
from .verify import check_extraction

EXIT_OK, EXIT_PRECONDITION, EXIT_NO_WITNESS, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path, parse=None):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if parse is None:
        return obj
    try:
        return parse(obj)
    except SchemaError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text, out_path=None):
    if out_path:
        try:
            with open(out_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"{out_path}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


def _dumps(obj):
    return json.dumps(obj) + "\n"


# -- subcommands --------------------------------------------------------------

def cmd_gen(args):
    if args.what == "basic":
        s = basic(args.h, cap=args.cap)
    else:
        s = exact_shape(args.branching)
    _emit(_dumps(s.to_dict()), args.output)


def cmd_check(args):
    s = _load(args.input, HStructure.from_dict)
    index = special_index_set(s)
    width = special_width(s)
    out = {"h": s.h, "n": s.n, "index_set": list(index),
           "width": None if not index else width}
    if index:
        need = width ** len(index)
        out["size_bound"] = {"w^|I|": need, "n": s.n, "holds": s.n >= need}
    _emit(_dumps(out))


def _induced_dict(s, ys):
    return induce(s, ys)[0].to_dict()


def cmd_extract(args):
    s = _load(args.input, HStructure.from_dict)
    f = _load(args.coloring, Coloring.from_dict)
    if f.n != s.n:
        raise PreconditionError(f"coloring has {f.n} values for {s.n} elements")
    mode = normalize_mode(args.mode)
    cert = tight_cert(s)
    w = args.w
    out = {"kind": args.kind, "mode": mode.replace("_", "-"),
           "I": list(cert.index_set), "width": cert.width}
    vals = f.values
    if args.kind == "mono":
        c = args.c if args.c is not None else max(vals) + 1
        ys, d = mono_extract(s, cert, f, c, w, mode)
        out.update(Y=list(ys), value=d)
        ok = check_extraction(s, ys, index_set=cert.index_set, w=w, values=vals, constant=True)
    elif args.kind == "inj":
        ys = injective_extract(s, cert, f, w, mode)
        out.update(Y=list(ys))
        ok = check_extraction(s, ys, index_set=cert.index_set, w=w, values=vals, injective=True)
    elif args.kind == "canon-k":
        if args.k is None:
            raise PreconditionError("canon-k needs --k")
        ys = canonical_k_extract(s, cert, args.k, f, w, mode)
        out.update(Y=list(ys), index=args.k + 1)
        ok = check_extraction(s, ys, index_set=cert.index_set, w=w, values=vals,
                              canonical_at=args.k + 1)
    elif args.kind == "canon":
        ys, i = canonicalize(s, cert, f, w, mode)
        out.update(Y=list(ys), index=i)
        ok = check_extraction(s, ys, index_set=cert.index_set, w=w, values=vals, canonical_at=i)
    else:
        res = dichotomy_extract(s, cert, f, w, mode)
        out["j"] = res.j
        ok = True
        if res.Y is not None:
            out["Y"] = list(res.Y)
            out["induced_Y"] = _induced_dict(s, res.Y)
            ok = ok and bool(check_extraction(
                s, res.Y, index_set=[i for i in cert.index_set if i >= res.j], w=w,
                values=vals, constant=True))
        if res.Z is not None:
            out["Z"] = list(res.Z)
            out["induced_Z"] = _induced_dict(s, res.Z)
            ok = ok and bool(check_extraction(
                s, res.Z, index_set=[i for i in cert.index_set if i < res.j], w=w,
                values=vals, injective=True))
        out["verified"] = bool(ok)
        _emit(_dumps(out), args.output)
        return
    out["induced"] = _induced_dict(s, out["Y"])
    out["verified"] = bool(ok)
    _emit(_dumps(out), args.output)


def exact_feasible(h, w):
    return (h == 1 and w <= 6) or (h == 2 and w == 2)


def bounds_table(h_max, w_max, exact=False):
    rows = []
    for h in range(1, h_max + 1):
        for w in range(2, w_max + 1):
            ex = None
            if exact and exact_feasible(h, w):
                ex = c_exact(h, w)
                if ex is Unresolved.EXCEEDS_CAP:
                    ex = None
            rows.append({"h": h, "w": w, "c_bound": c_bound(h, w),
                         "c_closed_bound": c_closed_bound(h, w), "c_exact": ex})
    return rows


def cmd_bounds(args):
    if args.h_max < 1 or args.w_max < 2:
        raise PreconditionError("need --h-max >= 1 and --w-max >= 2")
    rows = bounds_table(args.h_max, args.w_max, args.exact)
    if args.format == "json":
        # big integers are emitted as decimal strings so no reader rounds them
        for r in rows:
            r["c_bound"] = str(r["c_bound"])
            r["c_closed_bound"] = str(r["c_closed_bound"])
        _emit(_dumps(rows))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["h", "w", "c_bound", "c_closed_bound", "c_exact"])
    for r in rows:
        writer.writerow([r["h"], r["w"], r["c_bound"], r["c_closed_bound"],
                         "" if r["c_exact"] is None else r["c_exact"]])
    _emit(buf.getvalue())


def cmd_lattice(args):
    op = args.op
    if op == "chain":
        _emit(_dumps(chain(args.n).to_dict()))
    elif op == "boolean":
        _emit(_dumps(boolean(args.atoms).to_dict()))
    elif op == "sum":
        a = _load(args.a, FiniteLattice.from_dict)
        b = _load(args.b, FiniteLattice.from_dict)
        _emit(_dumps(linear_sum(a, b).to_dict()))
    elif op == "iso":
        a = _load(args.a, FiniteLattice.from_dict)
        b = _load(args.b, FiniteLattice.from_dict)
        _emit(f"isomorphic: {'true' if is_isomorphic(a, b) else 'false'}\n")
    elif op == "rep-check":
        rep = _load(args.rep, Representation.from_dict)
        res = is_representation(rep)
        _emit(_dumps({"ok": res.ok, "condition": res.condition,
                      "elements": list(res.elements)}))
    elif op == "cpp":
        rep = _load(args.rep, Representation.from_dict)
        _emit(_dumps({"n": args.n, "cpp": is_ncpp(rep, args.n)}))
    elif op == "cpp-search":
        lat = _load(args.lattice, FiniteLattice.from_dict)
        res = search_ncpp(lat, args.n, args.max_ground)
        if res is Unresolved.NONE_UP_TO_BOUND:
            _emit(_dumps({"result": str(res), "n": args.n, "max_ground": args.max_ground}))
        else:
            _emit(_dumps({"result": "found", "n": args.n, "representation": res.to_dict()}))


def _int_array(obj, path):
    if not isinstance(obj, list) or any(
            not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in obj):
        raise InputError(f"{path}: expected a JSON array of nonnegative integers")
    return obj


def cmd_gadget(args):
    arr = _int_array(_load(args.input), args.input)
    if args.op == "collapse":
        if not arr:
            raise PreconditionError("collapse needs a nonempty array")
        t, t1, t2 = collapse_generator(arr)
        out = {"t": t, "t1": [[k, v] for k, v in t1.items()],
               "t2": [[k, v] for k, v in t2.items()]}
    else:
        d, ys = median_tail_split(arr)
        out = {"d": d, "Y": ys}
    _emit(_dumps(out))


def build_parser():
    p = argparse.ArgumentParser(prog="eqtowers", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"eqtowers {__version__} (schema {SCHEMA_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an h-structure")
    gsub = g.add_subparsers(dest="what", required=True)
    gb = gsub.add_parser("basic")
    gb.add_argument("--h", type=int, required=True)
    gb.add_argument("--cap", type=int, default=5)
    gb.add_argument("-o", "--output")
    gs = gsub.add_parser("shape", help="exact-shape tower with the given branching per level")
    gs.add_argument("--branching", type=int, nargs="+", required=True)
    gs.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="index set, width and size bound of a structure")
    c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extract", help="run an extractor")
    e.add_argument("kind", choices=["mono", "inj", "canon-k", "canon", "dichotomy"])
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--coloring", required=True)
    e.add_argument("--w", type=int, required=True)
    e.add_argument("--mode", default="guaranteed", choices=["guaranteed", "best-effort"])
    e.add_argument("--c", type=int, help="number of colours for mono (default: max+1)")
    e.add_argument("--k", type=int, help="level for canon-k")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_extract)

    b = sub.add_parser("bounds", help="table of bounds on C_h(w)")
    b.add_argument("--h-max", type=int, required=True)
    b.add_argument("--w-max", type=int, required=True)
    b.add_argument("--exact", action="store_true")
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.set_defaults(func=cmd_bounds)

    lat = sub.add_parser("lattice", help="finite lattices and representations")
    lsub = lat.add_subparsers(dest="op", required=True)
    x = lsub.add_parser("chain")
    x.add_argument("--n", type=int, required=True)
    x = lsub.add_parser("boolean")
    x.add_argument("--atoms", type=int, required=True)
    for name in ("sum", "iso"):
        x = lsub.add_parser(name)
        x.add_argument("--a", required=True)
        x.add_argument("--b", required=True)
    x = lsub.add_parser("rep-check")
    x.add_argument("--rep", required=True)
    x = lsub.add_parser("cpp")
    x.add_argument("--rep", required=True)
    x.add_argument("--n", type=int, required=True)
    x = lsub.add_parser("cpp-search")
    x.add_argument("--lattice", required=True)
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--max-ground", type=int, required=True)
    lat.set_defaults(func=cmd_lattice)

    gd = sub.add_parser("gadget", help="collapse / median gadgets on JSON arrays")
    gd.add_argument("op", choices=["collapse", "median"])
    gd.add_argument("--in", dest="input", required=True)
    gd.set_defaults(func=cmd_gadget)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NoWitnessFound as exc:
        print(f"no witness found: {exc}", file=sys.stderr)
        return EXIT_NO_WITNESS
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
