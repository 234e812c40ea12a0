"""Command-line front end (``diffuse-lab``).

Every subcommand prints one JSON document with sorted keys and a
``"schema": "diffuse-lab/1"`` tag.  Exit codes: 0 success (or a ravel was
found / a certificate passed), 1 negative outcome (no ravel, FAIL verdict),
2 error.  Wall-clock fields are dropped unless ``--timing`` is given, so two
runs with the same arguments produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import crystal, hyp, linrep, ravel, weeks
from .qfield import FieldError, NFElem

SCHEMA = "diffuse-lab/1"


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _resolve(name: str) -> Path:
    """A path, or the stem of a bundled data file (``weeks``, ``promislow``, ``z2``...)."""
    p = Path(name)
    if p.exists():
        return p
    data = resources.files("diffuse_lab").joinpath("data")
    for cand in (name, f"{name}.json", f"group_{name}.json"):
        q = data.joinpath(cand)
        if q.is_file():
            return Path(str(q))
    raise CliError("io", f"no such file or bundled data: {name}")


def _load_json(name: str):
    path = _resolve(name)
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliError("malformed-json", f"{path}: {exc}") from None


def _groupdef(name: str) -> linrep.GroupDef:
    data = _load_json(name)
    try:
        return linrep.GroupDef.from_json(data)
    except (KeyError, TypeError) as exc:
        raise CliError("malformed-input", f"bad group definition: {exc!r}") from None


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _emit(doc: dict, args) -> None:
    doc = {"schema": SCHEMA, **doc}
    if not getattr(args, "timing", False):
        doc = _strip_timing(doc)
    text = json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _order(value):
    if value in (None, "canonical", "declared"):
        return None
    if value == "reversed":
        return "reversed"
    try:
        return int(value)
    except ValueError:
        raise CliError("bad-argument", f"unknown order {value!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_ball(args) -> int:
    g = _groupdef(args.group)
    B = linrep.ball(g, args.radius, max_size=args.max_ball)
    _emit({"command": "ball", "radius": args.radius, "size": len(B),
           "spheres": [len(s) for s in B.spheres], "elements": B.to_json()}, args)
    return 0


def cmd_ravel(args) -> int:
    g = _groupdef(args.group)
    B = linrep.ball(g, args.radius, max_size=args.max_ball)
    A = ravel.ElementSet.from_ball(B)
    R = ravel.find_ravel(A, threads=args.threads)
    doc = {"command": "ravel", "radius": args.radius, "ball": len(B), "ravel_size": len(R),
           "ravel": sorted((e.word for e in R), key=lambda s: (len(s), s)),
           "kernel": ravel.KERNEL}
    if len(R) and args.minimal:
        m = ravel.min_ravel(R, order=_order(args.order), threads=args.threads)
        doc["min_ravel_size"] = len(m)
        doc["min_ravel"] = sorted((e.word for e in m), key=lambda s: (len(s), s))
    _emit(doc, args)
    return 0 if len(R) else 1


def _traces(name: str, field) -> tuple[list, float | None]:
    data = _load_json(name)
    cutoff = None
    if isinstance(data, dict):
        cutoff = data.get("cutoff")
        data = data["traces"]
    return [NFElem.from_json(field, t) for t in data], cutoff


def cmd_certify(args) -> int:
    g = _groupdef(args.group)
    traces, cutoff = (None, None)
    if args.traces:
        traces, cutoff = _traces(args.traces, g.field)
    if args.trace_cutoff is not None:
        cutoff = args.trace_cutoff
    kw = {"trace_cutoff": cutoff} if cutoff is not None else {}
    rep = hyp.certify_ball(g, args.radius, systole_traces=traces, place=args.place,
                           max_size=args.max_ball, **kw)
    _emit({"command": "certify", **rep}, args)
    return 0 if rep["verdict"].startswith("PASS") else 1


def cmd_crystal(args) -> int:
    data = _load_json(args.group)
    if args.action == "holonomy" and ("table" in data or "permutations" in data):
        G = crystal.FiniteGroup.from_json(data)
        source = "finite-group"
    else:
        try:
            cg = crystal.CrystGroup.from_json(data)
        except (KeyError, TypeError) as exc:
            raise CliError("malformed-input", f"bad crystallographic group: {exc!r}") from None
        G = cg.holonomy() if args.action == "holonomy" else None
        source = "crystallographic-group"
    if args.action == "betti":
        _emit({"command": "crystal betti", "betti1": crystal.betti1(cg), "dim": cg.dim,
               "point_group_order": len(cg.point_group),
               "torsion_free": cg.is_torsion_free()}, args)
        return 0
    if args.action == "holonomy":
        import warnings
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            cls = crystal.holonomy_class(G)
        primes = sorted(crystal._prime_factors(G.order))
        doc = {"command": "crystal holonomy", "source": source, "order": G.order,
               "solvable": crystal.is_solvable(G),
               "sylow_cyclic": {str(p): crystal.sylow_cyclic(G, p) for p in primes},
               "class": cls}
        if caught:
            doc["flag"] = "trivial-group"
        _emit(doc, args)
        return 0
    point = [crystal._frac(x) for x in args.point.split(",")] if args.point else None
    res = crystal.construct_ravel(cg, e=point, r0=args.r0, r_max=args.r_max, threads=args.threads)
    _emit({"command": "crystal ravel", "radius": str(res.radius), "ball": res.ball_size,
           "ravel_size": len(res.ravel), "ravel": res.ravel.to_json(),
           "attempts": [{"radius": r, "ball": b, "ravel": k} for r, b, k in res.attempts],
           "betti1": crystal.betti1(cg)}, args)
    return 0


def cmd_weeks(args) -> int:
    if args.action == "ravel":
        rep = weeks.weeks_pipeline(args.radius, minimal=args.minimal, threads=args.threads,
                                   order=_order(args.order), max_size=args.max_ball)
        rep["command"] = "weeks ravel"
        _emit(rep, args)
        return 0 if rep["ravel_size"] else 1
    G = weeks.build_appendix_group()
    if args.action == "verify":
        rel = weeks.verify_relators(G)
        lev = weeks.verify_level(G, seed=args.seed)
        ok = rel["all_pass"] and lev["all_pass"]
        _emit({"command": "weeks verify", "relators": rel, "level": lev,
               "verdict": "pass" if ok else "fail"}, args)
        return 0 if ok else 1
    if args.action == "systole":
        rep = weeks.systole_enumeration(G).to_json()
        if args.radius:
            rep["certificate"] = weeks.certify_appendix(args.radius, G)
        _emit({"command": "weeks systole", **rep}, args)
        return 0
    tree = weeks.load_case_tree(str(_resolve(args.tree)) if args.tree else None)
    cert = weeks.verify_orderability_tree(tree, G)
    _emit({"command": "weeks orderability", **cert.to_json()}, args)
    return 0 if cert.verdict == "pass" else 1


# ---------------------------------------------------------------------------


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("DIFFUSE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _positive(v: str) -> int:
    n = int(v)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=_threads_default(),
                        help="worker threads (default: $DIFFUSE_LAB_THREADS or 1)")
    common.add_argument("--max-ball", type=_positive, default=linrep.MAX_BALL,
                        help="abort when a ball exceeds this many elements")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    common.add_argument("--timing", action="store_true", help="keep wall-clock fields")

    p = argparse.ArgumentParser(prog="diffuse-lab",
                                description="Ravels, diffuseness certificates, and the Weeks and quaternion group computations.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("ball", parents=[common], help="word-metric ball of a group definition")
    s.add_argument("group")
    s.add_argument("--radius", "-r", type=int, default=2)
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("ravel", parents=[common], help="largest ravel inside a ball")
    s.add_argument("group")
    s.add_argument("--radius", "-r", type=int, default=3)
    s.add_argument("--minimal", action="store_true", help="also shrink to a deletion-minimal ravel")
    s.add_argument("--order", default="canonical", help="canonical, reversed or a shuffle seed")
    s.set_defaults(func=cmd_ravel)

    s = sub.add_parser("certify", parents=[common], help="Bowditch-type diffuseness certificate")
    s.add_argument("group")
    s.add_argument("--radius", "-r", type=int, default=3)
    s.add_argument("--traces", help="JSON list of all short traces (enables a global verdict)")
    s.add_argument("--trace-cutoff", type=float, help="length bound covered by --traces")
    s.add_argument("--place", type=int, help="complex place index (default: from the group file)")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("crystal", parents=[common], help="crystallographic and finite groups")
    s.add_argument("action", choices=["ravel", "betti", "holonomy"])
    s.add_argument("group", help="CrystGroup JSON (or a finite group table for holonomy)")
    s.add_argument("--r0", help="initial radius (rational); default twice a covering radius bound")
    s.add_argument("--r-max", default="64")
    s.add_argument("--point", help="base point as comma-separated rationals (default origin)")
    s.set_defaults(func=cmd_crystal)

    s = sub.add_parser("weeks", parents=[common], help="Weeks group and the level-3 quaternion group")
    s.add_argument("action", choices=["verify", "systole", "orderability", "ravel"])
    s.add_argument("--radius", "-r", type=int, default=None)
    s.add_argument("--minimal", action="store_true")
    s.add_argument("--order", default="canonical")
    s.add_argument("--tree", help="case tree JSON (default: the bundled 23-leaf tree)")
    s.set_defaults(func=cmd_weeks)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "weeks" and args.action == "ravel" and args.radius is None:
        args.radius = 4
    try:
        return args.func(args)
    except CliError as exc:
        err = {"code": exc.code, "message": str(exc)}
    except linrep.ResourceError as exc:
        err = {"code": "resource-cap", "message": str(exc)}
    except (ValueError, FieldError) as exc:
        err = {"code": "precondition", "message": str(exc)}
    except OSError as exc:
        err = {"code": "io", "message": str(exc)}
    _emit({"command": args.cmd, "error": err}, args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
