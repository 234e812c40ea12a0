"""Compiled vs pure-Python kernels on the Weeks and Promislow witness searches.

    python3 benchmarks/bench_kernels.py [--radius 4 5] [--repeat 3]

Times the modular candidate search, a full peel and the deletion-minimal
shrink for each kernel, and checks that both give the same answers.
"""

import argparse
import time

import numpy as np

from diffuse_lab import _peel_py, ravel
from diffuse_lab.crystal import ball_at, promislow_group
from diffuse_lab.linrep import ball
from diffuse_lab.ravel import ElementSet, Witnesses, _modular_rows, find_ravel, min_ravel
from diffuse_lab.weeks import weeks_groupdef

try:
    from diffuse_lab import _peel
except ImportError:
    _peel = None


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def run(label, A, kernels, repeat):
    elems = A.sorted()
    inverses = [e.inverse() for e in elems]
    index = {e.key: i for i, e in enumerate(elems)}
    rows = {}
    for name, mod in kernels.items():
        ravel._kernel = mod
        t_cand, rows[name] = best_of(lambda: _modular_rows(elems, inverses, index), repeat)
        w = Witnesses.build(elems)
        t_peel, R = best_of(lambda: find_ravel(A, witnesses=w), repeat)
        t_min, m = best_of(lambda: min_ravel(R), 1) if len(R) else (0.0, R)
        print(f"{label:<16}{len(A):>7}{name:>10}{t_cand:>12.4f}{t_peel:>10.4f}{t_min:>10.4f}"
              f"{len(R):>8}{len(m):>6}")
    if len(rows) == 2:
        a, b = rows.values()
        assert [sorted(r) for r in a] == [sorted(r) for r in b], "kernels disagree"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, nargs="+", default=[4, 5], help="Weeks ball radii")
    ap.add_argument("--promislow", default="2", help="Promislow ball radius (rational)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    kernels = {"python": _peel_py}
    if _peel is not None:
        kernels = {"compiled": _peel, **kernels}
    else:
        print("compiled kernel not built; timing the pure kernel only")
    print(f"{'instance':<16}{'|A|':>7}{'kernel':>10}{'candidates':>12}{'peel':>10}{'min':>10}"
          f"{'ravel':>8}{'min':>6}")
    g = weeks_groupdef()
    for r in args.radius:
        run(f"weeks r={r}", ElementSet.from_ball(ball(g, r)), kernels, args.repeat)
    run(f"promislow r={args.promislow}", ball_at(promislow_group(), None, args.promislow),
        kernels, args.repeat)
    # all seeds at once on the largest witness structure: the raw peel loop
    A = ElementSet.from_ball(ball(g, max(args.radius)))
    w = Witnesses.build(A.sorted())
    for name, mod in kernels.items():
        t, _ = best_of(lambda: mod.peel(w.offs, w.pj, w.pk, w.doffs, w.deps,
                                        np.ones(w.n, dtype=np.uint8), np.arange(w.n)), args.repeat)
        print(f"raw peel ({w.offs[-1]} witness pairs) {name}: {t * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
