"""Extremal points and ravels in finite subsets of a group.

A point ``a`` of a finite set ``A`` is extremal when no ``g != 1`` has both
``g a`` and ``g^-1 a`` in ``A``.  Writing ``b = g a`` the second element is
``a b^-1 a``, so extremality only needs products of set members.

The heavy lifting (repeatedly peeling extremal points) runs on an integer
witness structure built once per set; the peeling kernel comes from the
compiled ``_peel`` extension when available and ``_peel_py`` otherwise.
Set ``DIFFUSE_LAB_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

if os.environ.get("DIFFUSE_LAB_PURE"):
    from . import _peel_py as _kernel
else:
    try:
        from . import _peel as _kernel
    except ImportError:  # extension not built
        from . import _peel_py as _kernel

KERNEL = "compiled" if _kernel.__name__.endswith("._peel") else "python"

__all__ = [
    "ElementSet",
    "Witnesses",
    "is_extremal",
    "find_ravel",
    "min_ravel",
    "is_ravel",
    "KERNEL",
    "modular_context",
]


class ElementSet:
    """Ordered finite set of group elements keyed by their canonical form.

    Elements must provide ``key``, ``*`` and ``inverse()``.
    """

    def __init__(self, elements: Iterable = (), projective: bool | None = None):
        self.elements: dict = {}
        for e in elements:
            self.elements.setdefault(e.key, e)
        if projective is None:
            first = next(iter(self.elements.values()), None)
            projective = bool(getattr(first, "projective", False))
        self.projective = projective

    @classmethod
    def from_ball(cls, b) -> "ElementSet":
        return cls(b.elements.values(), projective=b.projective)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements.values())

    def __contains__(self, e) -> bool:
        return e.key in self.elements

    def keys(self):
        return self.elements.keys()

    def subset(self, keep: Iterable) -> "ElementSet":
        return ElementSet(keep, projective=self.projective)

    def sorted(self) -> list:
        """Elements in canonical-key order."""
        return [self.elements[k] for k in sorted(self.elements)]

    def to_json(self) -> list:
        return [e.to_json() for e in self.sorted()]

    def __eq__(self, other):
        return isinstance(other, ElementSet) and set(self.elements) == set(other.elements)

    def __repr__(self):
        return f"ElementSet(<{len(self)} elements>)"


def is_extremal(a, A: ElementSet) -> bool:
    """Direct extremality test: scan ``b in A \\ {a}`` for ``a b^-1 a in A``."""
    if a.key not in A.elements:
        raise ValueError("a is not a member of A")
    ka = a.key
    for kb, b in A.elements.items():
        if kb == ka:
            continue
        if (a * b.inverse() * a).key in A.elements:
            return False
    return True


@dataclass
class Witnesses:
    """CSR witness structure over a fixed universe of elements."""

    elems: list
    offs: np.ndarray
    pj: np.ndarray
    pk: np.ndarray
    doffs: np.ndarray
    deps: np.ndarray

    @property
    def n(self) -> int:
        return len(self.elems)

    @classmethod
    def build(cls, elems: Sequence, threads: int = 1, modular: bool = True) -> "Witnesses":
        """Witness pairs for every element of ``elems``.

        With ``modular`` the candidate triples come from images modulo a large
        prime (computed by the kernel) and are then confirmed exactly, so the
        result is identical to the direct exact search.
        """
        elems = list(elems)
        n = len(elems)
        index = {e.key: i for i, e in enumerate(elems)}
        inverses = [e.inverse() for e in elems]
        rows = None
        if modular and n > 1:
            rows = _modular_rows(elems, inverses, index)

        def row(i):
            a = elems[i]
            out = []
            for j in range(n):
                if j == i:
                    continue
                k = index.get((a * inverses[j] * a).key)
                if k is not None:
                    out.append((j, k))
            return out

        if rows is not None:
            pass
        elif threads > 1 and n > 64:
            with ThreadPoolExecutor(threads) as pool:
                rows = list(pool.map(row, range(n)))
        else:
            rows = [row(i) for i in range(n)]

        offs = np.zeros(n + 1, dtype=np.int64)
        for i, r in enumerate(rows):
            offs[i + 1] = offs[i] + len(r)
        pj = np.fromiter((j for r in rows for j, _ in r), dtype=np.int64, count=int(offs[-1]))
        pk = np.fromiter((k for r in rows for _, k in r), dtype=np.int64, count=int(offs[-1]))
        dep_sets = [set() for _ in range(n)]
        for i, r in enumerate(rows):
            for j, k in r:
                dep_sets[j].add(i)
                dep_sets[k].add(i)
        doffs = np.zeros(n + 1, dtype=np.int64)
        for i, s in enumerate(dep_sets):
            doffs[i + 1] = doffs[i] + len(s)
        deps = np.fromiter((d for s in dep_sets for d in sorted(s)), dtype=np.int64,
                           count=int(doffs[-1]))
        return cls(elems, offs, pj, pk, doffs, deps)

    def peel(self, alive: np.ndarray, seeds) -> int:
        return _kernel.peel(self.offs, self.pj, self.pk, self.doffs, self.deps, alive,
                            np.asarray(seeds, dtype=np.int64))

    def min_peel(self, alive: np.ndarray, order) -> int:
        return _kernel.min_peel(self.offs, self.pj, self.pk, self.doffs, self.deps, alive,
                                np.asarray(order, dtype=np.int64))

    def non_extremal(self, alive: np.ndarray, a: int) -> bool:
        for t in range(self.offs[a], self.offs[a + 1]):
            if alive[self.pj[t]] and alive[self.pk[t]]:
                return True
        return False


# primes just below 2**31; the first one that suits the field is used
_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
           2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399)


def modular_context(sample, p: int):
    """Reduction data for the element type of ``sample`` at the prime p, or None."""
    from .crystal import AffineIso
    from .linrep import Mat2
    from .qfield import roots_mod_p
    from .quat import QuatElem

    obj = getattr(sample, "matrix", sample)
    if isinstance(obj, AffineIso):
        return True
    if isinstance(obj, Mat2):
        return obj.field.modular_root(p)
    if isinstance(obj, QuatElem):
        root = obj.field.modular_root(p)
        if root is None:
            return None
        try:
            a = obj.alg.a.mod_image(p, root)
        except ValueError:
            return None
        if a == 0:
            return None
        s = roots_mod_p([-a, 0, 1], p)
        return (root, s[0]) if s else None
    return None


def _modular_rows(elems, inverses, index):
    if not hasattr(elems[0], "mod_image"):
        return None
    projective = bool(getattr(elems[0], "projective", False))
    for p in _PRIMES:
        ctx = modular_context(elems[0], p)
        if ctx is None:
            continue
        try:
            img = np.array([e.mod_image(p, ctx) for e in elems], dtype=np.int64)
            inv = np.array([e.mod_image(p, ctx) for e in inverses], dtype=np.int64)
        except (ValueError, ZeroDivisionError):
            continue
        w = img.shape[1]
        if int(round(w ** 0.5)) ** 2 != w or w > 64:
            return None
        I, J, K = _kernel.witness_candidates(img, inv, p, projective)
        rows = [[] for _ in elems]
        for i, j, k in zip(I, J, K):
            # exact confirmation; a modular coincidence is simply dropped
            if (elems[i] * inverses[j] * elems[i]).key == elems[k].key:
                rows[i].append((j, k))
        return rows
    return None


def _order(n: int, order) -> list[int]:
    if order is None or order == "declared":
        return list(range(n))
    if order == "reversed":
        return list(range(n - 1, -1, -1))
    if isinstance(order, int):
        idx = list(range(n))
        random.Random(order).shuffle(idx)
        return idx
    return list(order)


def find_ravel(A: ElementSet, order=None, threads: int = 1,
               witnesses: Witnesses | None = None) -> ElementSet:
    """Largest ravel contained in ``A`` (empty when there is none).

    Extremal points are removed until none is left.  ``order`` selects the
    scan order ("declared", "reversed", an int shuffle seed or an explicit
    index list); the result does not depend on it.
    """
    w = witnesses or Witnesses.build(list(A), threads=threads)
    alive = np.ones(w.n, dtype=np.uint8)
    w.peel(alive, _order(w.n, order))
    return A.subset(w.elems[i] for i in np.flatnonzero(alive))


def is_ravel(A: ElementSet) -> bool:
    return len(A) > 0 and not any(is_extremal(a, A) for a in A)


def min_ravel(A: ElementSet, order=None, threads: int = 1,
              check: bool = True) -> ElementSet:
    """A deletion-minimal ravel inside the ravel ``A``.

    Elements are tried in canonical-key order unless ``order`` says otherwise;
    the outcome depends on that order.
    """
    elems = A.sorted()
    w = Witnesses.build(elems, threads=threads)
    alive = np.ones(w.n, dtype=np.uint8)
    if check:
        probe = alive.copy()
        if w.peel(probe, range(w.n)) != w.n:
            raise ValueError("input is not a ravel")
    w.min_peel(alive, _order(w.n, order))
    return A.subset(w.elems[i] for i in np.flatnonzero(alive))


def is_deletion_minimal(R: ElementSet) -> bool:
    """True if removing any single point leaves a set containing no ravel."""
    elems = R.sorted()
    w = Witnesses.build(elems)
    for a in range(w.n):
        alive = np.ones(w.n, dtype=np.uint8)
        alive[a] = 0
        if w.peel(alive, range(w.n)):
            return False
    return True
