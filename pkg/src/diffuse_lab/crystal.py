"""Crystallographic groups and finite holonomy groups.

Affine isometries are kept as exact rational data (linear part, translation),
acting by ``x -> M x + t``.  A ``CrystGroup`` is a finite list of generators
together with a translation lattice; the point group is computed by closure
and each point-group element carries one translation lift modulo the lattice.

Holonomy classification works on explicit finite groups given by a
multiplication table (or generated by permutations).
"""

from __future__ import annotations

import itertools
import json
import math
import os
import random
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .linrep import ResourceError
from .ravel import ElementSet, find_ravel, is_ravel

__all__ = [
    "AffineIso",
    "CrystGroup",
    "FiniteGroup",
    "TrivialHolonomyWarning",
    "betti1",
    "ball_at",
    "construct_ravel",
    "promislow_group",
    "is_solvable",
    "sylow_cyclic",
    "holonomy_class",
]

MAX_FINITE_ORDER = 2000


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _mat(rows) -> tuple:
    return tuple(tuple(_frac(x) for x in r) for r in rows)


def _eye(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _mm(A, B) -> tuple:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in A)


def _mv(A, v) -> tuple:
    return tuple(sum((a * x for a, x in zip(r, v)), Fraction(0)) for r in A)


def _transpose(A) -> tuple:
    return tuple(zip(*A))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and pivot columns."""
    rows = [list(r) for r in rows]
    pivots = []
    if not rows:
        return rows, pivots
    m = len(rows[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _inverse(A) -> tuple:
    n = len(A)
    aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def _det(A) -> Fraction:
    M = [list(r) for r in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def _hermite_basis(vectors: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Echelon basis (row style) of the Z-span of integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < n:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        # gcd reduction in this column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for t in range(n):
                    r[t] -= q * p[t]
            nz = [r for r in nz if r[col] != 0]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        basis.append(p)
        rows = [r for r in rows if r is not p and any(r)]
        col += 1
    return basis


def _in_z_span(basis: list[list[int]], v: Sequence[Fraction]) -> bool:
    v = list(v)
    if any(x.denominator != 1 for x in v):
        return False
    v = [int(x) for x in v]
    for p in basis:
        c = next(i for i, x in enumerate(p) if x)
        if v[c] % p[c]:
            return False
        q = v[c] // p[c]
        v = [a - q * b for a, b in zip(v, p)]
    return not any(v)


# ---------------------------------------------------------------------------
# affine isometries


class AffineIso:
    """``x -> M x + t`` with exact rational data.

    Stored as integer numerators over one common denominator, which keeps the
    products used by the ravel search cheap.
    """

    __slots__ = ("n", "d", "L", "T", "_inv")

    def __init__(self, linear, translation):
        lin = _mat(linear)
        tr = tuple(_frac(x) for x in translation)
        n = len(tr)
        if len(lin) != n or any(len(r) != n for r in lin):
            raise ValueError("linear part and translation have different sizes")
        d = math.lcm(*(x.denominator for r in lin for x in r), *(x.denominator for x in tr))
        self._set(n, d, tuple(int(x * d) for r in lin for x in r), tuple(int(x * d) for x in tr))

    def _set(self, n, d, L, T):
        g = math.gcd(d, *L, *T)
        if g > 1:
            d //= g
            L = tuple(x // g for x in L)
            T = tuple(x // g for x in T)
        self.n, self.d, self.L, self.T = n, d, L, T
        self._inv = None

    @classmethod
    def _raw(cls, n, d, L, T) -> "AffineIso":
        obj = cls.__new__(cls)
        obj._set(n, d, L, T)
        return obj

    @classmethod
    def identity(cls, n: int) -> "AffineIso":
        return cls(_eye(n), [0] * n)

    @classmethod
    def translation_by(cls, v) -> "AffineIso":
        return cls(_eye(len(v)), v)

    @property
    def dim(self) -> int:
        return self.n

    @property
    def linear(self) -> tuple:
        n, d = self.n, self.d
        return tuple(tuple(Fraction(self.L[i * n + j], d) for j in range(n)) for i in range(n))

    @property
    def translation(self) -> tuple:
        return tuple(Fraction(x, self.d) for x in self.T)

    @property
    def key(self) -> tuple:
        return (self.d, self.L, self.T)

    def __mul__(self, o: "AffineIso") -> "AffineIso":
        n = self.n
        A, B = self.L, o.L
        L = tuple(sum(A[i * n + k] * B[k * n + j] for k in range(n)) for i in range(n) for j in range(n))
        T = tuple(sum(A[i * n + k] * o.T[k] for k in range(n)) + o.d * self.T[i] for i in range(n))
        return AffineIso._raw(n, self.d * o.d, L, T)

    def inverse(self) -> "AffineIso":
        if self._inv is None:
            inv = _inverse(self.linear)
            self._inv = AffineIso(inv, tuple(-x for x in _mv(inv, self.translation)))
        return self._inv

    def mod_image(self, p: int, ctx=None) -> tuple:
        """Homogeneous (n+1)x(n+1) matrix reduced mod p, row-major."""
        if self.d % p == 0:
            raise ValueError("denominator divisible by p")
        s = pow(self.d, -1, p)
        n = self.n
        out = []
        for i in range(n):
            out.extend(x * s % p for x in self.L[i * n:(i + 1) * n])
            out.append(self.T[i] * s % p)
        out.extend([0] * n + [1])
        return tuple(out)

    def __call__(self, x) -> tuple:
        return tuple(a + b for a, b in zip(_mv(self.linear, [_frac(c) for c in x]), self.translation))

    def is_identity(self) -> bool:
        return self.d == 1 and not any(self.T) and self.L == tuple(
            int(i == j) for i in range(self.n) for j in range(self.n))

    def preserves(self, gram) -> bool:
        M = self.linear
        return _mm(_mm(_transpose(M), gram), M) == gram

    def __eq__(self, other):
        return isinstance(other, AffineIso) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def to_json(self) -> dict:
        return {"linear": [[str(x) for x in r] for r in self.linear],
                "translation": [str(x) for x in self.translation]}

    @classmethod
    def from_json(cls, data) -> "AffineIso":
        return cls([[Fraction(x) for x in r] for r in data["linear"]],
                   [Fraction(x) for x in data["translation"]])

    def __repr__(self):
        return f"AffineIso({[[str(x) for x in r] for r in self.linear]}, {[str(x) for x in self.translation]})"


def _matrix_order(M, cap: int = 1000) -> int:
    n = len(M)
    eye = _eye(n)
    P = M
    for k in range(1, cap + 1):
        if P == eye:
            return k
        P = _mm(P, M)
    raise ValueError("linear part has infinite (or very large) order")


# ---------------------------------------------------------------------------
# crystallographic groups


@dataclass
class CrystGroup:
    """Crystallographic group from affine generators and a translation lattice.

    ``lattice`` holds the basis vectors of the translation subgroup (default
    the standard basis); ``gram`` defines the Euclidean form.
    """

    generators: list
    gram: tuple = None
    lattice: tuple = None
    name: str = ""
    point_group: list = dc_field(default_factory=list, init=False)
    lifts: dict = dc_field(default_factory=dict, init=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("at least one generator is required")
        n = self.generators[0].dim
        self.gram = _mat(self.gram) if self.gram is not None else _eye(n)
        self.lattice = _mat(self.lattice) if self.lattice is not None else _eye(n)
        B = _transpose(self.lattice)  # columns are lattice vectors
        if _det(B) == 0:
            raise ValueError("lattice is not of full rank")
        self._B = B
        self._Binv = _inverse(B)
        for g in self.generators:
            if g.dim != n:
                raise ValueError("generators of mixed dimension")
            if not g.preserves(self.gram):
                raise ValueError("generator does not preserve the gram form")
            _matrix_order(g.linear)
            Mz = _mm(_mm(self._Binv, g.linear), B)
            if any(x.denominator != 1 for r in Mz for x in r) or abs(_det(Mz)) != 1:
                raise ValueError("generator does not preserve the lattice")
        self._close()

    @property
    def dim(self) -> int:
        return len(self.gram)

    def _reduce(self, t) -> tuple:
        """Translation reduced to the fundamental domain [0,1)^n of the lattice."""
        c = _mv(self._Binv, t)
        c = [x - math.floor(x) for x in c]
        return _mv(self._B, c)

    def _close(self):
        n = self.dim
        lifts = {_eye(n): tuple(Fraction(0) for _ in range(n))}
        frontier = list(lifts)
        gens = [(g.linear, g.translation) for g in self.generators]
        gens += [(g.inverse().linear, g.inverse().translation) for g in self.generators]
        while frontier:
            nxt = []
            for M in frontier:
                t = lifts[M]
                for L, s in gens:
                    M2 = _mm(M, L)
                    t2 = self._reduce(tuple(a + b for a, b in zip(_mv(M, s), t)))
                    if M2 in lifts:
                        diff = _mv(self._Binv, [a - b for a, b in zip(t2, lifts[M2])])
                        if any(x.denominator != 1 for x in diff):
                            raise ValueError("translation part is not well defined modulo the lattice")
                        continue
                    lifts[M2] = t2
                    nxt.append(M2)
                    if len(lifts) > MAX_FINITE_ORDER:
                        raise ResourceError("point group too large")
            frontier = nxt
        self.lifts = lifts
        self.point_group = list(lifts)

    def holonomy(self) -> "FiniteGroup":
        return FiniteGroup.from_elements(self.point_group, _mm)

    def lift(self, M) -> AffineIso:
        return AffineIso(M, self.lifts[M])

    def is_torsion_free(self) -> bool:
        """No lift fixes a point: ``N_M t`` must avoid ``N_M L`` for every M != 1.

        ``N_M = 1 + M + ... + M^(k-1)``; over Q the image of ``M - 1`` is the
        kernel of ``N_M``, so ``(t + L)`` meets it iff ``N_M t`` lies in ``N_M L``.
        """
        n = self.dim
        eye = _eye(n)
        for M, t in self.lifts.items():
            if M == eye:
                continue
            k = _matrix_order(M)
            N = [[Fraction(0)] * n for _ in range(n)]
            P = eye
            for _ in range(k):
                N = [[a + b for a, b in zip(r, s)] for r, s in zip(N, P)]
                P = _mm(P, M)
            # lattice coordinates: N' = B^-1 N B is integral
            Nz = _mm(_mm(self._Binv, N), self._B)
            tz = _mv(self._Binv, t)
            cols = [[int(Nz[i][j]) for i in range(n)] for j in range(n)]
            if _in_z_span(_hermite_basis(cols, n), _mv(Nz, tz)):
                return False
        return True

    def norm2(self, v) -> Fraction:
        return sum((a * b for a, b in zip(v, _mv(self.gram, v))), Fraction(0))

    # JSON ------------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "gram": [[str(x) for x in r] for r in self.gram],
            "generators": [g.to_json() for g in self.generators],
            "lattice": [[str(x) for x in r] for r in self.lattice],
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data) -> "CrystGroup":
        data = _load(data)
        gens = [AffineIso.from_json(g) for g in data["generators"]]
        n = int(data.get("dim", gens[0].dim))
        if any(g.dim != n for g in gens):
            raise ValueError("dimension mismatch")
        gram = [[Fraction(x) for x in r] for r in data["gram"]] if "gram" in data else None
        lat = [[Fraction(x) for x in r] for r in data["lattice"]] if "lattice" in data else None
        return cls(gens, gram, lat, name=data.get("name", ""))


def _load(data):
    if isinstance(data, dict):
        return data
    if isinstance(data, (str, bytes)) and str(data).lstrip().startswith("{"):
        return json.loads(data)
    if isinstance(data, (str, bytes, os.PathLike)):
        with open(data) as fh:
            return json.load(fh)
    raise TypeError("expected a dict, JSON text or a path")


def betti1(g: CrystGroup) -> int:
    """Dimension of the space of point-group fixed vectors."""
    n = g.dim
    eye = _eye(n)
    rows = []
    for M in g.point_group:
        rows.extend([M[i][j] - eye[i][j] for j in range(n)] for i in range(n))
    if not rows:
        return n
    _, piv = _rref(rows)
    return n - len(piv)


def _cholesky_bounds(Q, r2: Fraction) -> list[float]:
    """Upper bounds on |z_i| for z^T Q z <= r2 (uses (Q^-1)_ii, padded)."""
    Qi = _inverse(Q)
    return [math.sqrt(float(r2 * Qi[i][i])) * (1 + 1e-9) + 1e-9 for i in range(len(Q))]


def ball_at(g: CrystGroup, e=None, r=1, max_size: int = 10_000_000) -> ElementSet:
    """Elements ``gamma`` with ``|gamma e - e| <= r`` (exact comparison of squares)."""
    n = g.dim
    e = tuple(_frac(x) for x in (e if e is not None else [0] * n))
    r = _frac(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    r2 = r * r
    B = g._B
    Q = _mm(_mm(_transpose(B), g.gram), B)
    bounds = _cholesky_bounds(Q, r2)
    out = []
    for M, t in g.lifts.items():
        # gamma e - e = c + B z with c = M e + t - e
        c = tuple(a + b - x for a, b, x in zip(_mv(M, e), t, e))
        cz = _mv(g._Binv, c)
        ranges = [range(math.ceil(-bounds[i] - cz[i]), math.floor(bounds[i] - cz[i]) + 1)
                  for i in range(n)]
        total = 1
        for rg in ranges:
            total *= max(len(rg), 0)
        if total > max_size:
            raise ResourceError(f"lattice box of {total} points exceeds {max_size}")
        for z in itertools.product(*ranges):
            lam = _mv(B, [Fraction(x) for x in z])
            d = tuple(a + b for a, b in zip(c, lam))
            if g.norm2(d) <= r2:
                out.append(AffineIso(M, tuple(a + b for a, b in zip(t, lam))))
                if len(out) > max_size:
                    raise ResourceError(f"ball exceeds {max_size} elements")
    return ElementSet(out, projective=False)


def covering_radius_bound(g: CrystGroup) -> Fraction:
    """Half the length of the sum of the basis norms: an upper bound for the covering radius."""
    s = sum(float(g.norm2(v)) for v in _transpose(g._B))
    return Fraction(math.ceil(math.sqrt(s) / 2 * 100) + 1, 100)


@dataclass
class CrystRavel:
    ravel: ElementSet
    radius: Fraction
    ball_size: int
    attempts: list


def construct_ravel(g: CrystGroup, e=None, r0=None, r_max=64, threads: int = 1,
                    require_betti_zero: bool = True) -> CrystRavel:
    """Double the radius from ``r0`` until the ball about ``e`` contains a ravel."""
    if require_betti_zero and betti1(g) > 0 and g.is_torsion_free():
        raise ValueError("first Betti number is positive; no ravel is guaranteed")
    r = _frac(r0) if r0 is not None else 2 * covering_radius_bound(g)
    r_max = _frac(r_max)
    attempts = []
    while True:
        A = ball_at(g, e, r)
        R = find_ravel(A, threads=threads)
        attempts.append((str(r), len(A), len(R)))
        if len(R):
            if not is_ravel(R):  # independent check by direct extremality tests
                raise AssertionError("peeling produced a non-ravel")
            return CrystRavel(R, r, len(A), attempts)
        if r >= r_max:
            raise ResourceError(f"no ravel up to radius {r_max}")
        r = min(2 * r, r_max)


def promislow_group() -> CrystGroup:
    """Hantzsche-Wendt group: a(x,y,z) = (x+1/2, -y+1/2, -z), b(x,y,z) = (-x, y+1/2, -z+1/2)."""
    h = Fraction(1, 2)
    a = AffineIso([[1, 0, 0], [0, -1, 0], [0, 0, -1]], [h, h, 0])
    b = AffineIso([[-1, 0, 0], [0, 1, 0], [0, 0, -1]], [0, h, h])
    g = CrystGroup([a, b], name="promislow")
    hol = g.holonomy()
    if hol.order != 4 or hol.exponent() != 2:
        raise AssertionError("holonomy is not (Z/2)^2")
    if betti1(g) != 0:
        raise AssertionError("first Betti number is not zero")
    if not g.is_torsion_free():
        raise AssertionError("group has torsion")
    return g


# ---------------------------------------------------------------------------
# finite groups


class TrivialHolonomyWarning(UserWarning):
    """The trivial group was classified (as diffuse, by convention)."""


class FiniteGroup:
    """Finite group given by its multiplication table (identity found, not assumed at 0)."""

    def __init__(self, table: Sequence[Sequence[int]], check: bool = True, seed: int = 0):
        N = len(table)
        if N == 0:
            raise ValueError("empty table")
        if N > MAX_FINITE_ORDER:
            raise ResourceError(f"order {N} exceeds {MAX_FINITE_ORDER}")
        self.table = [list(map(int, r)) for r in table]
        if any(len(r) != N or min(r) < 0 or max(r) >= N for r in self.table):
            raise ValueError("table must be N x N with entries in range(N)")
        self.order = N
        ident = [e for e in range(N) if self.table[e] == list(range(N))
                 and all(self.table[x][e] == x for x in range(N))]
        if not ident:
            raise ValueError("no identity element")
        self.identity = ident[0]
        self.inv = [None] * N
        for x in range(N):
            row = self.table[x]
            for y in range(N):
                if row[y] == self.identity:
                    self.inv[x] = y
                    break
            if self.inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        if check:
            self._check_assoc(seed)

    def _check_assoc(self, seed: int):
        t = self.table
        N = self.order
        if N <= 40:
            triples = itertools.product(range(N), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(N), rng.randrange(N), rng.randrange(N)) for _ in range(20000))
        for x, y, z in triples:
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValueError(f"table is not associative at {(x, y, z)}")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(x) for x in range(self.order)))

    def generated(self, gens: Iterable[int]) -> set[int]:
        S = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
            frontier = nxt
        return S

    def commutator_subgroup(self, H: Iterable[int]) -> set[int]:
        H = list(H)
        t, inv = self.table, self.inv
        comms = {t[t[t[inv[x]][inv[y]]][x]][y] for x in H for y in H}
        return self.generated(comms)

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy with element x renamed perm[x]."""
        N = self.order
        new = [[0] * N for _ in range(N)]
        for x in range(N):
            for y in range(N):
                new[perm[x]][perm[y]] = perm[self.table[x][y]]
        return FiniteGroup(new, check=False)

    # constructors -----------------------------------------------------------

    @classmethod
    def from_elements(cls, elements: Sequence, mul) -> "FiniteGroup":
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[mul(x, y)] for y in elements] for x in elements]
        return cls(table)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]]) -> "FiniteGroup":
        gens = [tuple(g) for g in gens]
        n = len(gens[0]) if gens else 0
        ident = tuple(range(n))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(x[g[i]] for i in range(n))
                    if y not in seen:
                        seen.add(y)
                        elems.append(y)
                        nxt.append(y)
                        if len(elems) > MAX_FINITE_ORDER:
                            raise ResourceError(f"group order exceeds {MAX_FINITE_ORDER}")
            frontier = nxt
        return cls.from_elements(elems, lambda x, y: tuple(x[y[i]] for i in range(n)))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def dihedral(cls, order: int) -> "FiniteGroup":
        m = order // 2
        if m < 2 or 2 * m != order:
            raise ValueError("dihedral order must be even and >= 4")
        rot = [(i + 1) % m for i in range(m)]
        ref = [(-i) % m for i in range(m)]
        return cls.from_permutations([rot, ref])

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        if n < 2:
            return cls([[0]])
        cyc = list(range(1, n)) + [0]
        swap = [1, 0] + list(range(2, n))
        return cls.from_permutations([cyc, swap])

    @classmethod
    def alternating(cls, n: int) -> "FiniteGroup":
        if n < 3:
            return cls([[0]])
        gens = []
        for i in range(n - 2):
            p = list(range(n))
            p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
            gens.append(p)
        return cls.from_permutations(gens)

    def direct_product(self, other: "FiniteGroup") -> "FiniteGroup":
        N, M = self.order, other.order
        table = [[self.table[a // M][b // M] * M + other.table[a % M][b % M] for b in range(N * M)]
                 for a in range(N * M)]
        return FiniteGroup(table, check=False)

    # JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table}

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        data = _load(data)
        if "permutations" in data:
            g = cls.from_permutations(data["permutations"])
        else:
            g = cls(data["table"])
        if "order" in data and int(data["order"]) != g.order:
            raise ValueError("declared order does not match the table")
        return g

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _prime_factors(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_solvable(G: FiniteGroup) -> bool:
    """True iff the derived series reaches the trivial group."""
    H = set(range(G.order))
    while len(H) > 1:
        D = G.commutator_subgroup(H)
        if len(D) == len(H):
            return False
        H = D
    return True


def sylow_cyclic(G: FiniteGroup, p: int) -> bool:
    """Whether a Sylow p-subgroup is cyclic: some element has order p^v_p(N)."""
    fac = _prime_factors(G.order)
    if p not in fac:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    target = p ** fac[p]
    return any(G.element_order(x) == target for x in range(G.order))


def holonomy_class(G: FiniteGroup) -> str:
    """``anti-diffuse`` if not solvable, ``diffuse`` if all Sylow subgroups are cyclic, else ``mixed``."""
    if G.order == 1:
        warnings.warn("trivial holonomy group: classified diffuse by convention",
                      TrivialHolonomyWarning, stacklevel=2)
        return "diffuse"
    if not is_solvable(G):
        return "anti-diffuse"
    if all(sylow_cyclic(G, p) for p in _prime_factors(G.order)):
        return "diffuse"
    return "mixed"
