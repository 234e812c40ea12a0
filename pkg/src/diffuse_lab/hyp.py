"""Hyperbolic geometry for diffuseness criteria.

Two models are used:

* the projective model of H^n_A for A = R, C, H (real, complex, quaternionic)
  on the right A-module A^{n,1} with the form
  <v, w> = conj(w_{n+1}) v_1 + sum_{i=2..n} conj(w_i) v_i + conj(w_1) v_{n+1};
  the distance satisfies cosh(d/2)^2 = |<v,w>|^2 / (<v,v> <w,w>).  For A = R
  this is twice the curvature -1 distance.
* the upper half-space model of real hyperbolic space, where axial
  isometries are normalised to x -> k * (A x', x_n), and SL2(C) acts on H^3
  by Poincare extension.

Classification of number-field matrices is certified: traces are embedded
as intervals and decisions at the boundary fall back to exact arithmetic.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .linrep import MAX_BALL, GroupDef, Mat2, ball
from .qfield import (
    FieldError,
    NFElem,
    PlaceValue,
    _pdiff,
    _pdivmod,
    _pgcd,
    certified_roots,
    embed,
)

__all__ = [
    "ProjPoint",
    "IsometryClass",
    "AxialForm",
    "RealInterval",
    "hyp_distance",
    "inner",
    "trace_neg_check",
    "random_point",
    "classify_trace",
    "classify_sl2",
    "translation_length",
    "bowditch_basic",
    "bowditch_improved",
    "BOWDITCH_CONSTANT",
    "separation_witness",
    "halfspace_distance",
    "SL2Action",
    "bisector_separation_test",
    "SeparationReport",
    "certify_ball",
]

with mpmath.workdps(40):
    _BC = 2 * mpmath.log(1 + mpmath.sqrt(2))
    #: 2 log(1 + sqrt 2) = arcosh(3), as a certified enclosure
    BOWDITCH_CONSTANT = float(_BC)
    _BC_LO = float(_BC - mpmath.mpf(10) ** -30)
    _BC_HI = float(_BC + mpmath.mpf(10) ** -30)
    _BC_LO = math.nextafter(_BC_LO, -math.inf)
    _BC_HI = math.nextafter(_BC_HI, math.inf)


# ---------------------------------------------------------------------------
# scalars of A = R, C, H.  Quaternions are 4-tuples (1, i, j, k) of floats.


def _hmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


class _Scalars:
    def __init__(self, kind: str):
        if kind not in ("R", "C", "H"):
            raise ValueError("A must be one of 'R', 'C', 'H'")
        self.kind = kind

    def coerce(self, z):
        if self.kind == "R":
            return float(z)
        if self.kind == "C":
            return complex(z)
        if isinstance(z, (int, float)):
            return (float(z), 0.0, 0.0, 0.0)
        if isinstance(z, complex):
            return (z.real, z.imag, 0.0, 0.0)
        return tuple(float(c) for c in z)

    def zero(self):
        return self.coerce(0)

    def add(self, p, q):
        if self.kind == "H":
            return tuple(a + b for a, b in zip(p, q))
        return p + q

    def mul(self, p, q):
        if self.kind == "H":
            return _hmul(p, q)
        return p * q

    def conj(self, p):
        if self.kind == "R":
            return p
        if self.kind == "C":
            return p.conjugate()
        return (p[0], -p[1], -p[2], -p[3])

    def absr(self, p) -> float:
        """|z|_{A/R} = conj(z) z."""
        if self.kind == "R":
            return p * p
        if self.kind == "C":
            return p.real * p.real + p.imag * p.imag
        return sum(c * c for c in p)

    def tr(self, p) -> float:
        """tr_{A/R}(z) = z + conj(z)."""
        if self.kind == "R":
            return 2 * p
        if self.kind == "C":
            return 2 * p.real
        return 2 * p[0]

    def random(self, rng: random.Random, scale: float = 1.0):
        if self.kind == "R":
            return rng.gauss(0, scale)
        if self.kind == "C":
            return complex(rng.gauss(0, scale), rng.gauss(0, scale))
        return tuple(rng.gauss(0, scale) for _ in range(4))

    def random_unit(self, rng: random.Random):
        if self.kind == "R":
            return rng.choice((-1.0, 1.0))
        if self.kind == "C":
            return cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        q = [rng.gauss(0, 1) for _ in range(4)]
        s = math.sqrt(sum(c * c for c in q))
        return tuple(c / s for c in q)

    def imaginary(self, rng: random.Random, scale: float = 1.0):
        """A random element with zero real trace."""
        if self.kind == "R":
            return 0.0
        if self.kind == "C":
            return complex(0.0, rng.gauss(0, scale))
        return (0.0, rng.gauss(0, scale), rng.gauss(0, scale), rng.gauss(0, scale))


@dataclass(frozen=True)
class ProjPoint:
    """A representative vector v in V_- of a point of H^n_A (n = len(coords) - 1)."""

    A: str
    coords: tuple

    def __post_init__(self):
        if len(self.coords) < 2:
            raise ValueError("need at least two coordinates")
        if not self.norm2() < 0:
            raise ValueError("point is not in V_- (<v,v> must be negative)")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def norm2(self) -> float:
        return _inner_raw(_Scalars(self.A), self.coords, self.coords, real=True)

    def scaled(self, lam) -> "ProjPoint":
        """Right multiplication by a nonzero scalar (same projective point)."""
        S = _Scalars(self.A)
        lam = S.coerce(lam)
        return ProjPoint(self.A, tuple(S.mul(c, lam) for c in self.coords))


def _inner_raw(S: _Scalars, v, w, real: bool = False):
    n1 = len(v) - 1
    acc = S.mul(S.conj(w[n1]), v[0])
    for i in range(1, n1):
        acc = S.add(acc, S.mul(S.conj(w[i]), v[i]))
    acc = S.add(acc, S.mul(S.conj(w[0]), v[n1]))
    if real:
        return S.tr(acc) / 2
    return acc


def inner(p: ProjPoint, q: ProjPoint):
    if p.A != q.A or p.n != q.n:
        raise ValueError("points live in different spaces")
    return _inner_raw(_Scalars(p.A), p.coords, q.coords)


def _check_vminus(*pts: ProjPoint):
    for p in pts:
        if not isinstance(p, ProjPoint):
            raise TypeError("expected ProjPoint")
        if not p.norm2() < 0:
            raise ValueError("point outside V_-")


def hyp_distance(p: ProjPoint, q: ProjPoint) -> float:
    """d_X(p, q) from cosh(d/2)^2 = |<p,q>|^2 / (<p,p><q,q>)."""
    _check_vminus(p, q)
    S = _Scalars(p.A)
    ratio = S.absr(inner(p, q)) / (p.norm2() * q.norm2())
    return 2.0 * math.acosh(math.sqrt(max(ratio, 1.0)))


def trace_neg_check(p: ProjPoint, q: ProjPoint, *, check: bool = True) -> float:
    """tr_{A/R}(conj(v_{n+1}) v'_{n+1} <v, v'>); negative on V_- x V_-."""
    if check:
        _check_vminus(p, q)
    S = _Scalars(p.A)
    v, w = p.coords, q.coords
    lead = S.mul(S.conj(v[-1]), w[-1])
    return S.tr(S.mul(lead, _inner_raw(S, v, w)))


def random_point(A: str, n: int, rng: random.Random, scale: float = 1.0,
                 rescale: bool = True) -> ProjPoint:
    """Random point of V_- (optionally right-multiplied by a random unit and scale)."""
    S = _Scalars(A)
    mid = [S.random(rng, scale) for _ in range(n - 1)]
    mass = sum(S.absr(m) for m in mid)
    gap = rng.expovariate(1.0) * scale + 1e-3
    first = S.add(S.coerce(-(mass + gap) / 2), S.imaginary(rng, scale))
    coords = [first, *mid, S.coerce(1.0)]
    p = ProjPoint(A, tuple(coords))
    if rescale:
        lam = S.random_unit(rng)
        mag = math.exp(rng.uniform(-1, 1))
        lam = S.mul(lam, S.coerce(mag))
        p = p.scaled(lam)
    return p


def from_halfspace(u: Sequence[float], h: float) -> ProjPoint:
    """Projective representative of the upper half-space point (u, h) for A = R."""
    if h <= 0:
        raise ValueError("height must be positive")
    s = sum(x * x for x in u)
    return ProjPoint("R", (-(s + h * h) / 2, *map(float, u), 1.0))


# ---------------------------------------------------------------------------
# isometry classification


@dataclass(frozen=True)
class RealInterval:
    lo: float
    hi: float

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> float:
        return (self.hi - self.lo) / 2

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


@dataclass(frozen=True)
class IsometryClass:
    kind: str  # identity | elliptic | parabolic-unipotent | parabolic-nonunipotent | axial
    length: float = 0.0
    angle: float = 0.0
    length_interval: RealInterval | None = None

    def __post_init__(self):
        if (self.kind == "axial") != (self.length > 0):
            raise ValueError("length must be positive exactly for axial isometries")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "axial":
            out["length"] = repr(self.length)
            out["angle"] = repr(self.angle)
        return out


@dataclass(frozen=True)
class AxialForm:
    """Axial isometry x -> k * (A x', x_n) of the upper half-space H^n."""

    k: float
    A: np.ndarray = dc_field(compare=False)

    def __post_init__(self):
        if not self.k > 1:
            raise ValueError("dilation k must exceed 1")
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("rotation must be square")
        if not np.allclose(A.T @ A, np.eye(A.shape[0]), atol=1e-9):
            raise ValueError("rotational part is not orthogonal")
        object.__setattr__(self, "A", A)

    @classmethod
    def from_sl2(cls, length: float, angle: float) -> "AxialForm":
        c, s = math.cos(angle), math.sin(angle)
        return cls(math.exp(length), np.array([[c, -s], [s, c]]))

    @property
    def dim(self) -> int:
        return self.A.shape[0] + 1

    @property
    def length(self) -> float:
        return math.log(self.k)

    @property
    def rotation(self) -> float:
        """Absolute rotation: operator norm of A - I."""
        if self.A.size == 0:
            return 0.0
        return float(np.linalg.norm(self.A - np.eye(self.A.shape[0]), 2))

    def threshold(self) -> float:
        """Smallest admissible dilation 1 + r + sqrt(r^2 + 2r) = exp(arcosh(1 + r))."""
        r = self.rotation
        return 1 + r + math.sqrt(r * r + 2 * r)

    def sharp_threshold(self) -> float:
        """exp(arcosh(1 + r^2/2)): the separation property holds iff k reaches this.

        Writing |Y| = 1, |X| = s, the two inequalities for a counterexample add
        up to (k-1)^2 (1+s^2) / k < 2 <X, (A + A^T - 2) Y> <= 2 s r^2, so
        (k-1)^2 / k < r^2 is necessary; X = -Y in the plane of largest
        rotation shows it is sufficient.  It agrees with ``threshold`` only
        for r = 0 and r = 2.
        """
        c = 1 + self.rotation ** 2 / 2
        return c + math.sqrt(c * c - 1)

    def apply(self, p: np.ndarray, power: int = 1) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if power == 1:
            return self.k * np.concatenate([self.A @ p[:-1], p[-1:]])
        if power == -1:
            return np.concatenate([self.A.T @ p[:-1], p[-1:]]) / self.k
        raise ValueError("power must be +1 or -1")


def _sqfree(poly):
    g = _pgcd(poly, _pdiff(poly))
    if len(g) <= 1:
        return list(poly)
    return _pdivmod(poly, g)[0]


def _real_at_place(t: NFElem, place: int) -> bool:
    """Exact decision whether t is real at the given place.

    The value of t is a root of the squarefree part of its characteristic
    polynomial; once the embedded interval meets exactly one certified root
    disk, that disk tells whether the root is real.
    """
    f = t.field
    if f.places[place] == "real" or t.is_rational():
        return True
    h = _sqfree(t.charpoly())
    disks = certified_roots(h)
    rad = 1e-6
    for _ in range(12):
        v = embed(t, place, rad)
        slack = v.radius + 1e-15 * (1 + abs(v.center))
        hits = [d for d in disks
                if math.hypot(v.center.real - float(d.re), abs(v.center.imag) - float(d.im))
                <= slack + float(d.radius)]
        if len(hits) == 1:
            return hits[0].is_real
        rad /= 1e3
    raise FieldError("could not separate the trace from other conjugates")


def translation_length(tr) -> RealInterval:
    """Certified enclosure of T(z) = Re(2 arcosh(z/2)) for z in a trace disk."""
    if isinstance(tr, PlaceValue):
        z0, r = tr.center, tr.radius
    else:
        z0, r = complex(tr), 0.0
    val = (2 * cmath.acosh(z0 / 2)).real
    slack = 1e-15 * (1 + abs(val))
    if r == 0 and (z0 == 2 or z0 == -2):
        return RealInterval(0.0, 0.0)
    m = abs(z0 * z0 - 4) - (2 * abs(z0) * r + r * r)
    if m > 0:
        err = 2 * r / math.sqrt(m) + slack
        return RealInterval(max(0.0, val - err), val + err)
    return RealInterval(0.0, 2 * math.asinh((abs(z0) + r) / 2) + slack)


def _axial_params(tau: complex) -> tuple[float, float]:
    disc = cmath.sqrt(tau * tau - 4)
    lam = (tau + disc) / 2
    if abs(lam) < 1:
        lam = (tau - disc) / 2
    length = 2 * math.log(abs(lam))
    angle = 2 * cmath.phase(lam)
    angle = math.remainder(angle, 2 * math.pi)
    if angle <= -math.pi:
        angle += 2 * math.pi
    return length, angle


def classify_trace(t: NFElem, place: int, radius: float = 1e-14) -> IsometryClass:
    """Classify an SL2 element from its trace alone (t = +-2 reported as unipotent)."""
    if t == 2 or t == -2:
        return IsometryClass("parabolic-unipotent")
    v = embed(t, place, radius)
    if _real_at_place(t, place):
        x = v.center.real
        while abs(abs(x) - 2) <= v.radius:
            radius /= 1e4
            v = embed(t, place, radius)
            x = v.center.real
        if abs(x) < 2:
            return IsometryClass("elliptic")
        v = PlaceValue(v.kind, complex(x, 0.0), v.radius)
    length, angle = _axial_params(v.center)
    if _real_at_place(t, place):
        # real trace beyond +-2: pure dilation (angle 0) or half-turn composed (angle pi)
        angle = 0.0 if v.center.real > 0 else math.pi
    iv = translation_length(v)
    return IsometryClass("axial", length, angle, iv)


def classify_sl2(m, place: int, radius: float = 1e-14) -> IsometryClass:
    """Isometry type of a determinant-one matrix (or norm-one quaternion) at a complex place."""
    det = m.det if isinstance(m, Mat2) else m.norm()
    if det != 1:
        raise ValueError("matrix must have determinant 1")
    if m.is_identity(True):
        return IsometryClass("identity")
    return classify_trace(m.trace(), place, radius)


# ---------------------------------------------------------------------------
# Bowditch-type criteria


def bowditch_basic(length) -> bool:
    """Translation length strictly above 2 log(1 + sqrt 2)."""
    if isinstance(length, RealInterval):
        return length.lo > _BC_HI
    return float(length) > _BC_HI


def bowditch_improved(axial=None, *, length: float | None = None,
                      angle: float | None = None, sharp: bool = False) -> bool:
    """min(g) >= arcosh(1 + r_g), or cosh(l) >= 1 + sqrt(2 - 2 cos(theta)) for SL2(C).

    With ``sharp`` the weaker bound min(g) >= arcosh(1 + r_g^2 / 2) is used
    (cosh(l) >= 2 - cos(theta) in SL2(C)), which is exactly the separation
    property; see ``AxialForm.sharp_threshold``.
    """
    if isinstance(axial, AxialForm):
        r = axial.rotation
        return axial.length >= math.acosh(1 + (r * r / 2 if sharp else r))
    if isinstance(axial, IsometryClass):
        length, angle = axial.length, axial.angle
    elif axial is not None:
        length, angle = axial
    if length is None or angle is None:
        raise ValueError("need an AxialForm or a (length, angle) pair")
    r2 = max(0.0, 2 - 2 * math.cos(angle))
    return math.cosh(length) >= 1 + (r2 / 2 if sharp else math.sqrt(r2))


def halfspace_distance(p, q) -> float:
    """Distance in the upper half-space model (curvature -1)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    num = float(np.dot(p - q, p - q))
    return 2 * math.asinh(math.sqrt(num / (4 * p[-1] * q[-1])))


def _q(p, q) -> float:
    # monotone in the distance: cosh(d) - 1 = Q / 2
    d = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    return float(np.dot(d, d)) / (p[-1] * q[-1])


def separation_witness(axial: AxialForm, eps0: float = 0.5) -> tuple[np.ndarray, np.ndarray]:
    """Points x', y' with max(d(x', g y'), d(x', g^-1 y')) < d(x', y').

    y is a unit vector in the plane of largest rotation and x = -y, lifted to
    height eps.  Such a pair exists iff k < ``sharp_threshold()``; dilations
    between that and ``threshold()`` violate the arcosh(1 + r) bound but
    still separate every pair, so they raise as well.
    """
    r = axial.rotation
    if r == 0:
        raise ValueError("no rotation: the separation property always holds")
    if axial.k >= axial.threshold():
        raise ValueError("dilation meets the arcosh(1 + r) bound; no witness exists")
    if axial.k >= axial.sharp_threshold():
        raise ValueError(f"dilation {axial.k!r} is at least the sharp bound "
                         f"{axial.sharp_threshold()!r}; no witness exists")
    m = axial.A.shape[0]
    _, vecs = np.linalg.eigh(axial.A + axial.A.T - 2 * np.eye(m))
    y0 = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    eps = eps0
    for _ in range(80):
        x = np.concatenate([-y0, [eps]])
        y = np.concatenate([y0, [eps]])
        base = _q(x, y)
        if max(_q(x, axial.apply(y)), _q(x, axial.apply(y, -1))) < base:
            return x, y
        eps /= 2
    raise ArithmeticError("witness perturbation failed")


class SL2Action:
    """Poincare extension of a complex 2x2 matrix of determinant 1 to H^3."""

    def __init__(self, m):
        m = np.asarray(m, dtype=complex)
        self.m = m / cmath.sqrt(np.linalg.det(m))
        a, b, c, d = self.m.ravel()
        self.inv = np.array([[d, -b], [-c, a]])

    @staticmethod
    def _act(m, p):
        a, b, c, d = m.ravel()
        z = complex(p[0], p[1])
        h = float(p[2])
        w = c * z + d
        den = abs(w) ** 2 + abs(c) ** 2 * h * h
        z2 = ((a * z + b) * w.conjugate() + a * c.conjugate() * h * h) / den
        return np.array([z2.real, z2.imag, h / den])

    def apply(self, p, power: int = 1):
        if power == 1:
            return self._act(self.m, p)
        if power == -1:
            return self._act(self.inv, p)
        raise ValueError("power must be +1 or -1")

    @property
    def dim(self) -> int:
        return 3


@dataclass
class SeparationReport:
    samples: int
    failures: int
    min_margin: float
    counterexample: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        out = {"samples": self.samples, "failures": self.failures,
               "min_margin": repr(self.min_margin)}
        if self.counterexample is not None:
            out["counterexample"] = [list(map(float, p)) for p in self.counterexample]
        return out


def _random_halfspace(rng: random.Random, dim: int) -> np.ndarray:
    p = [rng.gauss(0, 1) for _ in range(dim - 1)]
    p.append(math.exp(rng.uniform(-1.5, 1.5)))
    return np.array(p)


def bisector_separation_test(g, samples: int | Iterable = 1000,
                             seed: int = 0) -> SeparationReport:
    """Check max(d(g x, y), d(g^-1 x, y)) > d(x, y) on sampled or given pairs.

    ``g`` is an AxialForm, an SL2Action or a complex 2x2 matrix.  A failure
    is a counterexample to the bisector separation property.
    """
    if not isinstance(g, (AxialForm, SL2Action)):
        g = SL2Action(g)
    if isinstance(samples, int):
        rng = random.Random(seed)
        pairs = [(_random_halfspace(rng, g.dim), _random_halfspace(rng, g.dim))
                 for _ in range(samples)]
    else:
        pairs = [(np.asarray(x, float), np.asarray(y, float)) for x, y in samples]
    failures = 0
    worst = math.inf
    witness = None
    for x, y in pairs:
        gx, gix = g.apply(x), g.apply(x, -1)
        if np.allclose(gx, x, rtol=0, atol=1e-15):
            continue
        base = _q(x, y)
        far = max(_q(gx, y), _q(gix, y))
        margin = math.acosh(1 + far / 2) - math.acosh(1 + base / 2)
        if not far > base:
            failures += 1
            if witness is None:
                witness = (x, y)
        worst = min(worst, margin)
    return SeparationReport(len(pairs), failures, worst, witness)


# ---------------------------------------------------------------------------
# certificates


def _offender(el, cls: IsometryClass, trace) -> dict:
    return {"word": el.word, "trace": trace.to_json(), "class": cls.to_json()}


def certify_ball(g: GroupDef, r: int, systole_traces: Iterable[NFElem] | None = None,
                 place: int | None = None, trace_cutoff: float = 2.5,
                 max_size: int = MAX_BALL) -> dict:
    """Check every non-identity element of the radius-r ball against the criteria.

    Elliptic elements, non-unipotent parabolics and axial elements with
    cosh(l) < 1 + sqrt(2 - 2 cos(theta)) are obstructions.  When
    ``systole_traces`` is the complete set of traces of elements with
    translation length <= ``trace_cutoff`` (and the cutoff exceeds
    2 log(1 + sqrt 2)), a clean run certifies the whole group.
    """
    if r < 1:
        raise ValueError("radius must be at least 1")
    if place is None:
        place = g.place if g.place is not None else (g.field.complex_places() or [0])[0]
    base = {"schema": "diffuse-lab/1", "radius": r, "criterion": "arcosh(1+r)",
            "place": place}
    if not g.generators:
        return {**base, "verdict": "PASS-global", "note": "trivial group"}
    B = ball(g, r, max_size=max_size)
    seen: dict = {}
    for el in B:
        if el.is_identity():
            continue
        t = el.matrix.trace()
        tk = (t.key(), (-t).key()) if g.projective else (t.key(),)
        cls = seen.get(tk[0])
        if cls is None:
            cls = classify_sl2(el.matrix, place)
            for k in tk:
                seen[k] = cls
        if cls.kind in ("elliptic", "parabolic-nonunipotent"):
            return {**base, "verdict": "FAIL", "offender": _offender(el, cls, t)}
        if cls.kind == "axial" and not bowditch_improved(cls):
            return {**base, "verdict": "FAIL", "offender": _offender(el, cls, t)}
    if systole_traces is None:
        return {**base, "verdict": "PASS-up-to-radius", "ball_size": len(B),
                "note": "no obstruction up to radius r; unseen conjugacy classes are not bounded"}
    if not trace_cutoff > _BC_HI:
        raise ValueError("trace cutoff must exceed 2 log(1 + sqrt 2)")
    checked = []
    for t in systole_traces:
        cls = classify_trace(t, place)
        checked.append({"trace": t.to_json(), "class": cls.to_json()})
        if cls.kind == "elliptic" or (cls.kind == "axial" and not bowditch_improved(cls)):
            return {**base, "verdict": "FAIL", "offender": {"word": None, "trace": t.to_json(),
                                                            "class": cls.to_json()}}
    return {**base, "verdict": "PASS-global", "ball_size": len(B), "traces": checked,
            "trace_cutoff": trace_cutoff}
