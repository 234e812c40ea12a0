"""Quaternion algebras (a, b | K) over a number field.

Basis 1, i, j, k with i^2 = a, j^2 = b, k = ij = -ji.  Reduced norm
``t^2 - a x^2 - b y^2 + ab z^2`` and reduced trace ``2t``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .qfield import FieldError, NFElem, NumberField, PlaceValue, embed, val_pi

__all__ = [
    "QuatAlgebra",
    "QuatElem",
    "q_mul",
    "q_conj",
    "q_trace",
    "q_norm",
    "w_valuation",
    "embed_sl2",
    "IntervalMatrix",
    "solve_in_basis",
    "in_order",
]


@dataclass(frozen=True, eq=False)
class QuatAlgebra:
    field: NumberField
    a: NFElem
    b: NFElem

    def __post_init__(self):
        if self.a.is_zero() or self.b.is_zero():
            raise FieldError("quaternion algebra parameters must be nonzero")

    def __call__(self, t=0, x=0, y=0, z=0) -> "QuatElem":
        f = self.field
        return QuatElem(self, f(t) if not isinstance(t, NFElem) else t,
                        f(x) if not isinstance(x, NFElem) else x,
                        f(y) if not isinstance(y, NFElem) else y,
                        f(z) if not isinstance(z, NFElem) else z)

    @property
    def one(self) -> "QuatElem":
        return self(1)

    @property
    def i(self) -> "QuatElem":
        return self(0, 1)

    @property
    def j(self) -> "QuatElem":
        return self(0, 0, 1)

    @property
    def k(self) -> "QuatElem":
        return self(0, 0, 0, 1)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data, field: NumberField | None = None) -> "QuatAlgebra":
        fld = field or NumberField.from_json(data["field"])
        return cls(fld, NFElem.from_json(fld, data["a"]), NFElem.from_json(fld, data["b"]))

    def element_from_json(self, data) -> "QuatElem":
        return QuatElem(self, *(NFElem.from_json(self.field, c) for c in data))


class QuatElem:
    __slots__ = ("alg", "t", "x", "y", "z")

    def __init__(self, alg: QuatAlgebra, t: NFElem, x: NFElem, y: NFElem, z: NFElem):
        self.alg = alg
        self.t, self.x, self.y, self.z = t, x, y, z

    @property
    def field(self) -> NumberField:
        return self.alg.field

    def coeffs(self) -> tuple:
        return (self.t, self.x, self.y, self.z)

    def _same(self, other):
        if isinstance(other, (int, NFElem)):
            return self.alg(other)
        if not isinstance(other, QuatElem):
            return NotImplemented
        if other.alg is not self.alg:
            raise FieldError("quaternion algebra mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return QuatElem(self.alg, *(p + q for p, q in zip(self.coeffs(), other.coeffs())))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.alg, -self.t, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, NFElem)):
            s = self.field(other) if isinstance(other, int) else other
            return QuatElem(self.alg, self.t * s, self.x * s, self.y * s, self.z * s)
        other = self._same(other)
        if other is NotImplemented:
            return other
        a, b = self.alg.a, self.alg.b
        t1, x1, y1, z1 = self.coeffs()
        t2, x2, y2, z2 = other.coeffs()
        return QuatElem(
            self.alg,
            t1 * t2 + a * (x1 * x2) + b * (y1 * y2) - a * b * (z1 * z2),
            t1 * x2 + x1 * t2 + b * (z1 * y2 - y1 * z2),
            t1 * y2 + y1 * t2 + a * (x1 * z2 - z1 * x2),
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, other):
        return self * other

    def conj(self) -> "QuatElem":
        return QuatElem(self.alg, self.t, -self.x, -self.y, -self.z)

    def norm(self) -> NFElem:
        a, b = self.alg.a, self.alg.b
        return self.t * self.t - a * (self.x * self.x) - b * (self.y * self.y) + a * b * (self.z * self.z)

    def trace(self) -> NFElem:
        return self.t + self.t

    def inverse(self) -> "QuatElem":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("quaternion of norm zero")
        if n == 1:
            return self.conj()
        return self.conj() * n.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.alg.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def key(self, projective: bool = False) -> tuple:
        cs = self.coeffs()
        if projective:
            for c in cs:
                lead = next((v for v in c.num if v), 0)
                if lead:
                    if lead < 0:
                        cs = tuple(-v for v in cs)
                    break
        return tuple(c.key() for c in cs)

    def is_identity(self, projective: bool = False) -> bool:
        if not (self.x.is_zero() and self.y.is_zero() and self.z.is_zero()):
            return False
        return self.t == 1 or (projective and self.t == -1)

    def __eq__(self, other):
        if isinstance(other, (int, NFElem)):
            other = self.alg(other)
        return isinstance(other, QuatElem) and self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.key())

    def mod_image(self, p: int, ctx) -> tuple:
        """2x2 image mod p under the splitting i -> diag(s, -s), j -> [[0, 1], [b, 0]].

        ``ctx`` is ``(root, s)`` with ``s^2 = a`` mod p.
        """
        root, s = ctx
        t, x, y, z = (c.mod_image(p, root) for c in self.coeffs())
        bb = self.alg.b.mod_image(p, root)
        return ((t + x * s) % p, (y + z * s) % p, bb * (y - z * s) % p, (t - x * s) % p)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs()]

    def __repr__(self):
        return f"QuatElem({self.t}; {self.x}; {self.y}; {self.z})"


def q_mul(u: QuatElem, v: QuatElem) -> QuatElem:
    return u * v


def q_conj(u: QuatElem) -> QuatElem:
    return u.conj()


def q_trace(u: QuatElem) -> NFElem:
    return u.trace()


def q_norm(u: QuatElem) -> NFElem:
    return u.norm()


def w_valuation(u: QuatElem, pi: NFElem):
    """``w(u) = v_pi(n(u))``; u lies in ``1 + Q^m`` iff ``w(u - 1) >= m``."""
    return val_pi(u.norm(), pi)


# ---------------------------------------------------------------------------
# complex splitting


_EPS = 2.0**-50


def _dmul(p: PlaceValue, q: PlaceValue) -> PlaceValue:
    c = p.center * q.center
    r = abs(p.center) * q.radius + abs(q.center) * p.radius + p.radius * q.radius
    return PlaceValue("complex", c, r + _EPS * (abs(c) + r))


def _dadd(p: PlaceValue, q: PlaceValue, sign: int = 1) -> PlaceValue:
    c = p.center + sign * q.center
    r = p.radius + q.radius
    return PlaceValue("complex", c, r + _EPS * (abs(c) + r))


def _dsqrt(p: PlaceValue) -> PlaceValue:
    s = cmath.sqrt(p.center)
    if p.radius == 0:
        return PlaceValue("complex", s, _EPS * abs(s))
    if p.radius >= abs(p.center):
        raise FieldError("square root of an interval containing 0")
    return PlaceValue("complex", s, p.radius / abs(s) + _EPS * abs(s))


@dataclass(frozen=True)
class IntervalMatrix:
    """2x2 matrix of complex disks."""

    entries: tuple  # (m11, m12, m21, m22) PlaceValues

    def det(self) -> PlaceValue:
        m11, m12, m21, m22 = self.entries
        return _dadd(_dmul(m11, m22), _dmul(m12, m21), -1)

    def trace(self) -> PlaceValue:
        return _dadd(self.entries[0], self.entries[3])

    def __mul__(self, o: "IntervalMatrix") -> "IntervalMatrix":
        a, b, c, d = self.entries
        e, f, g, h = o.entries
        return IntervalMatrix((
            _dadd(_dmul(a, e), _dmul(b, g)),
            _dadd(_dmul(a, f), _dmul(b, h)),
            _dadd(_dmul(c, e), _dmul(d, g)),
            _dadd(_dmul(c, f), _dmul(d, h)),
        ))

    def contains_scalar(self, s: complex) -> bool:
        a, b, c, d = self.entries
        return a.contains(s) and d.contains(s) and b.contains(0) and c.contains(0)

    def contains_pm_identity(self) -> bool:
        return self.contains_scalar(1) or self.contains_scalar(-1)

    def center(self) -> list[list[complex]]:
        a, b, c, d = (e.center for e in self.entries)
        return [[a, b], [c, d]]

    def radius(self) -> float:
        return max(e.radius for e in self.entries)


def embed_sl2(u: QuatElem, place: int, radius: float = 1e-12) -> IntervalMatrix:
    """Image of ``u`` under i -> diag(s, -s), j -> [[0, 1], [b, 0]] with s^2 = a."""
    alg = u.alg
    t, x, y, z = (embed(c, place, radius) for c in u.coeffs())
    ta = embed(alg.a, place, radius)
    tb = embed(alg.b, place, radius)
    s = _dsqrt(ta)
    xs, zs = _dmul(x, s), _dmul(z, s)
    return IntervalMatrix((
        _dadd(t, xs),
        _dadd(y, zs),
        _dmul(tb, _dadd(y, zs, -1)),
        _dadd(t, xs, -1),
    ))


def solve_in_basis(u: QuatElem, basis) -> list[NFElem]:
    """Coordinates of ``u`` with respect to a K-basis of the algebra."""
    n = 4
    rows = [[basis[c].coeffs()[r] for c in range(n)] + [u.coeffs()[r]] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            raise FieldError("basis is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [e * inv for e in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                fac = rows[r][col]
                rows[r] = [e - fac * p for e, p in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def in_order(u: QuatElem, basis) -> bool:
    """Membership in the O_K-order spanned by ``basis``."""
    return all(u.field.is_integral(c) for c in solve_in_basis(u, basis))
