"""Exact arithmetic in number fields Q(alpha) with certified complex embeddings.

Elements are stored as an integer numerator vector in the power basis
1, alpha, ..., alpha^(n-1) together with a positive common denominator.
Since the defining polynomial is monic with integer coefficients, products of
integral elements stay integral and the reduction step never introduces
denominators.

Embeddings are certified with root disks: an approximate root ``z`` of a
squarefree polynomial ``p`` of degree ``n`` has a true root within
``n * |p(z) / p'(z)|``.  When the ``n`` disks are pairwise disjoint, each holds
exactly one root, and a disk centred on the real axis then holds a real root.
All of these checks are done with exact Gaussian rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "FieldError",
    "NumberField",
    "NFElem",
    "PlaceValue",
    "RootDisk",
    "nf_new",
    "nf_add",
    "nf_mul",
    "nf_inv",
    "nf_norm",
    "embed",
    "val_pi",
    "certified_roots",
    "roots_mod_p",
    "INFINITY",
]

INFINITY = math.inf


class FieldError(ValueError):
    """Invalid number field data or an undefined field operation."""


# ---------------------------------------------------------------------------
# dense polynomial helpers (low degree first)


def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdiff(p):
    return [k * p[k] for k in range(1, len(p))]


def _pdivmod(a, b):
    a = [Fraction(c) for c in a]
    b = _strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(_strip(a)) >= len(b):
        a = _strip(a)
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
    return _strip(q), _strip(a)


def _pgcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return a
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def _ext_gcd(a, b):
    """Return (g, s) with s*a = g mod b and g monic."""
    r0, r1 = _strip(a), _strip(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    lead = Fraction(r0[-1])
    return [Fraction(c) / lead for c in r0], [Fraction(c) / lead for c in s0]


# ---------------------------------------------------------------------------
# exact Gaussian-rational evaluation and certified root disks


def _geval(p, re, im):
    """Evaluate p at re + i*im exactly (Horner)."""
    vr, vi = Fraction(0), Fraction(0)
    for c in reversed(p):
        vr, vi = vr * re - vi * im + c, vr * im + vi * re
    return vr, vi


def _sqrt_bits(q: Fraction) -> int:
    return 64 + max(0, (q.denominator.bit_length() - q.numerator.bit_length()) // 2)


def _sqrt_up(q: Fraction, bits: int | None = None) -> Fraction:
    """Rational upper bound for sqrt(q), q >= 0."""
    if q <= 0:
        return Fraction(0)
    bits = bits or _sqrt_bits(q)
    scale = 1 << (2 * bits)
    s = math.isqrt(q.numerator * scale // q.denominator) + 1
    return Fraction(s, 1 << bits)


def _sqrt_down(q: Fraction, bits: int | None = None) -> Fraction:
    if q <= 0:
        return Fraction(0)
    bits = bits or _sqrt_bits(q)
    scale = 1 << (2 * bits)
    return Fraction(math.isqrt(q.numerator * scale // q.denominator), 1 << bits)


def _float_up(q: Fraction) -> float:
    f = float(q)
    return f if Fraction(f) >= q else math.nextafter(f, math.inf)


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


@dataclass(frozen=True)
class RootDisk:
    """Closed disk ``|z - center| <= radius`` holding exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def contains_disk(self, other: "RootDisk") -> bool:
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        gap = self.radius - other.radius
        return gap >= 0 and d2 <= gap * gap

    def complex(self) -> complex:
        return complex(float(self.re), float(self.im))


def _disk_at(p, re, im) -> RootDisk | None:
    n = len(p) - 1
    pr, pi_ = _geval(p, re, im)
    dr, di = _geval(_pdiff(p), re, im)
    den = dr * dr + di * di
    if den == 0:
        return None
    r2 = Fraction(n * n) * (pr * pr + pi_ * pi_) / den
    return RootDisk(re, im, _sqrt_up(r2))


def _disjoint(d1: RootDisk, d2: RootDisk) -> bool:
    dist2 = (d1.re - d2.re) ** 2 + (d1.im - d2.im) ** 2
    s = d1.radius + d2.radius
    return dist2 > s * s


def certified_roots(poly: Sequence, dps: int = 30) -> list[RootDisk]:
    """Certified isolating disks for every root of a squarefree polynomial.

    Real roots come first in increasing order, then one disk per complex
    conjugate pair (positive imaginary part), ordered by real then imaginary
    part.  Raises FieldError if certification fails even at high precision.
    """
    p = [Fraction(c) for c in _strip(poly)]
    n = len(p) - 1
    if n < 1:
        raise FieldError("constant polynomial has no roots")
    for attempt in range(6):
        prec = dps * (2**attempt)
        with mpmath.workdps(prec):
            roots = mpmath.polyroots(
                [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p)],
                maxsteps=200 + 50 * prec,
                extraprec=2 * prec,
            )
            tol = mpmath.mpf(10) ** (-(prec // 2))
            disks = []
            for z in roots:
                re = _to_fraction(mpmath.re(z))
                im = _to_fraction(mpmath.im(z))
                if abs(mpmath.im(z)) < tol:
                    im = Fraction(0)
                d = _disk_at(p, re, im)
                if d is None:
                    break
                disks.append(d)
        if len(disks) != n:
            continue
        ok = all(
            _disjoint(disks[i], disks[j]) for i in range(n) for j in range(i + 1, n)
        )
        # a non-real disk must miss the real axis so that its conjugate is separate
        ok = ok and all(d.im == 0 or abs(d.im) > d.radius for d in disks)
        if not ok:
            continue
        real = sorted((d for d in disks if d.is_real), key=lambda d: d.re)
        cplx = sorted((d for d in disks if d.im > 0), key=lambda d: (d.re, d.im))
        if len(real) + 2 * len(cplx) != n:
            continue
        return real + cplx
    raise FieldError("could not certify root disks (is the polynomial squarefree?)")


def _refine_disk(p, disk: RootDisk, target: Fraction) -> RootDisk:
    """Newton-refine a certified disk until its radius is at most ``target``."""
    cur = disk
    dps = 30
    while cur.radius > target:
        dps *= 2
        with mpmath.workdps(dps):
            z0 = mpmath.mpc(
                mpmath.mpf(cur.re.numerator) / cur.re.denominator,
                mpmath.mpf(cur.im.numerator) / cur.im.denominator,
            )
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p)]
            z = z0
            for _ in range(8 + dps // 10):
                fz = mpmath.polyval(coeffs, z)
                dz = mpmath.polyval(coeffs, z, derivative=True)[1]
                if dz == 0:
                    break
                z = z - fz / dz
            re = _to_fraction(mpmath.re(z))
            im = Fraction(0) if cur.is_real else _to_fraction(mpmath.im(z))
        new = _disk_at(p, re, im)
        if new is None or not cur.contains_disk(new):
            if dps > 4000:
                raise FieldError("root refinement failed")
            continue
        cur = new
    return cur


# ---------------------------------------------------------------------------
# number fields


@dataclass(frozen=True)
class PlaceValue:
    """Interval value of an element at a place: a disk (complex) or segment (real)."""

    kind: str
    center: complex
    radius: float

    @property
    def real(self) -> float:
        return self.center.real

    def contains(self, z, slack: float = 0.0) -> bool:
        return abs(complex(z) - self.center) <= self.radius + slack

    def __repr__(self):
        if self.kind == "real":
            return f"PlaceValue({self.center.real!r} ± {self.radius:.3g})"
        return f"PlaceValue({self.center!r} ± {self.radius:.3g})"


class NumberField:
    """The field Q[x]/(minpoly) for a monic squarefree integer polynomial."""

    def __init__(self, minpoly: Sequence[int], integral_basis=None, name: str = "alpha"):
        coeffs = [Fraction(c) for c in minpoly]
        if any(c.denominator != 1 for c in coeffs):
            raise FieldError("minpoly must have integer coefficients")
        coeffs = [int(c) for c in _strip(coeffs)]
        if len(coeffs) < 2:
            raise FieldError("minpoly must have degree >= 1")
        if coeffs[-1] != 1:
            raise FieldError("minpoly must be monic")
        if len(_pgcd(coeffs, _pdiff(coeffs))) > 1:
            raise FieldError("minpoly is not squarefree")
        n = len(coeffs) - 1
        if n > 1:
            root = _rational_root(coeffs)
            if root is not None:
                raise FieldError(f"minpoly has the rational root {root}; it is reducible")
        self.minpoly = tuple(coeffs)
        self.degree = n
        self.name = name
        self._disks = certified_roots(coeffs)
        self.r1 = sum(1 for d in self._disks if d.is_real)
        self.r2 = len(self._disks) - self.r1
        self._refined: dict[int, RootDisk] = {}
        self._basis = None
        if integral_basis is not None:
            self._basis = [self(c) for c in integral_basis]
            self._basis_inv = _inverse_matrix(
                [[Fraction(x) for x in b.coeffs] for b in self._basis]
            )

    # construction helpers -------------------------------------------------

    def __call__(self, value) -> "NFElem":
        if isinstance(value, NFElem):
            if value.field is not self:
                raise FieldError("element belongs to another field")
            return value
        if isinstance(value, (int, Fraction, str)):
            return NFElem.from_fractions(self, [Fraction(value)])
        return NFElem.from_fractions(self, [Fraction(c) for c in value])

    @property
    def gen(self) -> "NFElem":
        if self.degree == 1:
            return self(-self.minpoly[0])
        return self([0, 1])

    @property
    def zero(self) -> "NFElem":
        return NFElem(self, (0,) * self.degree, 1)

    @property
    def one(self) -> "NFElem":
        return NFElem(self, (1,) + (0,) * (self.degree - 1), 1)

    @property
    def places(self) -> list[str]:
        return ["real"] * self.r1 + ["complex"] * self.r2

    def complex_places(self) -> list[int]:
        return [i for i, d in enumerate(self._disks) if not d.is_real]

    def real_places(self) -> list[int]:
        return [i for i, d in enumerate(self._disks) if d.is_real]

    def root_disk(self, place: int, radius=None) -> RootDisk:
        disk = self._refined.get(place, self._disks[place])
        if radius is not None and disk.radius > radius:
            disk = _refine_disk(self.minpoly, disk, Fraction(radius))
            self._refined[place] = disk
        return disk

    def modular_root(self, p: int) -> int | None:
        """A root of the minimal polynomial modulo the prime p, if one exists."""
        cache = self.__dict__.setdefault("_modroots", {})
        if p not in cache:
            roots = roots_mod_p(self.minpoly, p)
            cache[p] = roots[0] if roots else None
        return cache[p]

    # integrality ----------------------------------------------------------

    def integral_coords(self, a: "NFElem") -> list[Fraction]:
        if self._basis is None:
            return [Fraction(c, a.den) for c in a.num]
        v = [Fraction(c, a.den) for c in a.num]
        # coordinates solve sum c_i * basis_i = a, basis rows stored in _basis_inv
        return [sum(v[k] * self._basis_inv[k][i] for k in range(self.degree))
                for i in range(self.degree)]

    def is_integral(self, a: "NFElem") -> bool:
        if self._basis is None:
            return a.den == 1
        return all(c.denominator == 1 for c in self.integral_coords(a))

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"minpoly": list(self.minpoly)}

    @classmethod
    def from_json(cls, data) -> "NumberField":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["minpoly"], integral_basis=data.get("integral_basis"))

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{k}" for k, c in enumerate(self.minpoly) if c)
        return f"NumberField({terms})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)


def _rational_root(coeffs):
    # monic integer polynomial: rational roots are integer divisors of c0
    c0 = coeffs[0]
    if c0 == 0:
        return 0
    a = abs(c0)
    divs = set()
    for d in range(1, math.isqrt(a) + 1):
        if a % d == 0:
            divs.update((d, a // d))
    for d in sorted(divs):
        for r in (d, -d):
            if sum(c * r**k for k, c in enumerate(coeffs)) == 0:
                return r
    return None


def _inverse_matrix(rows):
    n = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise FieldError("integral basis is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


# ---------------------------------------------------------------------------
# reduction modulo primes (used for fingerprinting only; never for decisions)


def _fp_mulmod(a, b, f, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_rem(prod, f, p)


def _fp_rem(a, f, p):
    a = [c % p for c in a]
    n = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) > n:
        c = a.pop() * inv_lead % p
        if c:
            base = len(a) - n
            for i in range(n):
                a[base + i] = (a[base + i] - c * f[i]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_powmod(base, e, f, p):
    result = [1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = [c % p for c in a], [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    while b:
        a = _fp_rem(a, b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def roots_mod_p(poly: Sequence[int], p: int, seed: int = 1) -> list[int]:
    """All roots in F_p of an integer polynomial (Cantor-Zassenhaus splitting)."""
    import random

    f = [c % p for c in poly]
    while f and f[-1] == 0:
        f.pop()
    if len(f) < 2:
        return []
    xp = _fp_powmod([0, 1], p, f, p)
    g = _fp_gcd(f, _psub_mod(xp, [0, 1], p), p)
    rng = random.Random(seed)
    out = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) < 2:
            continue
        if len(h) == 2:
            out.append((-h[0]) * pow(h[1], -1, p) % p)
            continue
        while True:
            d = rng.randrange(p)
            t = _fp_powmod([d, 1], (p - 1) // 2, h, p)
            u = _fp_gcd(h, _psub_mod(t, [1], p), p)
            if 1 < len(u) < len(h):
                stack.append(u)
                stack.append(_fp_div(h, u, p))
                break
    return sorted(out)


def _psub_mod(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    out = [(x - y) % p for x, y in zip(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_div(a, b, p):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return q


def nf_new(minpoly: Sequence[int], integral_basis=None) -> NumberField:
    return NumberField(minpoly, integral_basis=integral_basis)


# ---------------------------------------------------------------------------
# elements


def _reduce_int(prod, minpoly, n):
    # in-place reduction of an integer coefficient list modulo the monic minpoly
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            base = k - n
            for i in range(n):
                prod[base + i] -= c * minpoly[i]
    return prod[:n]


class NFElem:
    """Element of a number field, ``sum(num[k] * alpha**k) / den``."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: NumberField, num: tuple, den: int = 1):
        g = reduce(math.gcd, num, den)
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_fractions(cls, field: NumberField, coeffs: Sequence[Fraction]) -> "NFElem":
        coeffs = list(coeffs)
        if len(coeffs) > field.degree:
            reduced = _pdivmod(coeffs, field.minpoly)[1]
            coeffs = list(reduced)
        coeffs += [Fraction(0)] * (field.degree - len(coeffs))
        den = reduce(lambda a, b: a * b // math.gcd(a, b),
                     (Fraction(c).denominator for c in coeffs), 1)
        num = tuple(int(Fraction(c) * den) for c in coeffs)
        return cls(field, num, den)

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("element is not rational")
        return Fraction(self.num[0], self.den)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        if not isinstance(other, NFElem):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return NFElem(self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        return NFElem(
            self.field,
            tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num)),
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.field.degree
        a, b = self.num, other.num
        prod = [0] * (2 * n - 1)
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n):
                    prod[i + j] += ai * b[j]
        red = _reduce_int(prod, self.field.minpoly, n)
        return NFElem(self.field, tuple(red), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s = _ext_gcd(list(self.num), list(self.field.minpoly))
        if len(g) != 1:
            raise FieldError("element is a zero divisor; minpoly is reducible")
        s = [c * self.den for c in s]
        return NFElem.from_fractions(self.field, s)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, NFElem):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def key(self) -> tuple:
        return self.num + (self.den,)

    def mod_image(self, p: int, root: int) -> int:
        """Image under Z[alpha] -> F_p, alpha -> root; raises if den is not invertible."""
        if self.den % p == 0:
            raise ValueError("denominator divisible by p")
        v = 0
        for c in reversed(self.num):
            v = (v * root + c) % p
        return v * pow(self.den, -1, p) % p

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (column k = self*alpha^k)."""
        n = self.field.degree
        cols = []
        cur = self
        x = self.field.gen
        for _ in range(n):
            cols.append(cur.coeffs)
            cur = cur * x
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly(self) -> list[Fraction]:
        """Characteristic polynomial of multiplication by self, low degree first."""
        return _charpoly(self.mult_matrix())

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: NumberField, data) -> "NFElem":
        if isinstance(data, (int, str)):
            return field(Fraction(data))
        return field([Fraction(c) for c in data])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.field.name if k == 1 else f"{self.field.name}^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _det(m) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / m[col][col]
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _charpoly(m) -> list[Fraction]:
    # Faddeev-LeVerrier
    n = len(m)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk = [[sum(m[i][t] * mk[t][j] for t in range(n)) + coeffs[n - k + 1] * ident[i][j]
               for j in range(n)] for i in range(n)]
        am = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def nf_add(a: NFElem, b: NFElem) -> NFElem:
    return a + b


def nf_mul(a: NFElem, b: NFElem) -> NFElem:
    return a * b


def nf_inv(a: NFElem) -> NFElem:
    return a.inverse()


def nf_norm(a: NFElem) -> Fraction:
    """Field norm, computed as the determinant of the multiplication matrix.

    For a monic minimal polynomial this equals the resultant of the minimal
    polynomial and the polynomial representing ``a``.
    """
    return _det(a.mult_matrix())


# ---------------------------------------------------------------------------
# embeddings


def _abs_up(re: Fraction, im: Fraction) -> Fraction:
    return _sqrt_up(re * re + im * im)


def _eval_bound(coeffs, disk: RootDisk):
    """Exact value at the disk centre and an upper bound on the deviation."""
    vr, vi = _geval(coeffs, disk.re, disk.im)
    if disk.radius == 0:
        return vr, vi, Fraction(0)
    m = _abs_up(disk.re, disk.im) + disk.radius
    err = Fraction(0)
    mk = Fraction(1)  # M^(k-1)
    for k in range(1, len(coeffs)):
        if coeffs[k]:
            err += abs(coeffs[k]) * k * mk
        mk *= m
    return vr, vi, err * disk.radius


def embed(a: NFElem, place: int, radius: float = 1e-12) -> PlaceValue:
    """Certified value of ``a`` at the given place with radius at most ``radius``."""
    f = a.field
    if not 0 <= place < len(f._disks):
        raise FieldError(f"place {place} out of range")
    kind = "real" if f._disks[place].is_real else "complex"
    if a.is_rational():
        return PlaceValue(kind, complex(float(a.rational())), 0.0 if
                          Fraction(float(a.rational())) == a.rational() else
                          abs(float(a.rational())) * 2.0**-52)
    coeffs = a.coeffs
    target = Fraction(radius) / 2
    disk = f.root_disk(place)
    while True:
        vr, vi, err = _eval_bound(coeffs, disk)
        if err <= target:
            break
        # shrink the root disk proportionally to the overshoot
        scale = target / err / 4
        disk = f.root_disk(place, disk.radius * scale)
    center = complex(float(vr), float(vi))
    # rounding of the float conversion
    rounding = (abs(center.real) + abs(center.imag)) * 2.0**-52
    rad = _float_up(err) + rounding
    if kind == "real":
        center = complex(center.real, 0.0)
    return PlaceValue(kind, center, rad)


# ---------------------------------------------------------------------------
# valuations


def val_pi(a: NFElem, pi: NFElem, limit: int = 10_000) -> int | float:
    """pi-adic valuation of an integral element by repeated exact division."""
    f = a.field
    if not f.is_integral(a):
        raise FieldError("val_pi needs an integral element")
    if a.is_zero():
        return INFINITY
    pinv = pi.inverse()
    k = 0
    cur = a
    while k < limit:
        nxt = cur * pinv
        if not f.is_integral(nxt):
            return k
        cur = nxt
        k += 1
    raise FieldError("valuation did not terminate; is pi a unit?")


def parse_rational(s) -> Fraction:
    return Fraction(s) if not isinstance(s, Fraction) else s


def elements_from_json(field: NumberField, items: Iterable) -> list[NFElem]:
    return [NFElem.from_json(field, it) for it in items]
