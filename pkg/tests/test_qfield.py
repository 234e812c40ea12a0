import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffuse_lab.qfield import (
    FieldError, NumberField, NFElem, embed, nf_add, nf_inv, nf_mul, nf_new, nf_norm,
    roots_mod_p, val_pi,
)

K = nf_new([-1, 1, 0, 1])
ALPHA = K.gen
PI = ALPHA + 1

small = st.integers(-6, 6)
rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def elems(field, coeff=rat):
    return st.lists(coeff, min_size=field.degree, max_size=field.degree).map(field)


integral = elems(K, small)
anyK = elems(K)


def test_places_of_cubic_field():
    assert K.degree == 3
    assert K.places == ["real", "complex"]
    assert (K.r1, K.r2) == (1, 1)


def test_degree_one_field_is_q():
    Q = nf_new([-1, 1])
    x, y = Q(Fraction(2, 3)), Q(Fraction(-5, 7))
    assert (x * y).rational() == Fraction(-10, 21)
    assert (x + y).rational() == Fraction(-1, 21)
    assert Q.gen.rational() == 1


@pytest.mark.parametrize("poly", [[1, -2, 1], [0, 0, 1], [4, 4, 1]])
def test_rejects_nonsquarefree(poly):
    with pytest.raises(FieldError):
        nf_new(poly)


@pytest.mark.parametrize("poly", [[1, 2], [2, 0, 3], [1, Fraction(1, 2), 1], [5]])
def test_rejects_bad_minpoly(poly):
    with pytest.raises(FieldError):
        nf_new(poly)


def test_rejects_rational_root():
    with pytest.raises(FieldError):
        nf_new([-2, 1, 1])  # (x - 1)(x + 2)


def test_alpha_cubed():
    assert ALPHA * ALPHA * ALPHA == 1 - ALPHA


def test_inverse_of_pi():
    assert nf_mul(PI, nf_inv(PI)) == K.one


def test_weeks_minpoly_relation(W):
    x = W.gen
    assert x**6 + 2 * x**4 - x**3 + 2 * x**2 == -1


def test_norms():
    assert nf_norm(PI) == 3
    assert nf_norm(K.zero) == 0
    assert nf_norm(K.one) == 1
    assert nf_norm(ALPHA) == 1


def test_norm_of_alpha_matches_embeddings():
    r = embed(ALPHA, 0).center.real
    c = embed(ALPHA, 1).center
    assert r * abs(c) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_embed_examples():
    c = embed(ALPHA, K.complex_places()[0], 1e-10)
    assert c.contains(complex(-0.3411639, 1.1615414), slack=1e-6)
    assert c.radius <= 1e-10
    r = embed(ALPHA, K.real_places()[0], 1e-10)
    assert abs(r.real - 0.6823278) < 1e-6
    q = embed(K(Fraction(7, 2)), 1)
    assert q.center == 3.5 and q.radius == 0


def test_real_place_by_bisection():
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(60):
        mid = (lo + hi) / 2
        if mid**3 + mid - 1 > 0:
            hi = mid
        else:
            lo = mid
    assert embed(ALPHA, 0, 1e-15).contains(float(mid), slack=1e-15)


def test_val_pi_examples():
    assert val_pi(PI**3, PI) == 3
    assert val_pi(K(3), PI) == 1
    assert val_pi(K.zero, PI) == math.inf
    assert val_pi(K.one, PI) == 0


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        nf_inv(K.zero)


def test_mixing_fields(W):
    with pytest.raises(FieldError):
        ALPHA + W.gen


def test_json_roundtrip():
    a = K([Fraction(1, 3), -2, Fraction(5, 4)])
    assert NFElem.from_json(K, a.to_json()) == a
    assert NumberField.from_json(K.to_json()).minpoly == K.minpoly


@settings(max_examples=60, deadline=None)
@given(anyK, anyK, anyK)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert nf_add(a, -a) == K.zero


@settings(max_examples=60, deadline=None)
@given(anyK)
def test_inverse_law(a):
    if a.is_zero():
        return
    assert a * a.inverse() == K.one


@settings(max_examples=40, deadline=None)
@given(integral, integral)
def test_norm_multiplicative(a, b):
    assert nf_norm(a * b) == nf_norm(a) * nf_norm(b)


@settings(max_examples=40, deadline=None)
@given(integral, integral)
def test_val_pi_additive(a, b):
    assert val_pi(a * b, PI) == val_pi(a, PI) + val_pi(b, PI)


@settings(max_examples=40, deadline=None)
@given(anyK, anyK, st.sampled_from([0, 1]))
def test_embed_homomorphism(a, b, place):
    ea, eb, eab = embed(a, place), embed(b, place), embed(a * b, place)
    bound = abs(ea.center) * eb.radius + abs(eb.center) * ea.radius + ea.radius * eb.radius
    assert eab.contains(ea.center * eb.center, slack=bound + 1e-12 * (1 + abs(eab.center)))
    es = embed(a + b, place)
    assert es.contains(ea.center + eb.center, slack=ea.radius + eb.radius + 1e-12)


@pytest.mark.parametrize("p", [2147483647, 101, 1009])
def test_roots_mod_p(p):
    f = list(K.minpoly)
    for r in roots_mod_p(f, p):
        assert sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0
    brute = sorted(x for x in range(p) if (x**3 + x - 1) % p == 0) if p < 2000 else None
    if brute is not None:
        assert sorted(roots_mod_p(f, p)) == brute


@settings(max_examples=30, deadline=None)
@given(anyK, anyK)
def test_mod_image_is_ring_map(a, b):
    p = 2147483647
    root = K.modular_root(p)
    assert root is not None
    try:
        ia, ib = a.mod_image(p, root), b.mod_image(p, root)
    except ValueError:
        return
    assert (a * b).mod_image(p, root) == ia * ib % p
    assert (a + b).mod_image(p, root) == (ia + ib) % p
