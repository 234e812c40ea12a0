import math
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from diffuse_lab.qfield import embed, nf_new
from diffuse_lab.quat import (
    QuatAlgebra, embed_sl2, in_order, q_conj, q_mul, q_norm, q_trace, solve_in_basis,
    w_valuation,
)

K = nf_new([-1, 1, 0, 1])
ALPHA = K.gen
PI = ALPHA + 1
D = QuatAlgebra(K, K(-1), K(-3))

coef = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(K)
quats = st.tuples(coef, coef, coef, coef).map(lambda c: D(*c))


def test_norms_of_units():
    assert q_norm(D.i) == 1
    assert q_norm(D.j) == 3
    assert q_norm(D.k) == 3


def test_anticommute():
    assert D.i * D.j + D.j * D.i == D(0)
    assert D.i * D.j == D.k
    assert D.i * D.i == D(-1)
    assert D.j * D.j == D(-3)


def test_generator_has_norm_one(appendix):
    assert q_norm(appendix.a) == 1
    assert q_norm(appendix.b) == 1


def test_generators_in_order(appendix):
    for q in (appendix.a, appendix.b):
        assert in_order(q, appendix.order_basis)
    assert solve_in_basis(appendix.a, appendix.order_basis) == [K(1), ALPHA, ALPHA, ALPHA - 1]
    half = appendix.field(Fraction(1, 2))
    assert not in_order(appendix.algebra.i * half, appendix.order_basis)


def test_w_valuation_examples(appendix):
    B, pi = appendix.algebra, appendix.pi
    one = B.one
    assert w_valuation(one, pi) == 0
    assert w_valuation(B(pi), pi) == 2
    assert w_valuation(B(0), pi) == math.inf
    lets = appendix.letters()
    for g in "cdef":
        assert w_valuation(lets[g] - one, pi) == 3
    assert w_valuation(appendix.a - one, pi) == 1


def test_embed_identity():
    m = embed_sl2(D.one, 1)
    assert m.contains_scalar(1)
    assert m.radius() < 1e-14


def test_embed_generator(appendix):
    m = embed_sl2(appendix.a, 1)
    al = appendix.alpha
    tr = embed(al * al + 1, 1)
    assert abs(m.trace().center - tr.center) <= m.trace().radius + tr.radius + 1e-12
    assert m.det().contains(1)


def test_relators_embed_to_identity(appendix):
    from diffuse_lab.weeks import M_RELATORS, N_RELATORS
    for r in M_RELATORS + N_RELATORS:
        q = appendix.evaluate(r)
        assert q.is_identity(projective=True)
        assert embed_sl2(q, 1).contains_pm_identity()


def test_embed_is_multiplicative(appendix):
    u, v = appendix.a, appendix.b * appendix.a
    mu, mv, muv = embed_sl2(u, 1), embed_sl2(v, 1), embed_sl2(u * v, 1)
    prod = [[sum(mu.center()[i][k] * mv.center()[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]
    for i in range(2):
        for j in range(2):
            assert abs(prod[i][j] - muv.center()[i][j]) < 1e-9


@settings(max_examples=40, deadline=None)
@given(quats, quats)
def test_norm_multiplicative(u, v):
    assert q_norm(q_mul(u, v)) == q_norm(u) * q_norm(v)


@settings(max_examples=40, deadline=None)
@given(quats, quats)
def test_trace_symmetric(u, v):
    assert q_trace(u * v) == q_trace(v * u)


@settings(max_examples=40, deadline=None)
@given(quats)
def test_conj_gives_norm(u):
    assert u * q_conj(u) == D(q_norm(u))
    assert u + q_conj(u) == D(q_trace(u))


@settings(max_examples=40, deadline=None)
@given(quats, quats)
def test_w_valuation_additive(u, v):
    assert w_valuation(u * v, PI) == w_valuation(u, PI) + w_valuation(v, PI)


@settings(max_examples=30, deadline=None)
@given(quats, quats)
def test_mod_image_is_multiplicative(u, v):
    from diffuse_lab.ravel import _PRIMES, modular_context
    # a = -1 needs p = 1 mod 4 for a square root
    p, ctx = next((p, c) for p in _PRIMES if (c := modular_context(u, p)) is not None)
    a, b = u.mod_image(p, ctx), v.mod_image(p, ctx)
    prod = (
        (a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p,
    )
    assert tuple(x % p for x in (u * v).mod_image(p, ctx)) == prod
