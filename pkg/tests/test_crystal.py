import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diffuse_lab.crystal import (
    AffineIso, CrystGroup, FiniteGroup, TrivialHolonomyWarning, ball_at, betti1,
    construct_ravel, holonomy_class, is_solvable, promislow_group, sylow_cyclic,
)
from diffuse_lab.linrep import ResourceError
from diffuse_lab.ravel import find_ravel, is_ravel

H = Fraction(1, 2)


@pytest.fixture(scope="module")
def promislow():
    return promislow_group()


def signed_perm(n):
    return st.permutations(range(n)).flatmap(
        lambda p: st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n).map(
            lambda s: [[s[i] if p[i] == j else 0 for j in range(n)] for i in range(n)]))


def affine(n):
    trans = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=n, max_size=n)
    return st.builds(AffineIso, signed_perm(n), trans)


def fixed_rank(G):
    """Dimension of the common fixed space of the point group, by floating rank."""
    n = G.dim
    rows = np.vstack([np.array(M, dtype=float) - np.eye(n) for M in G.point_group])
    return n - np.linalg.matrix_rank(rows)


def has_torsion_brute(G, r=3):
    """Look for a non-identity element of finite order among short elements."""
    for g in ball_at(G, None, r):
        if g.is_identity():
            continue
        k = 1
        P = g
        while not all(P.linear[i][j] == (i == j) for i in range(G.dim) for j in range(G.dim)):
            P = P * g
            k += 1
        if P.is_identity():
            return True
    return False


# affine isometries -----------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(affine(3), affine(3), st.lists(st.fractions(max_denominator=5, min_value=-4, max_value=4),
                                      min_size=3, max_size=3))
def test_affine_action(g, h, x):
    assert (g * h)(x) == g(h(x))
    assert g.inverse()(g(x)) == tuple(x)
    assert (g * g.inverse()).is_identity()


@settings(max_examples=30, deadline=None)
@given(affine(2), affine(2))
def test_affine_mod_image(g, h):
    p = 2147483647
    m = 3

    def mul(a, b):
        return tuple(sum(a[i * m + k] * b[k * m + j] for k in range(m)) % p
                     for i in range(m) for j in range(m))

    assert (g * h).mod_image(p) == mul(g.mod_image(p), h.mod_image(p))


def test_affine_json_and_key():
    g = AffineIso([[0, -1], [1, 0]], [H, Fraction(1, 3)])
    assert AffineIso.from_json(json.loads(json.dumps(g.to_json()))).key == g.key
    with pytest.raises(ValueError):
        AffineIso([[1, 0], [0, 1]], [0, 0, 0])


# crystallographic groups -------------------------------------------------


def test_promislow_invariants(promislow):
    assert betti1(promislow) == 0 == fixed_rank(promislow)
    hol = promislow.holonomy()
    assert hol.order == 4 and hol.exponent() == 2
    assert promislow.is_torsion_free()
    assert not has_torsion_brute(promislow)
    assert holonomy_class(hol) == "mixed"


def test_promislow_ravel(promislow):
    res = construct_ravel(promislow)
    assert len(res.ravel) >= 2
    assert is_ravel(res.ravel)
    assert res.radius > 0
    assert res.attempts[-1][2] == len(res.ravel)
    for o in ("reversed", 3):
        assert find_ravel(ball_at(promislow, None, res.radius), order=o) == res.ravel


def test_promislow_small_radius_ravel(promislow):
    R = find_ravel(ball_at(promislow, None, 1))
    assert len(R) == 19 and is_ravel(R)


def test_promislow_json_roundtrip(promislow):
    g = CrystGroup.from_json(json.dumps(promislow.to_json()))
    assert len(g.point_group) == 4 and g.is_torsion_free()


def test_translation_lattice_is_diffuse():
    g = CrystGroup([AffineIso.translation_by([1, 0]), AffineIso.translation_by([0, 1])])
    assert betti1(g) == 2
    assert g.is_torsion_free()
    for r in (1, 2, 3):
        A = ball_at(g, [H, Fraction(1, 3)], r)
        for o in (None, "reversed", 5):
            assert len(find_ravel(A, order=o)) == 0
    with pytest.raises(ValueError):
        construct_ravel(g)


def test_klein_bottle_group():
    g = CrystGroup([AffineIso([[1, 0], [0, -1]], [H, 0])])
    assert betti1(g) == 1
    assert g.is_torsion_free()
    assert not has_torsion_brute(g)
    with pytest.raises(ValueError):
        construct_ravel(g)


def test_point_reflection_has_torsion():
    g = CrystGroup([AffineIso([[-1, 0], [0, -1]], [0, 0])])
    assert betti1(g) == 0
    assert not g.is_torsion_free()
    assert has_torsion_brute(g)
    res = construct_ravel(g, r0=H)
    assert len(res.ravel) == 2 and is_ravel(res.ravel)


def test_torsion_with_translation_part():
    # x -> -x + 1/2 fixes 1/4: torsion although t is not a lattice vector
    g = CrystGroup([AffineIso([[-1]], [H])])
    assert not g.is_torsion_free()
    assert has_torsion_brute(g)


def test_non_standard_lattice():
    g = CrystGroup([AffineIso([[1, 0], [0, -1]], [1, 0])], lattice=[[2, 0], [0, 1]])
    assert len(g.point_group) == 2
    assert g.is_torsion_free()
    data = g.to_json()
    assert CrystGroup.from_json(data).lattice == g.lattice


def test_invalid_groups():
    with pytest.raises(ValueError):
        CrystGroup([AffineIso([[1, 1], [0, 1]], [0, 0])])
    with pytest.raises(ValueError):
        CrystGroup([AffineIso([[0, 1], [1, 0]], [0, 0])], gram=[[1, 0], [0, 2]])
    with pytest.raises(ValueError):
        CrystGroup([AffineIso([[0, -1], [1, 0]], [0, 0])], lattice=[[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        CrystGroup([])


def test_ball_at_counts():
    g = CrystGroup([AffineIso.translation_by([1, 0]), AffineIso.translation_by([0, 1])])
    for r in (0, 1, 2, 3):
        brute = sum(1 for x, y in itertools.product(range(-r, r + 1), repeat=2) if x * x + y * y <= r * r)
        assert len(ball_at(g, None, r)) == brute
    with pytest.raises(ResourceError):
        ball_at(g, None, 50, max_size=100)


# finite groups -------------------------------------------------------------


def test_holonomy_examples():
    assert holonomy_class(FiniteGroup.cyclic(6)) == "diffuse"
    assert holonomy_class(FiniteGroup.alternating(5)) == "anti-diffuse"
    assert holonomy_class(FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(2))) == "mixed"
    assert holonomy_class(FiniteGroup.dihedral(6)) == "diffuse"
    assert holonomy_class(FiniteGroup.dihedral(8)) == "mixed"
    assert holonomy_class(FiniteGroup.alternating(4)) == "mixed"
    assert holonomy_class(FiniteGroup.symmetric(5)) == "anti-diffuse"


def test_trivial_holonomy_warns():
    with pytest.warns(TrivialHolonomyWarning):
        assert holonomy_class(FiniteGroup([[0]])) == "diffuse"


def test_solvability():
    assert is_solvable(FiniteGroup.symmetric(4))
    assert not is_solvable(FiniteGroup.alternating(5))
    assert FiniteGroup.alternating(5).order == 60
    assert FiniteGroup.symmetric(4).order == 24


def test_sylow():
    assert sylow_cyclic(FiniteGroup.cyclic(6), 2)
    klein = FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(2))
    assert not sylow_cyclic(klein, 2)
    assert not sylow_cyclic(FiniteGroup.dihedral(8), 2)
    with pytest.raises(ValueError):
        sylow_cyclic(FiniteGroup.cyclic(6), 5)


def test_quaternion_group_is_mixed():
    # Q8 as 4x4 integer matrices via the regular representation of i, j
    i = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
    j = ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0))

    def mm(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(4)) for c in range(4)) for r in range(4))

    elems = {tuple(tuple(int(r == c) for c in range(4)) for r in range(4))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in (i, j):
                y = mm(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    G = FiniteGroup.from_elements(sorted(elems), mm)
    assert G.order == 8 and G.exponent() == 4
    assert holonomy_class(G) == "mixed"


def test_invalid_tables():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        FiniteGroup([])
    bad = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]
    with pytest.raises(ValueError):
        FiniteGroup(bad)
    # Latin square with identity that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ValueError):
        FiniteGroup(loop)


def test_identity_not_at_zero():
    G = FiniteGroup.cyclic(5).relabel([3, 0, 1, 2, 4])
    assert G.identity == 3
    assert holonomy_class(G) == "diffuse"


@pytest.mark.parametrize("name,cls", [("z6", "diffuse"), ("a5", "anti-diffuse"), ("d8", "mixed"),
                                      ("z2xz2", "mixed"), ("a4", "mixed")])
def test_bundled_groups(name, cls):
    from importlib import resources
    path = resources.files("diffuse_lab").joinpath("data", f"group_{name}.json")
    G = FiniteGroup.from_json(json.loads(path.read_text()))
    assert holonomy_class(G) == cls
    assert FiniteGroup.from_json(G.to_json()).table == G.table


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["z6", "s3", "d8", "a4", "z2z2"]), st.randoms(use_true_random=False))
def test_class_invariant_under_relabelling(name, rnd):
    G = {"z6": FiniteGroup.cyclic(6), "s3": FiniteGroup.symmetric(3), "d8": FiniteGroup.dihedral(8),
         "a4": FiniteGroup.alternating(4),
         "z2z2": FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(2))}[name]
    perm = list(range(G.order))
    rnd.shuffle(perm)
    assert holonomy_class(G.relabel(perm)) == holonomy_class(G)
