import math

import pytest

from diffuse_lab.hyp import BOWDITCH_CONSTANT
from diffuse_lab.qfield import embed, val_pi
from diffuse_lab.weeks import (
    LETTER_WORDS, M_RELATORS, N_RELATORS, CaseTree, certify_appendix, leaf_levels,
    load_case_tree, minkowski_gram, perturb_word, systole_enumeration, tree_mutations,
    verify_level, verify_orderability_tree, verify_relators, weeks_pipeline,
)


@pytest.fixture(scope="module")
def systole(appendix):
    return systole_enumeration(appendix)


@pytest.fixture(scope="module")
def tree():
    return load_case_tree()


# appendix group ------------------------------------------------------------


def test_generator_traces(appendix):
    al = appendix.alpha
    assert appendix.a.trace() == al * al + 1
    assert appendix.b.trace() == al * al + 1
    assert (appendix.a * appendix.b).trace() == al
    assert appendix.b == -(appendix.algebra.i * appendix.a * appendix.algebra.i)


def test_all_relators_are_identity(appendix):
    rep = verify_relators(appendix)
    assert rep["all_pass"] and rep["traces_ok"]
    assert set(rep["relators"]) == set(M_RELATORS) | set(N_RELATORS)
    for r in M_RELATORS + N_RELATORS:
        assert abs(rep["relators"][r]["sign"]) == 1


def test_relator_perturbations_fail(appendix):
    for r in M_RELATORS + N_RELATORS:
        for pos in range(len(r)):
            assert not appendix.evaluate(perturb_word(r, pos)).is_identity(projective=True)


def test_letter_words(appendix):
    lets = appendix.letters()
    for ch, w in LETTER_WORDS.items():
        assert lets[ch] == appendix.evaluate(w)
    assert appendix.evaluate("cC").is_identity()
    with pytest.raises(ValueError):
        appendix.evaluate("z")


def test_level_three(appendix):
    rep = verify_level(appendix, samples=100)
    assert rep["all_pass"]
    assert rep["w"] == {"c": 3, "d": 3, "e": 3, "f": 3, "a": 1}
    assert rep["val_tr_cd_minus_2"] >= 3


def test_ec_is_systole_word(appendix):
    al = appendix.alpha
    ec, word = appendix.evaluate("ec"), appendix.groupdef("ab").evaluate("baBaa")
    assert ec == word or ec == -word
    assert val_pi(appendix.evaluate("ec").trace() - 2, appendix.pi) >= 3
    assert appendix.evaluate("ec").trace() in (al * al - al, -(al * al - al))


# systole -----------------------------------------------------------------


def test_triple_count(systole):
    assert systole.triples == 925


def test_trace_set(systole, appendix):
    al = appendix.alpha
    assert set(t.key() for t in systole.traces) == {
        t.key() for t in (appendix.field(2), al * al - al, -2 * al * al + al - 1)}


def test_lengths(systole, appendix):
    al = appendix.alpha
    short = systole.lengths[str(al * al - al)]
    long = systole.lengths[str(-2 * al * al + al - 1)]
    assert abs(short.mid - 1.80203613) < 1e-6
    assert abs(long.mid - 2.33248166) < 1e-6
    assert short.lo > BOWDITCH_CONSTANT
    assert systole.margin_ok
    assert systole.systole == short.lo


def test_triple_filters_by_brute_force(appendix):
    # the real and complex bounds by floating evaluation, away from the boundary
    K, pi = appendix.field, appendix.pi
    count = 0
    for c0 in range(-6, 7):
        for c1 in range(-6, 7):
            for c2 in range(-6, 7):
                if c0 * c0 + c1 * c1 + c2 * c2 > 36:
                    continue
                t = K([c0, c1, c2])
                if val_pi(t - 2, pi) < 3:
                    continue
                if abs(embed(t, 0).real) <= 2 + 1e-9 and abs(embed(t, 1).center) <= 4 + 1e-9:
                    count += 1
    assert count == 3


def test_gram_positive(appendix):
    g = minkowski_gram(appendix.field)
    import numpy as np
    lam = np.linalg.eigvalsh(g).min()
    # |tau_R| <= 2 and |tau_C| <= 4 give |iota(t)|^2 <= 36, hence sum c_i^2 <= 36 / lam
    assert math.ceil(36 / lam) <= 36


def test_certify_appendix(appendix):
    rep = certify_appendix(2, appendix)
    assert rep["verdict"] == "PASS-global"
    assert rep["trace_cutoff"] == pytest.approx(2 * math.acosh(2))


# case tree ---------------------------------------------------------------


def test_tree_passes(tree, appendix):
    cert = verify_orderability_tree(tree, appendix)
    assert cert.verdict == "pass", cert.failures
    assert cert.leaves == 23
    assert not cert.failures


def test_leaves_are_identities(tree, appendix):
    levels = leaf_levels(tree, appendix)
    assert len(levels) == 23
    assert all(v == math.inf for v in levels.values())
    for _, w in tree.leaves():
        assert appendix.evaluate(w) == appendix.algebra.one


def test_every_mutation_fails(tree, appendix):
    muts = list(tree_mutations(tree))
    assert len(muts) > 100
    kinds = {label.split()[0] for label, _ in muts}
    assert kinds == {"flip", "delete", "swap"}
    for label, t in muts:
        assert verify_orderability_tree(t, appendix, fail_fast=True).verdict == "fail", label


def test_structural_errors(appendix):
    bad = CaseTree("x", {"leaf": "c"})
    cert = verify_orderability_tree(bad, appendix)
    assert cert.verdict == "fail"
    assert any("root" in f.reason for f in cert.failures)
    twice = CaseTree("g", {"branch": "g", "pos": {"leaf": "g"}, "neg": {"leaf": "G"}})
    assert any("twice" in f.reason for f in verify_orderability_tree(twice, appendix).failures)


def test_sign_misuse(appendix):
    t = CaseTree("g", {"branch": "h", "pos": {"leaf": "gh"}, "neg": {"leaf": "gh"}})
    cert = verify_orderability_tree(t, appendix)
    assert cert.verdict == "fail"
    assert any(f.reason.startswith("sign-misuse") for f in cert.failures)


def test_tree_json_roundtrip(tree):
    again = CaseTree.from_json(tree.to_json())
    assert list(again.leaves()) == list(tree.leaves())


# Weeks pipeline ------------------------------------------------------------


def test_weeks_pipeline():
    rep = weeks_pipeline(4)
    assert rep["ball"] == 161
    assert rep["spheres"] == [1, 4, 12, 36, 108]
    assert rep["ravel_size"] == 141
    assert rep["ravel_verified"]
    assert 2 <= rep["min_ravel_size"] <= 141
    assert rep["min_ravel_verified"]
    assert all(rep["relators"].values())


def test_weeks_pipeline_small_radius():
    rep = weeks_pipeline(3, minimal=True)
    assert rep["ravel_size"] == 0 and "min_ravel" not in rep
    with pytest.raises(ValueError):
        weeks_pipeline(0)
