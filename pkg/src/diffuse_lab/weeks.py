"""The Weeks group and the arithmetic group N.

Two groups live here.  The Weeks group is generated by two matrices over
Q(x), x^6 + 2x^4 - x^3 + 2x^2 + 1 = 0, and is searched for ravels.  The
group N comes from a quaternion algebra over K = Q(alpha),
alpha^3 + alpha - 1 = 0: relators, pi-adic levels, a systole computation
from traces, and a case tree showing that no positive cone exists.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

import numpy as np

from .hyp import BOWDITCH_CONSTANT, _BC_HI, certify_ball, translation_length
from .linrep import GroupDef, Mat2, ball
from .qfield import NFElem, NumberField, embed, nf_new, val_pi
from .quat import QuatAlgebra, QuatElem, w_valuation
from .ravel import ElementSet, Witnesses, find_ravel, is_deletion_minimal, is_extremal, min_ravel

__all__ = [
    "AppendixGroup",
    "CaseTree",
    "Certificate",
    "build_appendix_group",
    "verify_relators",
    "verify_level",
    "systole_enumeration",
    "load_case_tree",
    "verify_orderability_tree",
    "tree_mutations",
    "weeks_groupdef",
    "weeks_pipeline",
    "M_RELATORS",
    "N_RELATORS",
]

M_RELATORS = ("aaBaabbAbb", "abbAbAAbAbb")
N_RELATORS = ("DefDeceFdFcFe", "DeceDecDCEfCEfCfDf", "ECEdFcDfDeceDeccFec", "fCfDecdcFecfDeceDec")

# letters of the case tree and of the N presentation, as words in a, b
LETTER_WORDS = {
    "c": "aaa", "d": "bbb", "e": "baBA", "f": "bABa",
    "g": "aBABB", "h": "abbAb", "n": "aBBAB", "m": "aBaab", "v": "ABAAb",
}

WEEKS_MINPOLY = (1, 0, 2, -1, 2, 0, 1)
WEEKS_RELATORS = ("aabbaaBaB", "aabbAbAbb")


def _data(name: str):
    return resources.files("diffuse_lab").joinpath("data", name)


# ---------------------------------------------------------------------------
# the appendix group


@dataclass
class AppendixGroup:
    field: NumberField
    alpha: NFElem
    pi: NFElem
    algebra: QuatAlgebra
    a: QuatElem
    b: QuatElem
    order_basis: list

    def letters(self) -> dict:
        """Generators a, b and the derived letters c, d, ..., v as quaternions."""
        if "_letters" not in self.__dict__:
            base = GroupDef(self.field, {"a": self.a, "b": self.b}, projective=True)
            out = {"a": self.a, "b": self.b}
            out.update({k: base.evaluate(w) for k, w in LETTER_WORDS.items()})
            self.__dict__["_letters"] = out
        return dict(self.__dict__["_letters"])

    def groupdef(self, names: str = "ab", place: int = 1) -> GroupDef:
        """Projective GroupDef on a subset of the letters (``"cdef"`` gives the level-3 group)."""
        lets = self.letters()
        return GroupDef(self.field, {ch: lets[ch] for ch in names}, projective=True,
                        place=place, name=f"appendix-{names}")

    def evaluate(self, word: str) -> QuatElem:
        """Evaluate a word in any of the letters a, b, c, ..., v (capitals are inverses)."""
        full = self.__dict__.get("_full")
        if full is None:
            full = {}
            for k, q in self.letters().items():
                full[k] = q
                full[k.upper()] = q.conj()  # norm one
            self.__dict__["_full"] = full
        out = self.algebra.one
        for ch in word:
            try:
                out = out * full[ch]
            except KeyError:
                raise ValueError(f"unknown letter {ch!r}") from None
        return out


def build_appendix_group() -> AppendixGroup:
    """Quaternions a = 1 + al i + al x + (al - 1) y and b = -i a i in (-1, -3 | K)."""
    K = nf_new([-1, 1, 0, 1])
    al = K.gen
    pi = al + 1
    D = QuatAlgebra(K, K(-1), K(-3))
    i, j, k = D.i, D.j, D.k
    x = (i + j) * K(Fraction(1, 2))
    y = (D(3 * pi) + i * (3 * pi * pi) + j * (pi * pi) + k * pi) * K(Fraction(1, 6))
    a = D.one + i * al + x * al + y * (al - 1)
    b = -(i * a * i)
    for q in (a, b):
        if q.norm() != 1:
            raise AssertionError("generator does not have reduced norm 1")
    return AppendixGroup(K, al, pi, D, a, b, [D.one, i, x, y])


def verify_relators(G: AppendixGroup | None = None, extra: dict | None = None) -> dict:
    """Evaluate the presentation relators of M (in a, b) and of N (in c, d, e, f)."""
    G = G or build_appendix_group()
    rels = {r: "M" for r in M_RELATORS}
    rels.update({r: "N" for r in N_RELATORS})
    if extra:
        rels.update(extra)
    out = {}
    for r, grp in rels.items():
        q = G.evaluate(r)
        ok = q.is_identity(projective=True)
        out[r] = {"group": grp, "identity": ok, "sign": (int(q.t.rational()) if ok else None)}
    G_ab = G.a, G.b
    traces = {
        "tr(a)": str(G_ab[0].trace()),
        "tr(b)": str(G_ab[1].trace()),
        "tr(ab)": str((G_ab[0] * G_ab[1]).trace()),
    }
    al = G.alpha
    traces_ok = (G.a.trace() == al * al + 1 and G.b.trace() == al * al + 1
                 and (G.a * G.b).trace() == al
                 and G.b == -(G.algebra.i * G.a * G.algebra.i))
    return {"relators": out, "traces": traces, "traces_ok": traces_ok,
            "all_pass": traces_ok and all(v["identity"] for v in out.values())}


def perturb_word(word: str, pos: int) -> str:
    """Flip the case (inverse) of one letter."""
    return word[:pos] + word[pos].swapcase() + word[pos + 1:]


def verify_level(G: AppendixGroup | None = None, samples: int = 100, seed: int = 0,
                 max_len: int = 8) -> dict:
    """w(g - 1) for g in c, d, e, f and a, and tr - 2 in pi^3 for random words in c, d, e, f."""
    G = G or build_appendix_group()
    lets = G.letters()
    one = G.algebra.one
    w = {k: w_valuation(lets[k] - one, G.pi) for k in ("c", "d", "e", "f", "a")}
    rng = random.Random(seed)
    alphabet = "cdefCDEF"
    words, bad = [], []
    for _ in range(samples):
        n = rng.randint(1, max_len)
        word = "".join(rng.choice(alphabet) for _ in range(n))
        t = G.evaluate(word).trace()
        v = val_pi(t - 2, G.pi)
        words.append(word)
        if v < 3:
            bad.append({"word": word, "val": v})
    cd = val_pi(G.evaluate("cd").trace() - 2, G.pi)
    level_ok = all(w[k] == 3 for k in "cdef") and w["a"] < 3
    return {"w": {k: (v if v != math.inf else "inf") for k, v in w.items()},
            "level_ok": level_ok, "samples": samples, "failures": bad,
            "val_tr_cd_minus_2": cd, "all_pass": level_ok and not bad and cd >= 3}


# ---------------------------------------------------------------------------
# systole


def _abs_le(v, bound: float) -> bool:
    """Certified |v| <= bound from a PlaceValue; raises when the disk straddles the bound."""
    slack = 4e-16 * abs(v.center)
    lo, hi = abs(v.center) - v.radius - slack, abs(v.center) + v.radius + slack
    if hi <= bound:
        return True
    if lo > bound:
        return False
    raise ArithmeticError("undecided comparison")


def _place_le(t: NFElem, place: int, bound: int) -> bool:
    if t.is_rational():
        q = t.rational()
        return abs(q) <= bound
    radius = 1e-12
    while radius > 1e-60:
        try:
            return _abs_le(embed(t, place, radius), bound)
        except ArithmeticError:
            radius /= 1e8
    raise ArithmeticError("comparison could not be decided")


def minkowski_gram(K: NumberField) -> np.ndarray:
    """Gram matrix of |iota(k)|^2 = tau_R(k)^2 + 2|tau_C(k)|^2 in the basis 1, alpha, alpha^2."""
    (r,) = K.real_places()
    (c,) = K.complex_places()
    powers = [K.gen ** k for k in range(3)]
    vr = [embed(p, r, 1e-15).center.real for p in powers]
    vc = [embed(p, c, 1e-15).center for p in powers]
    return np.array([[vr[i] * vr[j] + 2 * (vc[i] * vc[j].conjugate()).real for j in range(3)]
                     for i in range(3)])


@dataclass
class SystoleReport:
    triples: int
    traces: list
    lengths: dict
    gram_min_eig: float
    systole: float
    elapsed: float
    margin_ok: bool

    def to_json(self) -> dict:
        return {
            "triples": self.triples,
            "T": [str(t) for t in self.traces],
            "lengths": {k: [v.lo, v.hi] for k, v in self.lengths.items()},
            "gram_min_eigenvalue": self.gram_min_eig,
            "systole": self.systole,
            "threshold_2log(1+sqrt2)": BOWDITCH_CONSTANT,
            "systole_above_threshold": self.margin_ok,
            "seconds": round(self.elapsed, 3),
        }


def systole_enumeration(G: AppendixGroup | None = None, norm_bound: int = 36) -> SystoleReport:
    """Traces t = c0 + c1 al + c2 al^2 with sum c_i^2 <= 36 that pass the three filters."""
    t0 = time.perf_counter()
    G = G or build_appendix_group()
    K, pi = G.field, G.pi
    (real_place,) = K.real_places()
    (cplx_place,) = K.complex_places()
    R = math.isqrt(norm_bound)
    triples = [c for c in itertools.product(range(-R, R + 1), repeat=3)
               if sum(x * x for x in c) <= norm_bound]
    T = []
    for c in triples:
        t = K(list(c))
        if val_pi(t - 2, pi) < 3:
            continue
        if not _place_le(t, real_place, 2):
            continue
        if not _place_le(t, cplx_place, 4):
            continue
        T.append(t)
    lengths = {}
    for t in T:
        if t == 2:
            continue
        lengths[str(t)] = translation_length(embed(t, cplx_place, 1e-15))
    systole = min(v.lo for v in lengths.values())
    gram = minkowski_gram(K)
    lam = float(np.linalg.eigvalsh(gram).min())
    return SystoleReport(len(triples), T, lengths, lam, systole,
                         time.perf_counter() - t0, systole > _BC_HI)


def certify_appendix(r: int = 2, G: AppendixGroup | None = None) -> dict:
    """Whole-group certificate for the level-3 group <c, d, e, f> from the systole traces.

    Any element of translation length l has |tr| <= 2 cosh(l / 2); the trace
    list covers |tau_C| <= 4, i.e. every length up to 2 arcosh 2.
    """
    G = G or build_appendix_group()
    rep = systole_enumeration(G)
    traces = [t for t in rep.traces if t != 2]
    gd = G.groupdef("cdef", place=G.field.complex_places()[0])
    return certify_ball(gd, r, systole_traces=traces, place=gd.place,
                        trace_cutoff=2 * math.acosh(2))


# ---------------------------------------------------------------------------
# the case tree


TREE_ALPHABET = set("ghndcmvf")


@dataclass
class Failure:
    path: list
    relator: str | None
    reason: str

    def to_json(self) -> dict:
        return {"path": "".join(self.path), "relator": self.relator, "reason": self.reason}


@dataclass
class Certificate:
    verdict: str
    leaves: int
    failures: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "leaves": self.leaves,
                "failures": [f.to_json() for f in self.failures], "notes": self.notes,
                "seconds": round(self.elapsed, 3)}


@dataclass
class CaseTree:
    """Binary tree over signed letters; ``node`` is ``{"branch", "pos", "neg"}`` or ``{"leaf"}``."""

    assume: str
    node: dict

    @classmethod
    def from_json(cls, data) -> "CaseTree":
        if isinstance(data, str) and data.lstrip().startswith("{"):
            data = json.loads(data)
        elif not isinstance(data, dict):
            with open(data) as fh:
                data = json.load(fh)
        return cls(data["assume"], data["node"])

    def to_json(self) -> dict:
        return {"assume": self.assume, "node": self.node}

    def leaves(self):
        """Yield (path of assumed letters, relator) pairs; the path starts with the root assumption."""
        def walk(node, path):
            if "leaf" in node:
                yield path, node["leaf"]
                return
            x = node.get("branch", "")
            if "pos" in node:
                yield from walk(node["pos"], path + [x])
            if "neg" in node:
                yield from walk(node["neg"], path + [x.upper()])
        yield from walk(self.node, [self.assume])


def load_case_tree(path=None) -> CaseTree:
    if path is None:
        with _data("appendix_tree.json").open() as fh:
            return CaseTree.from_json(json.load(fh))
    return CaseTree.from_json(path)


def _structure(tree: CaseTree) -> list[Failure]:
    out = []
    if len(tree.assume) != 1 or tree.assume.lower() not in TREE_ALPHABET:
        out.append(Failure([tree.assume], None, "structural: bad root assumption"))

    def walk(node, path):
        if not isinstance(node, dict):
            out.append(Failure(path, None, "structural: node is not an object"))
            return
        if "leaf" in node:
            w = node["leaf"]
            if set(node) != {"leaf"}:
                out.append(Failure(path, w, "structural: leaf with extra fields"))
            if not isinstance(w, str) or not w:
                out.append(Failure(path, None, "structural: empty leaf"))
            elif any(ch.lower() not in TREE_ALPHABET for ch in w):
                out.append(Failure(path, w, "structural: letter outside the alphabet"))
            return
        x = node.get("branch")
        if not isinstance(x, str) or len(x) != 1 or x not in TREE_ALPHABET:
            out.append(Failure(path, None, f"structural: bad branch letter {x!r}"))
            return
        if x in {p.lower() for p in path}:
            out.append(Failure(path, None, f"structural: letter {x} assumed twice on a path"))
        for side, lab in (("pos", x), ("neg", x.upper())):
            if side not in node:
                out.append(Failure(path, None, f"structural: missing {side} branch at {x}"))
            else:
                walk(node[side], path + [lab])

    walk(tree.node, [tree.assume])
    return out


def verify_orderability_tree(tree: CaseTree | None = None, G: AppendixGroup | None = None,
                             fail_fast: bool = False) -> Certificate:
    """Check that every leaf gives 1 as a product of elements assumed positive.

    A leaf passes when (i) every letter of its relator carries the sign
    assumed on its path, and (ii) the relator is +-1 in the quaternion algebra.
    Sign usage is checked for all leaves before any exact evaluation; with
    ``fail_fast`` the evaluations are skipped once something has failed.
    """
    t0 = time.perf_counter()
    tree = tree or load_case_tree()
    G = G or build_appendix_group()
    failures = _structure(tree)
    count = 0
    if not failures:
        todo = []
        for path, word in tree.leaves():
            count += 1
            assumed = set(path)
            wrong = sorted({ch for ch in word if ch not in assumed})
            if wrong:
                failures.append(Failure(path, word, f"sign-misuse: {''.join(wrong)} not assumed positive"))
            else:
                todo.append((path, word))
        if not (fail_fast and failures):
            for path, word in todo:
                if not G.evaluate(word).is_identity(projective=True):
                    failures.append(Failure(path, word, "non-identity relator"))
                    if fail_fast:
                        break
    notes = [
        f"root assumption {tree.assume} in P is without loss of generality: "
        "inverting every letter of an identity relator gives an identity relator, "
        "so the tree for the opposite sign is the mirror image",
    ]
    verdict = "pass" if not failures else "fail"
    return Certificate(verdict, count, failures, notes, time.perf_counter() - t0)


def leaf_levels(tree: CaseTree | None = None, G: AppendixGroup | None = None) -> dict:
    """pi-adic valuation of tr - 2 for each leaf relator (identity gives infinity)."""
    tree = tree or load_case_tree()
    G = G or build_appendix_group()
    return {w: val_pi(G.evaluate(w).trace() - 2, G.pi) for _, w in tree.leaves()}


def tree_mutations(tree: CaseTree):
    """All single mutations: one leaf letter inverted, one branch deleted, or one branch sign swapped."""
    def copy():
        return json.loads(json.dumps(tree.node))

    def nodes(node, addr=()):
        yield addr, node
        if "leaf" not in node:
            for side in ("pos", "neg"):
                if side in node:
                    yield from nodes(node[side], addr + (side,))

    def at(root, addr):
        for s in addr:
            root = root[s]
        return root

    for addr, node in list(nodes(tree.node)):
        if "leaf" in node:
            for pos in range(len(node["leaf"])):
                new = copy()
                leaf = at(new, addr)
                leaf["leaf"] = perturb_word(leaf["leaf"], pos)
                yield f"flip {'/'.join(addr)}:{pos}", CaseTree(tree.assume, new)
        else:
            for side in ("pos", "neg"):
                new = copy()
                del at(new, addr)[side]
                yield f"delete {'/'.join(addr + (side,))}", CaseTree(tree.assume, new)
            new = copy()
            nd = at(new, addr)
            nd["pos"], nd["neg"] = nd["neg"], nd["pos"]
            yield f"swap {'/'.join(addr)}", CaseTree(tree.assume, new)
    yield "flip root", CaseTree(tree.assume.swapcase(), copy())


# ---------------------------------------------------------------------------
# Weeks group


def weeks_groupdef(path=None) -> GroupDef:
    if path is None:
        with _data("weeks.json").open() as fh:
            return GroupDef.from_json(json.load(fh))
    return GroupDef.from_json(path)


def build_weeks_groupdef(projective: bool = False) -> GroupDef:
    """a = [[x, 1], [0, 1/x]], b = [[x, 0], [2 - (x + 1/x), 1/x]]."""
    W = nf_new(list(WEEKS_MINPOLY))
    x = W.gen
    xi = -(x ** 5 + 2 * x ** 3 - x ** 2 + 2 * x)
    a = Mat2(x, W.one, W.zero, xi)
    b = Mat2(x, W.zero, 2 - (x + xi), xi)
    return GroupDef(W, {"a": a, "b": b}, projective=projective,
                    relators=list(WEEKS_RELATORS), place=0, name="weeks")


def weeks_pipeline(radius: int = 4, minimal: bool = True, threads: int = 1, order=None,
                   max_size: int | None = None, verify: bool = True) -> dict:
    """Ball, largest ravel and a deletion-minimal ravel for the Weeks group."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    t0 = time.perf_counter()
    g = weeks_groupdef()
    rels = g.check_relators()
    kw = {} if max_size is None else {"max_size": max_size}
    B = ball(g, radius, **kw)
    A = ElementSet.from_ball(B)
    w = Witnesses.build(list(A), threads=threads)
    R = find_ravel(A, threads=threads, witnesses=w)
    report = {
        "schema": "diffuse-lab/1",
        "group": "weeks",
        "radius": radius,
        "relators": rels,
        "ball": len(B),
        "spheres": [len(s) for s in B.spheres],
        "ravel_size": len(R),
        "ravel": sorted((e.word for e in R), key=lambda s: (len(s), s)),
    }
    if verify and len(R):
        report["ravel_verified"] = not any(is_extremal(a, R) for a in R)
    if minimal and len(R):
        m = min_ravel(R, order=order, threads=threads)
        report["min_ravel_size"] = len(m)
        report["min_ravel"] = sorted((e.word for e in m), key=lambda s: (len(s), s))
        if verify:
            report["min_ravel_verified"] = (not any(is_extremal(a, m) for a in m)
                                            and is_deletion_minimal(m))
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return report
