"""2x2 matrix groups over number fields: exact word evaluation and word-metric balls.

Words are strings over single-letter generator names; an upper-case letter
denotes the inverse of the corresponding lower-case generator (``A = a^-1``).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field

from .qfield import FieldError, NFElem, NumberField

__all__ = [
    "ResourceError",
    "Mat2",
    "GroupElement",
    "GroupDef",
    "Ball",
    "canonical_key",
    "evaluate_word",
    "ball",
    "contains",
    "invert_word",
    "MAX_BALL",
]

MAX_BALL = 10_000_000


class ResourceError(RuntimeError):
    """A computation would exceed its configured size bound."""


def _sign_of(e: NFElem) -> int:
    for c in e.num:
        if c:
            return 1 if c > 0 else -1
    return 0


class Mat2:
    """2x2 matrix ``[[a, b], [c, d]]`` with entries in a number field."""

    __slots__ = ("a", "b", "c", "d", "_det")

    def __init__(self, a: NFElem, b: NFElem, c: NFElem, d: NFElem):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._det = None

    @classmethod
    def from_rows(cls, field: NumberField, rows) -> "Mat2":
        (a, b), (c, d) = rows
        conv = [NFElem.from_json(field, x) if not isinstance(x, NFElem) else x
                for x in (a, b, c, d)]
        return cls(*conv)

    @classmethod
    def identity(cls, field: NumberField) -> "Mat2":
        return cls(field.one, field.zero, field.zero, field.one)

    @property
    def field(self) -> NumberField:
        return self.a.field

    @property
    def det(self) -> NFElem:
        if self._det is None:
            self._det = self.a * self.d - self.b * self.c
        return self._det

    def trace(self) -> NFElem:
        return self.a + self.d

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        det = self.det
        if det == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        if det.is_zero():
            raise FieldError("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def mod_image(self, p: int, ctx) -> tuple:
        """Entries reduced mod p along alpha -> ``ctx`` (see ``modular_context``)."""
        return tuple(e.mod_image(p, ctx) for e in self.entries())

    def key(self, projective: bool = False) -> tuple:
        ents = self.entries()
        if projective:
            for e in ents:
                s = _sign_of(e)
                if s:
                    if s < 0:
                        ents = tuple(-x for x in ents)
                    break
        return tuple(e.key() for e in ents)

    def is_identity(self, projective: bool = False) -> bool:
        one = self.field.one
        if self.b.is_zero() and self.c.is_zero():
            if self.a == one and self.d == one:
                return True
            if projective and self.a == -one and self.d == -one:
                return True
        return False

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> list:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def canonical_key(m, projective: bool) -> bytes:
    """Byte key identifying ``m`` exactly, up to sign when ``projective``."""
    return repr(m.key(projective)).encode()


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


@dataclass(eq=False)
class GroupElement:
    """A group element together with a word in the generators producing it."""

    matrix: object
    word: str
    projective: bool = False

    @property
    def key(self) -> tuple:
        return self.matrix.key(self.projective)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix * other.matrix, self.word + other.word, self.projective)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.matrix.inverse(), invert_word(self.word), self.projective)

    def is_identity(self) -> bool:
        return self.matrix.is_identity(self.projective)

    def mod_image(self, p: int, ctx) -> tuple:
        return self.matrix.mod_image(p, ctx)

    def to_json(self) -> dict:
        return {"word": self.word, "matrix": self.matrix.to_json()}


@dataclass
class GroupDef:
    """Finitely generated group given by generator matrices (or quaternions).

    ``generators`` maps single lower-case letters to invertible elements that
    support ``*``, ``inverse()``, ``key(projective)`` and ``is_identity``.
    """

    field: NumberField
    generators: dict
    projective: bool = True
    relators: list = dc_field(default_factory=list)
    place: int | None = None
    name: str = ""

    def __post_init__(self):
        for name in self.generators:
            if len(name) != 1 or not name.islower():
                raise ValueError(f"generator names must be single lower-case letters, got {name!r}")
        self._letters = {}
        for name, g in self.generators.items():
            self._letters[name] = g
            self._letters[name.upper()] = g.inverse()

    @property
    def letters(self) -> list[str]:
        """Letter order used for BFS: generators as declared, then their inverses."""
        names = list(self.generators)
        return names + [n.upper() for n in names]

    def letter(self, ch: str):
        try:
            return self._letters[ch]
        except KeyError:
            raise ValueError(f"unknown generator letter {ch!r}") from None

    def identity(self):
        g = next(iter(self.generators.values()), None)
        if g is None:
            return Mat2.identity(self.field)
        return g * g.inverse()

    def evaluate(self, word: str):
        return evaluate_word(word, self)

    def element(self, word: str) -> GroupElement:
        return GroupElement(self.evaluate(word), word, self.projective)

    def check_relators(self) -> dict[str, bool]:
        return {r: self.evaluate(r).is_identity(self.projective) for r in self.relators}

    # JSON ------------------------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "GroupDef":
        if isinstance(data, (str, bytes, os.PathLike)) and not str(data).lstrip().startswith("{"):
            with open(data) as fh:
                data = json.load(fh)
        elif isinstance(data, (str, bytes)):
            data = json.loads(data)
        fld = NumberField.from_json(data["field"])
        if "algebra" in data:
            from .quat import QuatAlgebra

            alg = QuatAlgebra.from_json({"field": data["field"], **data["algebra"]}, field=fld)
            gens = {name: alg.element_from_json(q) for name, q in data["generators"].items()}
        else:
            gens = {name: Mat2.from_rows(fld, rows) for name, rows in data["generators"].items()}
        g = cls(
            fld,
            gens,
            projective=bool(data.get("projective", True)),
            relators=list(data.get("relators", [])),
            place=data.get("place"),
            name=data.get("name", ""),
        )
        bad = [r for r, ok in g.check_relators().items() if not ok]
        if bad:
            raise ValueError(f"relators do not evaluate to the identity: {bad}")
        return g

    def to_json(self) -> dict:
        out = {
            "field": self.field.to_json(),
            "projective": self.projective,
            "generators": {n: m.to_json() for n, m in self.generators.items()},
            "relators": list(self.relators),
        }
        alg = getattr(next(iter(self.generators.values()), None), "alg", None)
        if alg is not None:
            out["algebra"] = {"a": alg.a.to_json(), "b": alg.b.to_json()}
        if self.place is not None:
            out["place"] = self.place
        if self.name:
            out["name"] = self.name
        return out


def evaluate_word(word: str, gens) -> object:
    """Exact product of the letters of ``word``; the empty word gives the identity."""
    if isinstance(gens, GroupDef):
        group = gens
    else:
        gens = dict(gens)
        fld = next(iter(gens.values())).field
        group = GroupDef(fld, gens, projective=False)
    if not word:
        return group.identity()
    result = group.letter(word[0])
    for ch in word[1:]:
        result = result * group.letter(ch)
    return result


@dataclass
class Ball:
    """Word-metric ball: canonical key -> element with a geodesic word."""

    radius: int
    elements: dict
    projective: bool
    spheres: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements.values())

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def to_json(self) -> list:
        return [e.to_json() for e in self.elements.values()]


def ball(g: GroupDef, r: int, max_size: int = MAX_BALL) -> Ball:
    """All elements of word length <= r, found breadth first.

    Each element keeps the first word reaching it, scanning the previous
    sphere in discovery order and the letters in ``g.letters`` order.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    proj = g.projective
    ident = GroupElement(g.identity(), "", proj)
    elements = {ident.key: ident}
    spheres = [[ident.key]]
    frontier = [ident]
    letters = [(ch, g.letter(ch)) for ch in g.letters]
    for _ in range(r):
        nxt = []
        for el in frontier:
            for ch, m in letters:
                # a letter cancelling the last one returns to the previous sphere
                if el.word and el.word[-1] == ch.swapcase():
                    continue
                prod = el.matrix * m
                k = prod.key(proj)
                if k not in elements:
                    new = GroupElement(prod, el.word + ch, proj)
                    elements[k] = new
                    nxt.append(new)
                    if len(elements) > max_size:
                        raise ResourceError(f"ball exceeds {max_size} elements")
        spheres.append([e.key for e in nxt])
        frontier = nxt
        if not nxt:
            break
    return Ball(r, elements, proj, spheres)


def contains(s, m) -> bool:
    """Membership of a matrix (or GroupElement) in a ball or element set."""
    proj = s.projective
    if isinstance(m, GroupElement):
        m = m.matrix
    return m.key(proj) in s.elements


def load_groupdef(path) -> GroupDef:
    return GroupDef.from_json(path)
