"""Exact scalars, graded generators, words and formal sums.

Everything downstream is built on three kinds of values:

* ``Fraction`` scalars (no floating point anywhere),
* generator symbols carrying a cohomological degree, a separate integer
  weight, and a sort tag used for normal-form ordering,
* finitely supported maps ``word -> Fraction`` where a word is a tuple of
  generator indices.

Signs follow the Koszul rule in the cohomological degree only; weights are
metadata and never enter signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

#: sort tag -> rank used by the normal-form order.  Lower rank sorts left.
SORT_RANK = {
    "distribution": 0,
    "aux": 1,
    "function": 2,
    "vector": 3,
    "form": 4,
    "delta": 5,
}


def koszul_sign(degrees_a: Iterable[int], degrees_b: Iterable[int]) -> Scalar:
    """Sign picked up when a block of degrees_a moves past a block of degrees_b."""
    pa = sum(d % 2 for d in degrees_a)
    pb = sum(d % 2 for d in degrees_b)
    return -ONE if (pa % 2) and (pb % 2) else ONE


@dataclass(frozen=True)
class GeneratorSymbol:
    """A graded generator.  Degree and weight are fixed at registration."""

    name: str
    degree: int
    weight: int = 0
    sort: str = "function"

    def __post_init__(self):
        if self.sort not in SORT_RANK:
            raise ValueError(f"unknown sort {self.sort!r} for generator {self.name!r}")

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def rank(self) -> int:
        return SORT_RANK[self.sort]

    def __repr__(self):
        return f"Gen({self.name}, deg={self.degree})"


Word = tuple  # tuple of generator indices


class GradedElement:
    """Finite formal sum of scalar-weighted words.

    Immutable by convention: all operations return fresh elements.  Zero
    coefficients are never stored.  The element knows nothing about degrees
    or relations; those live on the presentation that owns the generator
    indices appearing in its words.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def zero(cls) -> "GradedElement":
        return cls()

    @classmethod
    def unit(cls, coeff=1) -> "GradedElement":
        return cls({(): Fraction(coeff)})

    @classmethod
    def word(cls, w: Word, coeff=1) -> "GradedElement":
        return cls({tuple(w): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = GradedElement.__new__(GradedElement)
        res.terms = out
        return res

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff) -> "GradedElement":
        c = Fraction(coeff)
        if not c:
            return GradedElement()
        res = GradedElement.__new__(GradedElement)
        res.terms = {w: v * c for w, v in self.terms.items()}
        return res

    def concat(self, other: "GradedElement") -> "GradedElement":
        """Free (unreduced) product: concatenation of words."""
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        res = GradedElement.__new__(GradedElement)
        res.terms = out
        return res

    def map_words(self, fn) -> "GradedElement":
        """Linear extension of a map word -> GradedElement."""
        out = GradedElement()
        for w, c in self.terms.items():
            out = out + fn(w).scale(c)
        return out

    def coefficient(self, w: Word) -> Scalar:
        return self.terms.get(tuple(w), ZERO)

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        return f"GradedElement({self.terms!r})"


def format_scalar(c: Scalar) -> str:
    return str(c)


def render_element(elem: GradedElement, names) -> str:
    """Canonical textual rendering, stable across runs.

    Words sort by (length, index tuple); e.g. ``3/2·x·c^y - δ``.
    """
    if elem.is_zero():
        return "0"
    parts = []
    for w, c in elem.sorted_items():
        body = "·".join(names[i] for i in w) if w else "1"
        if c == 1 and w:
            term = body
        elif c == -1 and w:
            term = "-" + body
        elif w:
            term = f"{format_scalar(c)}·{body}"
        else:
            term = format_scalar(c)
        parts.append(term)
    text = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            text += " - " + term[1:]
        else:
            text += " + " + term
    return text
