"""Presentations by generators and quadratic rewrite rules.

A presentation fixes an ordered generator list and a set of rewrite rules
whose leading terms are two-letter words.  Rewriting repeatedly replaces the
leftmost reducible pair until no rule applies; the result is the normal form.
Uniqueness of normal forms is certified separately by resolving all length-3
overlaps of leading terms (diamond lemma at the quadratic level).

Rules must be degree- and weight-homogeneous.  Termination is enforced
dynamically: a step budget proportional to the problem size trips the
``NonTerminating`` error if a rule set cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .core import GeneratorSymbol, GradedElement, Word, render_element


class NonTerminating(Exception):
    """Rewriting exceeded its step budget: the rule set violates the order."""


class UnregisteredGenerator(KeyError):
    pass


@dataclass
class Mismatch:
    """One unresolved overlap: the two one-step reducts disagree."""

    word: Word
    left: GradedElement
    right: GradedElement

    def describe(self, pres: "AlgebraPresentation") -> str:
        w = "·".join(pres.generators[i].name for i in self.word)
        return (
            f"overlap {w}: "
            f"{pres.render(self.left)}  !=  {pres.render(self.right)}"
        )


@dataclass
class ConfluenceReport:
    presentation: "AlgebraPresentation"
    overlaps_checked: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


class AlgebraPresentation:
    """Ordered generators plus two-letter rewrite rules.

    Immutable after ``freeze()``; all rewriting results are cached per word.
    The registration order is the normal-form order: builders register
    distributions first, then functions, vectors, forms and delta-type
    generators last, and install a rule for every out-of-order pair.
    """

    def __init__(self, name: str = ""):
        self.name = name
        self.generators: List[GeneratorSymbol] = []
        self._index: Dict[str, int] = {}
        self.rules: Dict[Tuple[int, int], GradedElement] = {}
        self._nf_cache: Dict[Word, GradedElement] = {}
        self._frozen = False
        self.max_steps_per_word = 2_000_000

    # -- construction -------------------------------------------------

    def add_generator(self, gen: GeneratorSymbol) -> int:
        if self._frozen:
            raise RuntimeError("presentation is frozen")
        if gen.name in self._index:
            raise ValueError(f"duplicate generator {gen.name!r}")
        self.generators.append(gen)
        idx = len(self.generators) - 1
        self._index[gen.name] = idx
        return idx

    def add_rule(self, i: int, j: int, rhs: GradedElement):
        """Install ``g_i g_j -> rhs``.  The rule must be homogeneous."""
        if self._frozen:
            raise RuntimeError("presentation is frozen")
        key = (i, j)
        if key in self.rules:
            raise ValueError(
                f"duplicate rule for {self.generators[i].name}·{self.generators[j].name}"
            )
        lhs_deg = self.generators[i].degree + self.generators[j].degree
        lhs_wt = self.generators[i].weight + self.generators[j].weight
        for w, _ in rhs.items():
            if self.degree(w) != lhs_deg or self.weight(w) != lhs_wt:
                raise ValueError(
                    f"inhomogeneous rule {self.generators[i].name}·"
                    f"{self.generators[j].name} -> {self.render(rhs)}"
                )
        self.rules[key] = rhs

    def freeze(self) -> "AlgebraPresentation":
        self._frozen = True
        return self

    # -- lookups -------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnregisteredGenerator(name) from None

    def gen(self, name: str) -> GradedElement:
        return GradedElement.word((self.index(name),))

    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def degree(self, w: Word) -> int:
        return sum(self.generators[i].degree for i in w)

    def weight(self, w: Word) -> int:
        return sum(self.generators[i].weight for i in w)

    def parity(self, w: Word) -> int:
        return self.degree(w) % 2

    def element_degree(self, e: GradedElement):
        """Common degree of a homogeneous element, None for 0."""
        degs = {self.degree(w) for w in e.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def render(self, e: GradedElement) -> str:
        return render_element(e, self.names())

    # -- rewriting -----------------------------------------------------

    def _first_redex(self, w: Word) -> int:
        rules = self.rules
        for k in range(len(w) - 1):
            if (w[k], w[k + 1]) in rules:
                return k
        return -1

    def normal_form_word(self, w: Word) -> GradedElement:
        cached = self._nf_cache.get(w)
        if cached is not None:
            return cached
        budget = self.max_steps_per_word
        acc: Dict[Word, Fraction] = {}
        agenda: List[Tuple[Word, Fraction]] = [(tuple(w), Fraction(1))]
        while agenda:
            word, coeff = agenda.pop()
            while True:
                cached = self._nf_cache.get(word)
                if cached is not None:
                    for ww, cc in cached.items():
                        s = acc.get(ww, 0) + coeff * cc
                        if s:
                            acc[ww] = s
                        else:
                            acc.pop(ww, None)
                    break
                k = self._first_redex(word)
                if k < 0:
                    s = acc.get(word, 0) + coeff
                    if s:
                        acc[word] = s
                    else:
                        acc.pop(word, None)
                    break
                budget -= 1
                if budget <= 0:
                    raise NonTerminating(
                        f"rewriting budget exhausted in {self.name!r} on a word "
                        f"of length {len(w)}"
                    )
                rhs = self.rules[(word[k], word[k + 1])]
                pre, post = word[:k], word[k + 2:]
                items = list(rhs.items())
                # keep one branch in the loop, push the rest
                for ww, cc in items[1:]:
                    agenda.append((pre + ww + post, coeff * cc))
                if items:
                    word = pre + items[0][0] + post
                    coeff = coeff * items[0][1]
                else:
                    break
        result = GradedElement(acc)
        self._nf_cache[tuple(w)] = result
        return result

    def normal_form(self, e: GradedElement) -> GradedElement:
        out = GradedElement()
        for w, c in e.items():
            out = out + self.normal_form_word(w).scale(c)
        return out

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        return self.normal_form(a.concat(b))

    def multiply_words(self, *words: Word) -> GradedElement:
        w = ()
        for part in words:
            w = w + tuple(part)
        return self.normal_form_word(w)

    def is_normal_word(self, w: Word) -> bool:
        return self._first_redex(w) < 0

    # -- confluence ----------------------------------------------------

    def check_local_confluence(self, degree_bound: int = 8) -> ConfluenceReport:
        """Resolve every length-3 overlap of rule leading terms both ways.

        An overlap is a word (a, b, c) with rules for (a, b) and (b, c).
        Both one-step reducts are brought to normal form; any disagreement
        is reported.  An empty mismatch list certifies unique normal forms
        (termination is checked dynamically by the rewriting budget).
        """
        report = ConfluenceReport(self)
        leads = set(self.rules)
        by_first: Dict[int, List[int]] = {}
        for (i, j) in leads:
            by_first.setdefault(i, []).append(j)
        for (a, b) in sorted(leads):
            for c in sorted(by_first.get(b, ())):
                word = (a, b, c)
                if abs(self.degree(word)) > degree_bound:
                    continue
                report.overlaps_checked += 1
                left = self.normal_form(
                    self.rules[(a, b)].concat(GradedElement.word((c,)))
                )
                right = self.normal_form(
                    GradedElement.word((a,)).concat(self.rules[(b, c)])
                )
                if left != right:
                    report.mismatches.append(Mismatch(word, left, right))
        return report

    # -- sampling ------------------------------------------------------

    def random_word(self, rng, max_len: int, degree_cap: int | None = None) -> Word:
        """A random normal word, for property tests.  Deterministic per rng."""
        n = len(self.generators)
        length = rng.randint(0, max_len)
        w: Tuple[int, ...] = ()
        for _ in range(length):
            i = rng.randrange(n)
            cand = w + (i,)
            if degree_cap is not None and abs(self.degree(cand)) > degree_cap:
                continue
            w = cand
        # project to the support of the normal form to get a normal word
        nf = self.normal_form_word(w)
        if not nf.terms:
            return ()
        words = sorted(nf.terms)
        return words[rng.randrange(len(words))]

    def random_element(self, rng, max_len: int, terms: int = 3,
                       degree_cap: int | None = None) -> GradedElement:
        out = GradedElement()
        for _ in range(terms):
            w = self.random_word(rng, max_len, degree_cap)
            c = Fraction(rng.randint(-4, 4))
            if c:
                out = out + GradedElement.word(w, c)
        return out
