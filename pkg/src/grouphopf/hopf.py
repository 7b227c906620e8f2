"""Hopf structures on presented algebras.

The coproduct and counit are given on generators and extended as algebra
maps; the antipode extends as an algebra antihomomorphism with the Koszul
sign ``S(ab) = (-1)^{|a||b|} S(b) S(a)``.  All extensions are computed
lazily per word and cached.

Also here: the axiom checker, Hopf pairings with a pro-finite truncation
bound, and cocycle twists of the coproduct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .core import GradedElement, Word
from .rewriting import AlgebraPresentation, UnregisteredGenerator
from .tensor import TensorElement


class CocycleViolation(Exception):
    pass


class FiltrationExceeded(Exception):
    pass


class HopfStructure:
    def __init__(self, pres: AlgebraPresentation):
        self.pres = pres
        self._delta: Dict[int, TensorElement] = {}
        self._counit: Dict[int, Fraction] = {}
        self._antipode: Dict[int, GradedElement] = {}
        self._antipode_inv: Dict[int, GradedElement] = {}
        self._delta_cache: Dict[Word, TensorElement] = {}
        self._s_cache: Dict[Word, GradedElement] = {}
        self._sinv_cache: Dict[Word, GradedElement] = {}

    # -- declaration ----------------------------------------------------

    def set_generator(self, name: str, delta: TensorElement,
                      counit=0, antipode: GradedElement | None = None,
                      antipode_inv: GradedElement | None = None):
        i = self.pres.index(name)
        assert delta.arity == 2
        self._delta[i] = delta
        self._counit[i] = Fraction(counit)
        if antipode is not None:
            self._antipode[i] = antipode
        if antipode_inv is not None:
            self._antipode_inv[i] = antipode_inv

    def primitive(self, name: str):
        """Declare Δ(g) = g⊗1 + 1⊗g, ε(g) = 0, S(g) = -g."""
        g = self.pres.gen(name)
        one = GradedElement.unit()
        self.set_generator(
            name,
            TensorElement.from_slots(self.pres, g, one)
            + TensorElement.from_slots(self.pres, one, g),
            0,
            g.scale(-1),
            g.scale(-1),
        )

    def grouplike(self, name: str, inverse: GradedElement):
        g = self.pres.gen(name)
        self.set_generator(
            name, TensorElement.from_slots(self.pres, g, g), 1, inverse, inverse
        )

    def solve_antipodes(self, order: Optional[List[str]] = None):
        """Derive S and S^-1 on generators from the antipode axiom.

        For Δ(g) = Σ g' ⊗ g'' the axiom gives ε(g)·1 = Σ S(g')·g''.  When the
        coproduct legs other than the g⊗1 term only involve generators whose
        antipode is already known (or shorter words), S(g) solves linearly:
        S(g) = ε(g) - Σ' S(g')·g''.  Builders order generators so this
        recursion is well-founded.
        """
        names = order or [g.name for g in self.pres.generators]
        for name in names:
            i = self.pres.index(name)
            if i in self._antipode:
                continue
            self._antipode[i] = self._solve_one(i, inverse=False)
        for name in names:
            i = self.pres.index(name)
            if i in self._antipode_inv:
                continue
            self._antipode_inv[i] = self._solve_one(i, inverse=True)

    def _solve_one(self, i: int, inverse: bool) -> GradedElement:
        # antipode: mult(S⊗1)Δ(g) = ε(g) isolates S(g) from the g⊗1 term,
        # recursing on the other first legs.  Inverse antipode: the
        # co-opposite identity mult(1⊗S⁻¹)(flip Δ(g)) = ε(g) isolates
        # S⁻¹(g) from the flipped 1⊗g term and recurses on the original
        # first legs as well, so both recursions are well-founded whenever
        # the non-leading first legs involve only already-solved generators.
        pres = self.pres
        delta = self._delta[i]
        if not inverse:
            own = ((i,), ())
            if delta.terms.get(own, Fraction(0)) != 1:
                raise ValueError(
                    f"cannot solve antipode for {pres.generators[i].name}: "
                    f"coproduct lacks a unit g⊗1 leading term"
                )
            out = GradedElement.unit(self._counit[i])
            for (w1, w2), c in delta.terms.items():
                if (w1, w2) == own:
                    continue
                s1 = self._apply_table_word(w1, self._antipode)
                out = out - pres.multiply(s1, GradedElement.word(w2, c))
            return pres.normal_form(out)
        flipped = delta.flip()
        own = ((), (i,))
        if flipped.terms.get(own, Fraction(0)) != 1:
            raise ValueError(
                f"cannot solve inverse antipode for {pres.generators[i].name}"
            )
        out = GradedElement.unit(self._counit[i])
        for (w1, w2), c in flipped.terms.items():
            if (w1, w2) == own:
                continue
            s2 = self._apply_table_word(w2, self._antipode_inv)
            out = out - pres.multiply(GradedElement.word(w1, c), s2)
        return pres.normal_form(out)

    # -- extensions -------------------------------------------------------

    def coproduct_word(self, w: Word) -> TensorElement:
        cached = self._delta_cache.get(w)
        if cached is not None:
            return cached
        pres = self.pres
        out = TensorElement.unit(pres, 2)
        for i in w:
            if i not in self._delta:
                raise UnregisteredGenerator(pres.generators[i].name)
            out = out * self._delta[i]
        self._delta_cache[w] = out
        return out

    def coproduct(self, e: GradedElement) -> TensorElement:
        out = TensorElement(self.pres, 2)
        for w, c in e.items():
            out = out + self.coproduct_word(w).scale(c)
        return out

    def counit_word(self, w: Word) -> Fraction:
        out = Fraction(1)
        for i in w:
            out *= self._counit[i]
            if not out:
                break
        return out

    def counit(self, e: GradedElement) -> Fraction:
        out = Fraction(0)
        for w, c in e.items():
            out += c * self.counit_word(w)
        return out

    def _apply_table_word(self, w: Word, table: Dict[int, GradedElement]) -> GradedElement:
        """Antimultiplicative extension with the Koszul reversal sign."""
        pres = self.pres
        # sign of reversing the letters of w
        pars = [pres.generators[i].parity for i in w]
        exp = 0
        for a in range(len(pars)):
            for b in range(a + 1, len(pars)):
                exp += pars[a] * pars[b]
        sign = -1 if exp % 2 else 1
        out = GradedElement.unit(sign)
        for i in reversed(w):
            out = pres.multiply(out, table[i])
        return out

    def antipode_word(self, w: Word) -> GradedElement:
        cached = self._s_cache.get(w)
        if cached is None:
            cached = self._apply_table_word(w, self._antipode)
            self._s_cache[w] = cached
        return cached

    def antipode(self, e: GradedElement) -> GradedElement:
        out = GradedElement()
        for w, c in e.items():
            out = out + self.antipode_word(w).scale(c)
        return out

    def antipode_inv_word(self, w: Word) -> GradedElement:
        cached = self._sinv_cache.get(w)
        if cached is None:
            cached = self._apply_table_word(w, self._antipode_inv)
            self._sinv_cache[w] = cached
        return cached

    def antipode_inv(self, e: GradedElement) -> GradedElement:
        out = GradedElement()
        for w, c in e.items():
            out = out + self.antipode_inv_word(w).scale(c)
        return out

    def coproduct_iterated(self, e: GradedElement, legs: int) -> TensorElement:
        """Δ^(legs-1) applied on the left slot each time."""
        assert legs >= 1
        out = TensorElement.from_slots(self.pres, e)
        while out.arity < legs:
            out = out.apply_slot(0, self.coproduct_word)
        return out

    def antipode_on_tensor(self, t: TensorElement, slot: int,
                           inverse: bool = False) -> TensorElement:
        fn = self.antipode_inv_word if inverse else self.antipode_word
        def wrap(w):
            return TensorElement.from_slots(self.pres, fn(w))
        return t.apply_slot(slot, wrap, new_arity_delta=0)

    # shorthand used by twists: multiply a 2-tensor by another 2-tensor

    def convolve_identity(self, e: GradedElement, first_antipode: bool) -> GradedElement:
        """mult∘(S⊗1)∘Δ or mult∘(1⊗S)∘Δ applied to e."""
        pres = self.pres
        out = GradedElement()
        for w, c in e.items():
            t = self.coproduct_word(w)
            for (w1, w2), c2 in t.terms.items():
                if first_antipode:
                    prod = pres.multiply(self.antipode_word(w1), GradedElement.word(w2))
                else:
                    prod = pres.multiply(GradedElement.word(w1), self.antipode_word(w2))
                out = out + prod.scale(c * c2)
        return out


# ---------------------------------------------------------------------------


@dataclass
class CheckRecord:
    check_id: str
    description: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    title: str
    records: List[CheckRecord] = field(default_factory=list)

    def add(self, check_id: str, description: str, passed: bool, detail: str = ""):
        self.records.append(CheckRecord(check_id, description, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def extend(self, other: "CheckReport"):
        self.records.extend(other.records)


def check_hopf_axioms(h: HopfStructure, degree_bound: int = 6,
                      samples: int = 40, rng=None, max_len: int = 3,
                      tag: str = "") -> CheckReport:
    """Verify the Hopf axioms on generators, defining rules and random words."""
    import random as _random

    pres = h.pres
    rng = rng or _random.Random(0)
    rep = CheckReport(title=f"hopf-axioms[{tag or pres.name}]")
    one = GradedElement.unit()

    words: List[Word] = [()]
    words += [(i,) for i in range(len(pres.generators))]
    seen = set(words)
    for _ in range(samples):
        w = pres.random_word(rng, max_len, degree_cap=degree_bound)
        if w not in seen:
            seen.add(w)
            words.append(w)

    # Δ and ε are algebra maps: enough to check them on every rewrite rule.
    for (i, j), rhs in sorted(pres.rules.items()):
        lhs_t = h.coproduct_word((i,)) * h.coproduct_word((j,))
        rhs_t = h.coproduct(rhs)
        ok = lhs_t == rhs_t
        rep.add(
            f"delta-rule-{pres.generators[i].name}-{pres.generators[j].name}",
            "coproduct respects rewrite rule",
            ok,
            "" if ok else f"Δ mismatch on {pres.generators[i].name}·{pres.generators[j].name}",
        )
        le = h.counit_word((i,)) * h.counit_word((j,))
        re_ = h.counit(rhs)
        rep.add(
            f"counit-rule-{pres.generators[i].name}-{pres.generators[j].name}",
            "counit respects rewrite rule",
            le == re_,
        )

    for w in words:
        name = "·".join(pres.generators[i].name for i in w) or "1"
        t = h.coproduct_word(w)
        lhs = t.apply_slot(0, h.coproduct_word)
        rhs = t.apply_slot(1, h.coproduct_word)
        rep.add(f"coassoc[{name}]", "coassociativity", lhs == rhs)

        left_counit = GradedElement()
        right_counit = GradedElement()
        for (w1, w2), c in t.terms.items():
            left_counit = left_counit + GradedElement.word(w2, c * h.counit_word(w1))
            right_counit = right_counit + GradedElement.word(w1, c * h.counit_word(w2))
        nf_w = pres.normal_form_word(w)
        rep.add(f"counit-left[{name}]", "(ε⊗1)Δ = id",
                pres.normal_form(left_counit) == nf_w)
        rep.add(f"counit-right[{name}]", "(1⊗ε)Δ = id",
                pres.normal_form(right_counit) == nf_w)

        target = one.scale(h.counit_word(w))
        s1 = h.convolve_identity(GradedElement.word(w), first_antipode=True)
        s2 = h.convolve_identity(GradedElement.word(w), first_antipode=False)
        rep.add(f"antipode-left[{name}]", "mult(S⊗1)Δ = ηε", s1 == target)
        rep.add(f"antipode-right[{name}]", "mult(1⊗S)Δ = ηε", s2 == target)

        back = pres.normal_form(h.antipode_inv(h.antipode_word(w)))
        rep.add(f"antipode-inv[{name}]", "S⁻¹S = id", back == nf_w)

    # multiplicativity of Δ on random pairs (beyond the rule check)
    for k in range(min(samples, 12)):
        a = pres.random_word(rng, max_len, degree_cap=degree_bound)
        b = pres.random_word(rng, max_len, degree_cap=degree_bound)
        prod = pres.multiply_words(a, b)
        ok = h.coproduct(prod) == h.coproduct_word(a) * h.coproduct_word(b)
        rep.add(f"delta-mult[{k}]", "Δ(ab) = Δ(a)Δ(b)", ok)
    return rep


# ---------------------------------------------------------------------------


class HopfPairing:
    """Bilinear Hopf pairing between two presented Hopf algebras.

    ``base(word, gen_index) -> Fraction`` supplies the value of a left
    normal word against a single right generator; longer right words are
    reduced through the left coproduct:

        ⟨a, αβ⟩ = ⟨Δ(a), α⊗β⟩,  ⟨a⊗b, α⊗β⟩ = (-1)^{|b||α|} ⟨a,α⟩⟨b,β⟩.

    ``bound`` truncates the allowed word length on either side, realizing the
    pro-finite topology exactly.
    """

    def __init__(self, left: HopfStructure, right: HopfStructure,
                 base: Callable[[Word, int], Fraction], bound: int = 32):
        self.left = left
        self.right = right
        self.base = base
        self.bound = bound
        self._cache: Dict[tuple, Fraction] = {}

    def eval_words(self, a: Word, alpha: Word) -> Fraction:
        if len(a) > self.bound or len(alpha) > self.bound:
            raise FiltrationExceeded(f"word beyond pairing bound {self.bound}")
        key = (a, alpha)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if not alpha:
            val = self.left.counit_word(a)
        elif len(alpha) == 1:
            val = Fraction(self.base(a, alpha[0]))
        else:
            head, rest = (alpha[0],), alpha[1:]
            rp = self.right.pres
            lp = self.left.pres
            head_par = rp.generators[alpha[0]].parity
            val = Fraction(0)
            for (w1, w2), c in self.left.coproduct_word(a).terms.items():
                v1 = self.eval_words(w1, head)
                if not v1:
                    continue
                v2 = self.eval_words(w2, rest)
                if not v2:
                    continue
                sign = -1 if (head_par and lp.parity(w2)) else 1
                val += c * sign * v1 * v2
        self._cache[key] = val
        return val

    def eval(self, a: GradedElement, alpha: GradedElement) -> Fraction:
        out = Fraction(0)
        for w, c in a.items():
            for v, d in alpha.items():
                out += c * d * self.eval_words(w, v)
        return out

    def eval_tensor(self, t: TensorElement, u: TensorElement) -> Fraction:
        """⟨a⊗b, α⊗β⟩ with the Koszul crossing sign, arity 2 both sides."""
        assert t.arity == u.arity == 2
        out = Fraction(0)
        lp = self.left.pres
        rp = self.right.pres
        for (a, b), c in t.terms.items():
            for (al, be), d in u.terms.items():
                sign = -1 if (lp.parity(b) and rp.parity(al)) else 1
                v1 = self.eval_words(a, al)
                if not v1:
                    continue
                v2 = self.eval_words(b, be)
                if not v2:
                    continue
                out += c * d * sign * v1 * v2
        return out


def pairing_eval(p: HopfPairing, a: GradedElement, alpha: GradedElement) -> Fraction:
    return p.eval(a, alpha)


# ---------------------------------------------------------------------------


class TwistDatum:
    """An invertible 2-tensor F used to conjugate the coproduct.

    F must be of the form unit + nilpotent for the symbolic inverse to
    terminate; twists that only exist in a completion act on modules instead
    (see the operator layer).
    """

    def __init__(self, h: HopfStructure, tensor: TensorElement, max_power: int = 64):
        self.h = h
        self.tensor = tensor
        unit = TensorElement.unit(h.pres, 2)
        lead = tensor.terms.get(((), ()), Fraction(0))
        if lead == 0:
            raise CocycleViolation("twist has no invertible unit part")
        # F = lead·(1 + n) with n nilpotent; F⁻¹ = lead⁻¹·Σ (-n)^k
        n = (tensor - unit.scale(lead)).scale(Fraction(1) / lead)
        inv = unit.scale(Fraction(1) / lead)
        power = n
        k = 1
        while not power.is_zero():
            if k > max_power:
                raise CocycleViolation("twist is not unipotent: inverse did not terminate")
            sign = -1 if k % 2 else 1
            inv = inv + power.scale(Fraction(sign) / lead)
            power = power * n
            k += 1
        self.inverse = inv

    def check_cocycle(self) -> bool:
        """(F⊗1)(Δ⊗1)(F) == (1⊗F)(1⊗Δ)(F)."""
        h = self.h
        f = self.tensor
        left = _pad_right(f) * _apply_delta_slot(h, f, 0)
        right = _pad_left(f) * _apply_delta_slot(h, f, 1)
        return left == right


def _pad_right(t: TensorElement) -> TensorElement:
    out = TensorElement(t.pres, 3)
    out.terms = {k + ((),): c for k, c in t.terms.items()}
    return out


def _pad_left(t: TensorElement) -> TensorElement:
    out = TensorElement(t.pres, 3)
    out.terms = {((),) + k: c for k, c in t.terms.items()}
    return out


def _apply_delta_slot(h: HopfStructure, t: TensorElement, slot: int) -> TensorElement:
    return t.apply_slot(slot, h.coproduct_word)


def twist(h: HopfStructure, f: TwistDatum) -> HopfStructure:
    """New Hopf structure with Δ^F(x) = F·Δ(x)·F⁻¹ (same product and counit)."""
    if not f.check_cocycle():
        raise CocycleViolation("twist datum fails the cocycle identity")
    out = HopfStructure(h.pres)
    for i, delta in h._delta.items():
        twisted = f.tensor * delta * f.inverse
        out._delta[i] = twisted
        out._counit[i] = h._counit[i]
    # twisted antipode differs by the gauge element in general; recompute
    # from the axiom where solvable, else reuse (valid when the gauge is 1).
    try:
        out.solve_antipodes()
    except Exception:
        out._antipode = dict(h._antipode)
        out._antipode_inv = dict(h._antipode_inv)
    return out
