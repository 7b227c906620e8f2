"""Signed Drinfeld doubles of the group algebras, with derived cross rules.

The double of a presented Hopf algebra H with presented dual H* is again a
presentation: the H block comes first, the H* block second, and every
out-of-order pair (H*-letter)·(H-letter) rewrites through the straightening

    α·a = Σ ±  ⟨S⁻¹(a⁽¹⁾), α⁽¹⁾⟩ · a⁽²⁾ α⁽²⁾ · ⟨a⁽³⁾, α⁽³⁾⟩,

whose Koszul sign is the crossing sign of the shuffle
(α¹α²α³ a¹a²a³) → (a¹α¹ a²α² a³α³).  Everything downstream - centrality of
the dual de-Rham generator, the central extension of the adjoint-quotient
algebra, dual bases - is checked mechanically against this one convention;
local confluence of the assembled presentation certifies associativity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebras import (
    AlgebraInstance,
    LieData,
    build_A_G,
    build_A_GGad,
    build_H_G,
    poly_to_element,
    poly2_to_tensor,
    _mc_element,
)
from .core import GeneratorSymbol, GradedElement, Word
from .groups import FiniteGroupModel, UnipotentGroupModel
from .hopf import CheckReport, HopfPairing, HopfStructure, check_hopf_axioms
from .poly import Poly
from .rewriting import AlgebraPresentation
from .tensor import TensorElement


class DegeneratePairing(Exception):
    pass


# ---------------------------------------------------------------------------
# dual structures


def make_dual_AG(model: UnipotentGroupModel) -> AlgebraInstance:
    """Dual side of the de-Rham algebra: distributions, raw contraction
    vectors and the dual δ*, with the coproducts forced by dualization:
    Δ(∂) primitive, Δ(b) = b⊗1 + 1⊗b + δ*⊗∂_b, Δ(δ*) primitive."""
    lie = LieData.from_group(model)
    pres = AlgebraPresentation(f"A*({model.name})")
    n = model.n
    x_idx = [pres.add_generator(GeneratorSymbol(f"∂{c}", 0, 0, "distribution"))
             for c in model.coords]
    b_idx = [pres.add_generator(GeneratorSymbol(f"b_{c}", -1, -1, "vector"))
             for c in model.coords]
    ds = pres.add_generator(GeneratorSymbol("δ*_dR", -1, -1, "delta"))
    for j in range(n):
        for i in range(j):
            rhs = GradedElement.word((x_idx[i], x_idx[j]))
            for k, coeff in lie.f(j, i).items():
                rhs = rhs + GradedElement.word((x_idx[k],), coeff)
            pres.add_rule(x_idx[j], x_idx[i], rhs)
    for j in range(n):
        pres.add_rule(b_idx[j], b_idx[j], GradedElement.zero())
        for i in range(j):
            pres.add_rule(b_idx[j], b_idx[i], GradedElement.word((b_idx[i], b_idx[j]), -1))
        for i in range(n):
            rhs = GradedElement.word((x_idx[i], b_idx[j]))
            for k, coeff in lie.f(i, j).items():
                rhs = rhs - GradedElement.word((b_idx[k],), coeff)
            pres.add_rule(b_idx[j], x_idx[i], rhs)
    pres.add_rule(ds, ds, GradedElement.zero())
    for i in range(n):
        pres.add_rule(ds, x_idx[i], GradedElement.word((x_idx[i], ds)))
        pres.add_rule(ds, b_idx[i], GradedElement.word((b_idx[i], ds), -1))
    pres.freeze()

    hopf = HopfStructure(pres)
    for i, c in enumerate(model.coords):
        hopf.primitive(f"∂{c}")
    hopf.primitive("δ*_dR")
    one = GradedElement.unit()
    for j, c in enumerate(model.coords):
        b = pres.gen(f"b_{c}")
        delta = TensorElement.from_slots(pres, b, one) \
            + TensorElement.from_slots(pres, one, b) \
            + TensorElement.from_slots(pres, pres.gen("δ*_dR"),
                                       pres.gen(f"∂{c}"))
        s = b.scale(-1) + pres.multiply(pres.gen("δ*_dR"), pres.gen(f"∂{c}"))
        hopf.set_generator(f"b_{c}", delta, 0, antipode=pres.normal_form(s))
    hopf.solve_antipodes()
    return AlgebraInstance("A_G_dual", pres, hopf, lie=lie, group=model)


def make_dual_HG(model: UnipotentGroupModel) -> AlgebraInstance:
    """Dual side of the group-enveloping algebra: functions, raw vectors and
    δ*; Δ(f) = m*(f), Δ(b_j) = b_j⊗1 + Σ_k Ad_{g^{-1}}[k][j] ⊗ b_k,
    [b, f] = -(left-slot invariant derivative)(f)·δ*."""
    lie = LieData.from_group(model)
    pres = AlgebraPresentation(f"H*({model.name})")
    n = model.n
    y_idx = [pres.add_generator(GeneratorSymbol(c, 0, 0, "function"))
             for c in model.coords]
    b_idx = [pres.add_generator(GeneratorSymbol(f"b_{c}", -1, -1, "vector"))
             for c in model.coords]
    ds = pres.add_generator(GeneratorSymbol("δ*", -1, -1, "delta"))
    for k in range(n):
        for k2 in range(k):
            pres.add_rule(y_idx[k], y_idx[k2], GradedElement.word((y_idx[k2], y_idx[k])))
    for j in range(n):
        pres.add_rule(b_idx[j], b_idx[j], GradedElement.zero())
        for i in range(j):
            pres.add_rule(b_idx[j], b_idx[i], GradedElement.word((b_idx[i], b_idx[j]), -1))
        for k in range(n):
            # [b_j, y_k] = -(right-invariant derivative)_j(y_k) δ*; the frame
            # side is forced: with the left-invariant one the dual is not
            # even a Hopf algebra for nonabelian models
            rhs = GradedElement.word((y_idx[k], b_idx[j]))
            coeff_poly = model.A_right[k][j]
            if coeff_poly:
                rhs = rhs - poly_to_element(pres, coeff_poly, y_idx).concat(
                    GradedElement.word((ds,)))
            pres.add_rule(b_idx[j], y_idx[k], pres.normal_form(rhs))
    pres.add_rule(ds, ds, GradedElement.zero())
    for i in range(n):
        pres.add_rule(ds, y_idx[i], GradedElement.word((y_idx[i], ds)))
        pres.add_rule(ds, b_idx[i], GradedElement.word((b_idx[i], ds), -1))
    pres.freeze()

    hopf = HopfStructure(pres)
    for k, c in enumerate(model.coords):
        delta = poly2_to_tensor(pres, model.mult[k], y_idx)
        anti = poly_to_element(pres, model.inverse[k], y_idx)
        hopf.set_generator(c, delta, 0, anti, anti)
    hopf.primitive("δ*")
    one = GradedElement.unit()
    for j, c in enumerate(model.coords):
        b = pres.gen(f"b_{c}")
        delta = TensorElement.from_slots(pres, b, one)
        for k, c2 in enumerate(model.coords):
            p = model.ad_matrix_inv[k][j]
            if p:
                delta = delta + TensorElement.from_slots(
                    pres, poly_to_element(pres, p, y_idx), pres.gen(f"b_{c2}"))
        hopf.set_generator(f"b_{c}", delta, 0)
    hopf.solve_antipodes(order=[g.name for g in pres.generators])
    return AlgebraInstance("H_G_dual", pres, hopf, lie=lie, group=model)


def make_dual_OG_finite(model: FiniteGroupModel) -> AlgebraInstance:
    """Dual of the finite function algebra: the group algebra on point masses."""
    return build_H_G(model)


def make_OG_finite(model: FiniteGroupModel) -> AlgebraInstance:
    """Function algebra of a finite group on the indicator basis minus the
    identity indicator (which is 1 - Σ v_g)."""
    pres = AlgebraPresentation(f"O({model.name})")
    idx = {}
    for g, name in enumerate(model.elements):
        if g == model.identity:
            continue
        idx[g] = pres.add_generator(GeneratorSymbol(f"e[{name}]", 0, 0, "function"))
    for g, ig in sorted(idx.items()):
        for h, ih in sorted(idx.items()):
            rhs = GradedElement.word((ig,)) if g == h else GradedElement.zero()
            pres.add_rule(ig, ih, rhs)
    pres.freeze()

    def indicator(g: int) -> GradedElement:
        if g == model.identity:
            out = GradedElement.unit()
            for h, ih in idx.items():
                out = out - GradedElement.word((ih,))
            return out
        return GradedElement.word((idx[g],))

    hopf = HopfStructure(pres)
    for g, ig in idx.items():
        delta = TensorElement(pres, 2)
        for a in range(model.order()):
            for b in range(model.order()):
                if model.mul(a, b) == g:
                    delta = delta + TensorElement.from_slots(
                        pres, indicator(a), indicator(b))
        hopf.set_generator(f"e[{model.elements[g]}]", delta, 0,
                           indicator(model.inv(g)), indicator(model.inv(g)))
    inst = AlgebraInstance("O_G", pres, hopf, group=model)
    inst.notes["indicator"] = indicator
    return inst


# ---------------------------------------------------------------------------
# pairings


def pairing_base_AG(model: UnipotentGroupModel, h_pres: AlgebraPresentation,
                    s_pres: AlgebraPresentation) -> Callable[[Word, int], Fraction]:
    """Base values ⟨H-word, H*-generator⟩ for the de-Rham pairing."""
    n = model.n
    coord_gen = {h_pres.index(c): k for k, c in enumerate(model.coords)}
    form_gen = {h_pres.index(f"c^{c}"): k for k, c in enumerate(model.coords)}
    delta_gen = h_pres.index("δ_dR")

    def word_to_poly(w: Word) -> Optional[Poly]:
        p = Poly.const(n, 1)
        for letter in w:
            if letter not in coord_gen:
                return None
            p = p * Poly.var(n, coord_gen[letter])
        return p

    def base(w: Word, alpha: int) -> Fraction:
        name = s_pres.generators[alpha].name
        if name.startswith("∂"):
            i = model.coords.index(name[1:])
            p = word_to_poly(w)
            if p is None:
                return Fraction(0)
            return model.left_invariant(i).apply(p).eval([0] * n)
        if name.startswith("b_"):
            j = model.coords.index(name[2:])
            return Fraction(1) if w == (h_pres.index(f"c^{model.coords[j]}"),) \
                else Fraction(0)
        if name.startswith("δ*"):
            return Fraction(1) if w == (delta_gen,) else Fraction(0)
        raise KeyError(name)

    return base


def pairing_base_HG(model: UnipotentGroupModel, h_pres: AlgebraPresentation,
                    s_pres: AlgebraPresentation) -> Callable[[Word, int], Fraction]:
    """Base values ⟨H-word, H*-generator⟩ for the enveloping-side pairing."""
    n = model.n
    dist_gen = {h_pres.index(f"∂{c}"): k for k, c in enumerate(model.coords)}
    delta_gen = h_pres.index("δ")

    def base(w: Word, alpha: int) -> Fraction:
        name = s_pres.generators[alpha].name
        if name.startswith("b_"):
            j = model.coords.index(name[2:])
            return Fraction(1) if w == (h_pres.index(f"c^{model.coords[j]}"),) \
                else Fraction(0)
        if name == "δ*":
            return Fraction(1) if w == (delta_gen,) else Fraction(0)
        # coordinate function against a pure distribution word
        k = model.coords.index(name)
        p = Poly.var(n, k)
        for letter in reversed(w):
            if letter not in dist_gen:
                return Fraction(0)
            p = model.left_invariant(dist_gen[letter]).apply(p)
        return p.eval([0] * n)

    return base


def pairing_base_finite(model: FiniteGroupModel, h_pres: AlgebraPresentation,
                        s_pres: AlgebraPresentation) -> Callable[[Word, int], Fraction]:
    def base(w: Word, alpha: int) -> Fraction:
        name = s_pres.generators[alpha].name  # δ[g]
        g = model.index[name[2:-1]]
        if not w:
            return Fraction(1)
        if len(w) == 1:
            h = model.index[h_pres.generators[w[0]].name[2:-1]]
            return Fraction(1) if h == g else Fraction(0)
        return Fraction(0)

    return base


def check_pairing_duality(pair: HopfPairing, rng, samples: int = 30,
                          max_len: int = 3) -> CheckReport:
    """Both dualization identities and antipode compatibility on random data."""
    rep = CheckReport("pairing-duality")
    hp, sp = pair.left.pres, pair.right.pres
    for t in range(samples):
        a = hp.random_word(rng, max_len)
        b = hp.random_word(rng, max_len)
        alpha = sp.random_word(rng, max_len)
        ab = hp.normal_form_word(a + b)
        lhs = Fraction(0)
        for w, c in ab.items():
            lhs += c * pair.eval_words(w, alpha)
        rhs = pair.eval_tensor(
            TensorElement.from_slots(hp, GradedElement.word(a), GradedElement.word(b)),
            pair.right.coproduct_word(alpha))
        rep.add(f"product-left[{t}]", "⟨ab, α⟩ = ⟨a⊗b, Δ*(α)⟩", lhs == rhs)
        sa = pair.left.antipode_word(a)
        salpha = pair.right.antipode_word(alpha)
        lhs2 = Fraction(0)
        for w, c in sa.items():
            lhs2 += c * pair.eval_words(w, alpha)
        rhs2 = Fraction(0)
        for v, c in salpha.items():
            rhs2 += c * pair.eval_words(a, v)
        rep.add(f"antipode[{t}]", "⟨Sa, α⟩ = ⟨a, S*α⟩", lhs2 == rhs2)
    return rep


# ---------------------------------------------------------------------------
# the double


@dataclass
class DoubleAlgebra:
    name: str
    h: AlgebraInstance
    hstar: AlgebraInstance
    pairing: HopfPairing
    pres: AlgebraPresentation = None
    hopf: HopfStructure = None
    h_map: Dict[int, int] = field(default_factory=dict)
    s_map: Dict[int, int] = field(default_factory=dict)
    group: object = None
    flipped: Dict[str, int] = field(default_factory=dict)  # name -> sign used

    def embed_h(self, e: GradedElement) -> GradedElement:
        return GradedElement({tuple(self.h_map[i] for i in w): c
                              for w, c in e.items()})

    def embed_s(self, e: GradedElement) -> GradedElement:
        out = {}
        for w, c in e.items():
            sign = 1
            for i in w:
                sign *= self.flipped.get(self.hstar.pres.generators[i].name, 1)
            out[tuple(self.s_map[i] for i in w)] = c * sign
        return GradedElement(out)

    def gen(self, name: str) -> GradedElement:
        return self.pres.gen(name)


#: Straightening convention, pinned by a consistency scan over all leg
#: patterns, antipode placements and crossing-sign models: only the crossed
#: contraction (first H-leg against last dual leg, twisted by the inverse
#: antipode) yields a confluent double for nonabelian groups, with the
#: adjoint commutation [∂, f] = ξ^ad(f), the pairing bracket
#: {b, c} = ((1-g^{-1})b, c) and the extension cocycle valued in the
#: right-invariant derivative, matching the stated relations everywhere.
STRAIGHTEN_CONFIG = {
    "pattern": "crossed",    # contractions pair (a1, α3) and (a3, α1)
    "s_leg": 1,              # the first H-leg carries the antipode twist
    "s_type": "inv",         # with the inverse antipode
    "sign_model": "shuffle-op",
}


def straighten(h: HopfStructure, hstar: HopfStructure, pair: HopfPairing,
               alpha: Word, a: Word,
               h_map: Dict[int, int], s_map: Dict[int, int],
               pres: AlgebraPresentation,
               config: Optional[dict] = None) -> GradedElement:
    """α·a as a sum of (H-word)·(H*-word) terms in the double presentation."""
    cfg = config or STRAIGHTEN_CONFIG
    hp, sp = h.pres, hstar.pres
    ta = h.coproduct_iterated(GradedElement.word(a), 3)
    talpha = hstar.coproduct_iterated(GradedElement.word(alpha), 3)
    twist = h.antipode_inv if cfg["s_type"] == "inv" else h.antipode
    out = GradedElement()
    for (a1, a2, a3), ca in ta.terms.items():
        p = (hp.parity(a1), hp.parity(a2), hp.parity(a3))
        e1 = GradedElement.word(a1)
        e3 = GradedElement.word(a3)
        if cfg["s_leg"] == 1:
            e1 = twist(e1)
        else:
            e3 = twist(e3)
        for (l1, l2, l3), cl in talpha.terms.items():
            q = (sp.parity(l1), sp.parity(l2), sp.parity(l3))
            if cfg["pattern"] == "parallel":
                v1 = pair.eval(e1, GradedElement.word(l1))
                if not v1:
                    continue
                v3 = pair.eval(e3, GradedElement.word(l3))
            else:
                v1 = pair.eval(e1, GradedElement.word(l3))
                if not v1:
                    continue
                v3 = pair.eval(e3, GradedElement.word(l1))
            if not v3:
                continue
            if cfg["sign_model"] == "shuffle":
                exp = p[0] * (q[0] + q[1] + q[2]) + p[1] * (q[1] + q[2]) + p[2] * q[2]
            else:
                exp = p[0] * q[0] + p[0] * (q[1] + q[2]) + p[1] * (q[1] + q[2]) \
                    + p[2] * q[2] + p[2] * q[2] * 0 + q[0] * (p[1] + p[2])
            sign = -1 if exp % 2 else 1
            word = tuple(h_map[i] for i in a2) + tuple(s_map[i] for i in l2)
            out = out + GradedElement.word(word, ca * cl * v1 * v3 * sign)
    return pres.normal_form(out)


def build_double(name: str, h: AlgebraInstance, hstar: AlgebraInstance,
                 base: Callable[[Word, int], Fraction],
                 flip: Optional[Sequence[str]] = None,
                 group=None, certify: bool = True,
                 pairing_bound: int = 40) -> DoubleAlgebra:
    """Assemble H ⊗ H*cop with derived cross relations.

    ``flip`` lists H*-generator names to be installed with a sign flip
    (the public generator is minus the raw dual one); the flip is applied
    uniformly to rules, coproducts and pairing values.
    """
    pair = HopfPairing(h.hopf, hstar.hopf, base, bound=pairing_bound)
    d = DoubleAlgebra(name, h, hstar, pair, group=group)
    flip = set(flip or ())
    pres = AlgebraPresentation(name)
    for i, g in enumerate(h.pres.generators):
        d.h_map[i] = pres.add_generator(GeneratorSymbol(g.name, g.degree, g.weight, g.sort))
    for i, g in enumerate(hstar.pres.generators):
        d.s_map[i] = pres.add_generator(GeneratorSymbol(g.name, g.degree, g.weight, g.sort))
        d.flipped[g.name] = -1 if g.name in flip else 1

    def sgn_word_s(w: Word) -> int:
        s = 1
        for i in w:
            s *= d.flipped[hstar.pres.generators[i].name]
        return s

    for (i, j), rhs in h.pres.rules.items():
        pres.add_rule(d.h_map[i], d.h_map[j], d.embed_h(rhs))
    for (i, j), rhs in hstar.pres.rules.items():
        lead_sign = d.flipped[hstar.pres.generators[i].name] * \
            d.flipped[hstar.pres.generators[j].name]
        pres.add_rule(d.s_map[i], d.s_map[j], d.embed_s(rhs).scale(lead_sign))

    # derived cross relations
    for si, gs in enumerate(hstar.pres.generators):
        for hi, gh in enumerate(h.pres.generators):
            rhs = straighten(h.hopf, hstar.hopf, pair, (si,), (hi,),
                             d.h_map, d.s_map, pres)
            rhs = _apply_flip_to_double_words(rhs, d, pres)
            pres.add_rule(d.s_map[si], d.h_map[hi],
                          rhs.scale(d.flipped[gs.name]))
    pres.freeze()
    d.pres = pres

    hopf = HopfStructure(pres)
    for i, g in enumerate(h.pres.generators):
        t = h.hopf._delta[i]
        mapped = TensorElement(pres, 2)
        for (w1, w2), c in t.terms.items():
            key = (tuple(d.h_map[k] for k in w1), tuple(d.h_map[k] for k in w2))
            mapped.terms[key] = mapped.terms.get(key, Fraction(0)) + c
        hopf.set_generator(g.name, mapped, h.hopf._counit[i],
                           d.embed_h(h.hopf._antipode[i]),
                           d.embed_h(h.hopf._antipode_inv[i]))
    for i, g in enumerate(hstar.pres.generators):
        t = hstar.hopf._delta[i].flip()   # co-opposite on the dual side
        sign = d.flipped[g.name]
        mapped = TensorElement(pres, 2)
        for (w1, w2), c in t.terms.items():
            key = (tuple(d.s_map[k] for k in w1), tuple(d.s_map[k] for k in w2))
            mapped.terms[key] = mapped.terms.get(key, Fraction(0)) \
                + c * sign * sgn_word_s(w1) * sgn_word_s(w2)
        # antipode of the co-opposite dual is the inverse antipode
        s_el = d.embed_s(hstar.hopf._antipode_inv[i]).scale(sign)
        s_inv_el = d.embed_s(hstar.hopf._antipode[i]).scale(sign)
        hopf.set_generator(g.name, mapped, hstar.hopf._counit[i],
                           pres.normal_form(s_el), pres.normal_form(s_inv_el))
    d.hopf = hopf

    if certify:
        rep = pres.check_local_confluence()
        if not rep.ok:
            raise AssertionError(
                f"{name}: double is not associative: "
                + "; ".join(m.describe(pres) for m in rep.mismatches[:4]))
    return d


def _apply_flip_to_double_words(e: GradedElement, d: DoubleAlgebra,
                                pres: AlgebraPresentation) -> GradedElement:
    inv = {v: k for k, v in d.s_map.items()}
    out = {}
    for w, c in e.items():
        sign = 1
        for letter in w:
            if letter in inv:
                sign *= d.flipped[d.hstar.pres.generators[inv[letter]].name]
        out[w] = c * sign
    return GradedElement(out)


def double_product(d: DoubleAlgebra, x: GradedElement, alpha: GradedElement) -> GradedElement:
    """α·x in the double, for x in the H block and α in the H* block."""
    return d.pres.multiply(d.embed_s(alpha), d.embed_h(x))


# ---------------------------------------------------------------------------
# the shipped doubles


def build_double_AG(model: UnipotentGroupModel, certify: bool = True) -> DoubleAlgebra:
    h = build_A_G(model, check=certify)
    hstar = make_dual_AG(model)
    base = pairing_base_AG(model, h.pres, hstar.pres)
    d = build_double(f"D(A({model.name}))", h, hstar, base,
                     flip=[f"b_{c}" for c in model.coords],
                     group=model, certify=certify)
    return d


def build_double_HG(model: UnipotentGroupModel, certify: bool = True) -> DoubleAlgebra:
    """Double of the group enveloping algebra, in the same phase as the
    double of the forms algebra (vectors flipped), so the identification of
    the two doubles is the identity on generator names."""
    h = build_H_G(model, check=certify)
    hstar = make_dual_HG(model)
    base = pairing_base_HG(model, h.pres, hstar.pres)
    return build_double(f"D(H({model.name}))", h, hstar, base,
                        flip=[f"b_{c}" for c in model.coords],
                        group=model, certify=certify)


def build_double_OG(model: FiniteGroupModel, certify: bool = True) -> DoubleAlgebra:
    h = make_OG_finite(model)
    hstar = make_dual_OG_finite(model)
    base = pairing_base_finite(model, h.pres, hstar.pres)
    return build_double(f"D(O({model.name}))", h, hstar, base,
                        group=model, certify=certify)


# ---------------------------------------------------------------------------
# dual bases


@dataclass
class DualBasisTable:
    """Paired bases with identity pairing matrix on each filtration piece."""
    double: DoubleAlgebra
    bound: int
    pairs: List[Tuple[GradedElement, GradedElement]] = field(default_factory=list)
    pieces: List[Tuple[Tuple[int, int], int]] = field(default_factory=list)


def _filtration_weights(inst: AlgebraInstance) -> Dict[int, int]:
    """Per-generator filtration weight (coordinate weights; delta letters 0)."""
    model = inst.group
    out = {}
    for i, g in enumerate(inst.pres.generators):
        name = g.name
        if g.sort == "delta":
            out[i] = 0
        elif isinstance(model, UnipotentGroupModel):
            wt = None
            for k, c in enumerate(model.coords):
                if name in (c, f"∂{c}", f"b_{c}", f"c^{c}", f"v_{c}"):
                    wt = model.weights[k]
            out[i] = wt if wt is not None else 0
        else:
            out[i] = 1
    return out


def enumerate_normal_words(pres: AlgebraPresentation, weights: Dict[int, int],
                           bound: int) -> List[Word]:
    """All normal words of filtration weight ≤ bound (weights must be ≥ 0,
    with zero-weight letters nilpotent so the set is finite)."""
    out = [()]
    frontier = [()]
    seen = {()}
    while frontier:
        w = frontier.pop()
        for i in range(len(pres.generators)):
            if w and (w[-1], i) in pres.rules:
                continue
            w2 = w + (i,)
            if sum(weights[k] for k in w2) > bound:
                continue
            # zero-weight letters must not repeat unboundedly: rely on
            # nilpotency rules; cap the word length defensively
            if len(w2) > 2 * bound + 4:
                continue
            if w2 not in seen and pres.is_normal_word(w2):
                seen.add(w2)
                out.append(w2)
                frontier.append(w2)
    return sorted(out, key=lambda w: (len(w), w))


def build_dual_basis(d: DoubleAlgebra, bound: int) -> DualBasisTable:
    """Invert the pairing matrix on each (degree, filtration) piece."""
    from .linalg import mat_inv

    hw = _filtration_weights(d.h)
    sw = _filtration_weights(d.hstar)
    h_words = enumerate_normal_words(d.h.pres, hw, bound)
    s_words = enumerate_normal_words(d.hstar.pres, sw, bound)
    # for unipotent models the filtration is an exact grading and the pairing
    # is block-diagonal over (degree, weight); finite models are only
    # filtered, so each degree is inverted as one block
    graded = isinstance(d.group, UnipotentGroupModel)
    pieces: Dict[Tuple[int, int], Tuple[List[Word], List[Word]]] = {}
    for w in h_words:
        key = (d.h.pres.degree(w), sum(hw[i] for i in w) if graded else 0)
        pieces.setdefault(key, ([], []))[0].append(w)
    for v in s_words:
        key = (-d.hstar.pres.degree(v), sum(sw[i] for i in v) if graded else 0)
        if key in pieces:
            pieces[key][1].append(v)
        else:
            pieces.setdefault(key, ([], []))[1].append(v)
    table = DualBasisTable(d, bound)
    for key in sorted(pieces):
        ws, vs = pieces[key]
        if len(ws) != len(vs):
            raise DegeneratePairing(
                f"{d.name}: piece {key} has {len(ws)} basis words against {len(vs)}")
        if not ws:
            continue
        m = [[d.pairing.eval_words(w, v) for v in vs] for w in ws]
        try:
            minv = mat_inv(m)
        except ValueError as exc:
            raise DegeneratePairing(f"{d.name}: singular pairing on piece {key}") from exc
        for col in range(len(ws)):
            dual = GradedElement()
            for row in range(len(vs)):
                dual = dual + GradedElement.word(vs[row], minv[row][col])
            table.pairs.append((GradedElement.word(ws[col]), dual))
        table.pieces.append((key, len(ws)))
    return table


def check_dual_basis(table: DualBasisTable, sample: int = 200) -> CheckReport:
    rep = CheckReport(f"dual-basis[{table.double.name}]")
    pair = table.double.pairing
    n = len(table.pairs)
    rep.add("size", f"{n} basis pairs", n > 0)
    for i, (w, dual) in enumerate(table.pairs[:sample]):
        ok = pair.eval(w, dual) == 1
        rep.add(f"diag[{i}]", "⟨w_i, w^i⟩ = 1", ok)
    # random off-diagonal spot checks within the same piece would require
    # piece bookkeeping; verify global biorthogonality on small tables instead
    if n <= 60:
        ok = True
        for i, (w, _) in enumerate(table.pairs):
            for j, (_, dual) in enumerate(table.pairs):
                v = pair.eval(w, dual)
                if v != (1 if i == j else 0):
                    ok = False
        rep.add("biorthogonal", "pairing matrix is the identity", ok)
    return rep


# ---------------------------------------------------------------------------
# central extension


def verify_central_extension(model: UnipotentGroupModel,
                             control_unflipped: bool = False) -> CheckReport:
    """The dual de-Rham generator spans a central Hopf ideal; the quotient is
    the adjoint-quotient algebra generator-for-generator (the dual vectors
    enter with a sign flip); the extension cocycle is the invariant-derivative
    cocycle [b, f] = ξ_b(f)·δ*."""
    rep = CheckReport(f"central-extension[{model.name}]")
    d = build_double_AG(model, certify=True)
    pres = d.pres
    ds = pres.gen("δ*_dR")
    n = model.n

    # graded centrality and primitivity
    for g in pres.generators:
        if g.name == "δ*_dR":
            continue
        x = pres.gen(g.name)
        sign = -1 if g.parity else 1
        comm = pres.multiply(ds, x) - pres.multiply(x, ds).scale(sign)
        rep.add(f"central[{g.name}]", "δ* graded-commutes", comm.is_zero())
    t = d.hopf.coproduct(ds)
    one = GradedElement.unit()
    prim = TensorElement.from_slots(pres, ds, one) + TensorElement.from_slots(pres, one, ds)
    rep.add("primitive", "Δ(δ*) = δ*⊗1 + 1⊗δ*", t == prim)
    rep.add("hopf-ideal-antipode", "S(δ*) = -δ*",
            d.hopf.antipode(ds) == ds.scale(-1))

    # extension cocycle on all generator pairs (b, coordinate); the invariant
    # derivative here is the right-invariant one (the field generating left
    # translations), forced by associativity of the double
    cocycle_ok = True
    for j, cj in enumerate(model.coords):
        for k, ck in enumerate(model.coords):
            b = pres.gen(f"b_{cj}")
            y = pres.gen(ck)
            comm = pres.multiply(b, y) - pres.multiply(y, b)
            coeff = model.A_right[k][j]
            expect = poly_to_element(pres, coeff,
                                     [pres.index(c) for c in model.coords])
            expect = pres.multiply(expect, ds)
            if control_unflipped:
                expect = expect.scale(-1)
            if comm != expect:
                cocycle_ok = False
                rep.add(f"cocycle[{cj},{ck}]",
                        "[b, f] = ξ_b(f)·δ*", False,
                        f"got {pres.render(comm)}, want {pres.render(expect)}")
    rep.add("cocycle", "[b, f] = ξ_b(f)·δ* for all pairs", cocycle_ok)

    # quotient is the adjoint-quotient presentation
    a = build_A_GGad(model, check=False)
    sign_map = -1 if control_unflipped else 1

    def to_quotient(e: GradedElement) -> GradedElement:
        out = {}
        for w, c in e.items():
            if any(pres.generators[i].name == "δ*_dR" for i in w):
                continue
            try:
                w2 = tuple(a.pres.index(pres.generators[i].name) for i in w)
            except KeyError:
                return None
            s = 1
            for i in w:
                if pres.generators[i].name.startswith("b_"):
                    s *= sign_map
            out[w2] = out.get(w2, Fraction(0)) + c * s
        return GradedElement(out)

    iso_ok = True
    for (i, j), rhs in sorted(pres.rules.items()):
        ni, nj = pres.generators[i].name, pres.generators[j].name
        if "δ*" in ni or "δ*" in nj:
            continue
        lead = to_quotient(GradedElement.word((i, j)))
        image = to_quotient(rhs)
        if lead is None or image is None:
            iso_ok = False
            continue
        if a.pres.normal_form(lead) != a.pres.normal_form(image):
            iso_ok = False
            rep.add(f"quotient-rule[{ni},{nj}]", "rule descends to the quotient",
                    False)
    rep.add("quotient-iso",
            "quotient presentation matches the adjoint-quotient algebra "
            "(vectors flipped)", iso_ok)

    # coproducts descend as well
    co_ok = True
    for g in a.pres.generators:
        td = d.hopf.coproduct(pres.gen(g.name))
        ta = a.hopf.coproduct(a.pres.gen(g.name))
        mapped = TensorElement(a.pres, 2)
        for (w1, w2), c in td.terms.items():
            q1, q2 = to_quotient(GradedElement.word(w1)), to_quotient(GradedElement.word(w2))
            if q1 is None or q2 is None or q1.is_zero() or q2.is_zero():
                continue
            for u1, c1 in q1.items():
                for u2, c2 in q2.items():
                    key = (u1, u2)
                    mapped.terms[key] = mapped.terms.get(key, Fraction(0)) + c * c1 * c2
            mapped.terms = {k: v for k, v in mapped.terms.items() if v}
        if mapped != ta:
            co_ok = False
    rep.add("quotient-coproduct", "coproducts match in the quotient", co_ok)
    return rep
