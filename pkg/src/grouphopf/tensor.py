"""Tensor powers of a presented algebra.

A ``TensorElement`` of arity k is a finite sum of k-tuples of normal-form
words.  Multiplication is slot-wise with the Koszul sign for letters crossing
tensor slots, and each slot is re-normalized in the underlying presentation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .core import GradedElement, Word
from .rewriting import AlgebraPresentation

Key = Tuple[Word, ...]


class TensorElement:
    __slots__ = ("pres", "arity", "terms")

    def __init__(self, pres: AlgebraPresentation, arity: int,
                 terms: Dict[Key, Fraction] | None = None):
        self.pres = pres
        self.arity = arity
        self.terms: Dict[Key, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)

    # -- constructors ----------------------------------------------------

    @classmethod
    def unit(cls, pres, arity, coeff=1) -> "TensorElement":
        return cls(pres, arity, {((),) * arity: Fraction(coeff)})

    @classmethod
    def from_slots(cls, pres, *slots: GradedElement) -> "TensorElement":
        """Pure tensor of elements (no cross-slot signs at construction)."""
        out = cls(pres, len(slots))
        acc = {(): Fraction(1)}
        for s, slot in enumerate(slots):
            nxt: Dict[Key, Fraction] = {}
            for key, c in acc.items():
                for w, cw in slot.items():
                    k2 = key + (w,)
                    v = nxt.get(k2, 0) + c * cw
                    if v:
                        nxt[k2] = v
                    else:
                        nxt.pop(k2, None)
            acc = nxt
        out.terms = acc
        return out

    def copy_terms(self):
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "TensorElement") -> "TensorElement":
        assert self.arity == other.arity
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = TensorElement(self.pres, self.arity)
        res.terms = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff) -> "TensorElement":
        c = Fraction(coeff)
        res = TensorElement(self.pres, self.arity)
        if c:
            res.terms = {k: v * c for k, v in self.terms.items()}
        return res

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Slot-wise product with Koszul signs for crossing letters."""
        assert self.arity == other.arity and self.pres is other.pres
        pres = self.pres
        parity = pres.parity
        out: Dict[Key, Fraction] = {}
        for ka, ca in self.terms.items():
            pa = [parity(w) for w in ka]
            for kb, cb in other.terms.items():
                # sign: each b-slot j crosses a-slots i > j
                exp = 0
                for j in range(self.arity):
                    pb = parity(kb[j])
                    if pb:
                        for i in range(j + 1, self.arity):
                            exp += pa[i]
                sign = -1 if exp % 2 else 1
                coeff = ca * cb * sign
                # normal-form each concatenated slot, distributing sums
                partial: Dict[Key, Fraction] = {(): coeff}
                for s in range(self.arity):
                    nf = pres.normal_form_word(ka[s] + kb[s])
                    nxt: Dict[Key, Fraction] = {}
                    for key, c0 in partial.items():
                        for w, cw in nf.items():
                            k2 = key + (w,)
                            v = nxt.get(k2, 0) + c0 * cw
                            if v:
                                nxt[k2] = v
                            else:
                                nxt.pop(k2, None)
                    partial = nxt
                    if not partial:
                        break
                for key, c0 in partial.items():
                    v = out.get(key, 0) + c0
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        res = TensorElement(self.pres, self.arity)
        res.terms = out
        return res

    # -- slot operations ----------------------------------------------------

    def apply_slot(self, slot: int, fn, new_arity_delta: int = 1) -> "TensorElement":
        """Replace one slot through a word-level map returning TensorElements.

        ``fn(word) -> TensorElement`` of arity ``1 + new_arity_delta`` in the
        same presentation; used to extend coproducts slot-wise.  No signs
        arise because the inserted maps are degree preserving.
        """
        out = TensorElement(self.pres, self.arity + new_arity_delta)
        acc: Dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            expanded = fn(key[slot])
            for k2, c2 in expanded.terms.items():
                full = key[:slot] + k2 + key[slot + 1:]
                v = acc.get(full, 0) + c * c2
                if v:
                    acc[full] = v
                else:
                    acc.pop(full, None)
        out.terms = acc
        return out

    def flip(self, i: int = 0, j: int = 1) -> "TensorElement":
        """Transpose two slots with the Koszul sign."""
        pres = self.pres
        out: Dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            pi, pj = pres.parity(key[i]), pres.parity(key[j])
            sign = -1 if (pi and pj) else 1
            lk = list(key)
            lk[i], lk[j] = lk[j], lk[i]
            k2 = tuple(lk)
            v = out.get(k2, 0) + c * sign
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
        res = TensorElement(pres, self.arity)
        res.terms = out
        return res

    def multiply_out(self) -> GradedElement:
        """Collapse all slots by multiplication (no extra signs)."""
        out = GradedElement()
        for key, c in self.terms.items():
            w = ()
            for part in key:
                w = w + part
            out = out + self.pres.normal_form_word(w).scale(c)
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.pres.names()
        parts = []
        for key, c in sorted(self.terms.items(),
                             key=lambda kv: (tuple(len(w) for w in kv[0]), kv[0])):
            slot_txt = " ⊗ ".join(
                "·".join(names[i] for i in w) if w else "1" for w in key
            )
            parts.append(f"({c})·{slot_txt}")
        return "  +  ".join(parts)

    def __repr__(self):
        return f"TensorElement(arity={self.arity}, {len(self.terms)} terms)"
