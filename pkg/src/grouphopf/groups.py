"""Concrete group backends.

Two kinds of models are supported:

* unipotent algebraic groups in polynomial coordinates, given by the
  multiplication polynomials of their Hopf algebra of functions, from which
  invariant vector fields, structure constants, adjoint (co)actions and
  one-parameter subgroups are derived exactly;
* finite groups given by a multiplication table.

Distributions on a unipotent group are finite sums of (point, enveloping
word) pairs acting on functions by invariant derivatives at the point.

Both convention-sensitive choices are fixed here once and for all: the
*left-invariant* field of a basis vector is the derivative of the second
multiplication slot at the identity, and the adjoint field is
``left_invariant - right_invariant`` (the vector field of h -> g^{-1} h g),
which vanishes at the identity.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Poly, parse_poly

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml


class MalformedDefinition(Exception):
    pass


class GroupAxiomViolation(Exception):
    pass


class UnsupportedGroup(Exception):
    pass


# ---------------------------------------------------------------------------
# unipotent models


class Derivation:
    """Derivation on polynomial functions, as coefficient polys per ∂_k."""

    def __init__(self, model: "UnipotentGroupModel", coeffs: Sequence[Poly]):
        self.model = model
        self.coeffs = list(coeffs)

    def apply(self, f: Poly) -> Poly:
        out = Poly.const(self.model.n, 0)
        for k, ck in enumerate(self.coeffs):
            if ck:
                out = out + ck * f.diff(k)
        return out

    def bracket(self, other: "Derivation") -> "Derivation":
        n = self.model.n
        coeffs = []
        for k in range(n):
            xk = Poly.var(n, k)
            coeffs.append(self.apply(other.coeffs[k]) - other.apply(self.coeffs[k]))
        return Derivation(self.model, coeffs)

    def at_identity(self) -> List[Fraction]:
        return [c.constant_term() for c in self.coeffs]

    def render(self) -> str:
        names = self.model.coords
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                cr = c.render(names)
                parts.append(f"({cr})·∂_{names[k]}" if ("+" in cr or "-" in cr[1:] or "*" in cr)
                             else (f"∂_{names[k]}" if cr == "1" else f"{cr}·∂_{names[k]}"))
        return " + ".join(parts) if parts else "0"


class UnipotentGroupModel:
    def __init__(self, name: str, coords: List[str], mult: List[Poly],
                 weights: Optional[List[int]] = None):
        self.name = name
        self.coords = coords
        self.n = len(coords)
        self.mult = mult  # each in 2n variables (slot 1 then slot 2)
        self.weights = weights or [1] * self.n
        self._validate_counit()
        self._validate_coassoc()
        self.inverse = self._solve_inverse()
        self._validate_inverse()
        # invariant frames: columns indexed by Lie basis, A[k][i] = coeff of ∂_k
        self.A_left = self._frame(second_slot=True)
        self.A_right = self._frame(second_slot=False)
        self.structure_constants = self._structure_constants()
        self._validate_fields()
        self.ad_matrix = self._adjoint_matrix()           # Ad_g, entries Poly in g
        self.ad_matrix_inv = self._compose_inverse(self.ad_matrix)  # Ad_{g^{-1}}
        self._validate_coaction()

    # -- loading-time validations ------------------------------------

    def _validate_counit(self):
        n = self.n
        zero = [Fraction(0)] * n
        for k, mk in enumerate(self.mult):
            gvars = [Poly.var(n, i) for i in range(n)]
            at_right_e = mk.subs(gvars + [Poly.const(n, 0)] * n)
            at_left_e = mk.subs([Poly.const(n, 0)] * n + gvars)
            if at_right_e != Poly.var(n, k) or at_left_e != Poly.var(n, k):
                raise GroupAxiomViolation(
                    f"{self.name}: identity law fails on coordinate {self.coords[k]}"
                )

    def _validate_coassoc(self):
        n = self.n
        v3 = [Poly.var(3 * n, i) for i in range(3 * n)]
        for k, mk in enumerate(self.mult):
            m12 = [m.subs(v3[:2 * n]) for m in self.mult]
            left = mk.subs(m12 + v3[2 * n:])
            m23 = [m.subs(v3[n:]) for m in self.mult]
            right = mk.subs(v3[:n] + m23)
            if left != right:
                raise GroupAxiomViolation(
                    f"{self.name}: associativity fails on coordinate {self.coords[k]}"
                )

    def _solve_inverse(self) -> List[Poly]:
        n = self.n
        gvars = [Poly.var(n, i) for i in range(n)]
        inv = [Poly.var(n, k) * Fraction(-1) for k in range(n)]
        for _ in range(n + 2):
            new = []
            for k, mk in enumerate(self.mult):
                # m_k(g,h) = h_k + R_k(g,h); solve h = inverse fixpoint
                residual = mk - Poly(2 * n, {tuple(
                    [0] * (n + k) + [1] + [0] * (n - k - 1)): Fraction(1)})
                new.append(Poly.const(n, 0) - residual.subs(gvars + inv))
            if new == inv:
                break
            inv = new
        return inv

    def _validate_inverse(self):
        n = self.n
        gvars = [Poly.var(n, i) for i in range(n)]
        for k, mk in enumerate(self.mult):
            if mk.subs(gvars + self.inverse) != Poly.const(n, 0):
                raise GroupAxiomViolation(f"{self.name}: inverse law fails (right)")
            if mk.subs(self.inverse + gvars) != Poly.const(n, 0):
                raise GroupAxiomViolation(f"{self.name}: inverse law fails (left)")

    def _frame(self, second_slot: bool) -> List[List[Poly]]:
        """A[k][i] = coefficient of ∂_k in the invariant field of e_i."""
        n = self.n
        A = [[None] * n for _ in range(n)]
        for k, mk in enumerate(self.mult):
            for i in range(n):
                slot = (n + i) if second_slot else i
                d = mk.diff(slot)
                if second_slot:
                    # evaluate second slot at identity, keep first as the point
                    vals = [Poly.var(n, j) for j in range(n)] + [Poly.const(n, 0)] * n
                else:
                    vals = [Poly.const(n, 0)] * n + [Poly.var(n, j) for j in range(n)]
                A[k][i] = d.subs(vals)
        return A

    def _structure_constants(self) -> Dict[Tuple[int, int], List[Fraction]]:
        out = {}
        for i in range(self.n):
            for j in range(self.n):
                br = self.left_invariant(i).bracket(self.left_invariant(j))
                out[(i, j)] = br.at_identity()
        return out

    def _validate_fields(self):
        # left- and right-invariant fields commute
        for i in range(self.n):
            li = self.left_invariant(i)
            for j in range(self.n):
                br = li.bracket(self.right_invariant(j))
                if any(c for c in (p for p in br.coeffs) if c):
                    raise GroupAxiomViolation(
                        f"{self.name}: invariant fields of opposite sides do not commute"
                    )
        # bracket closes on the frame with constant coefficients
        for (i, j), fk in self.structure_constants.items():
            br = self.left_invariant(i).bracket(self.left_invariant(j))
            expect = [Poly.const(self.n, 0) for _ in range(self.n)]
            for k, c in enumerate(fk):
                if c:
                    for r in range(self.n):
                        expect[r] = expect[r] + self.A_left[r][k] * c
            if [p for p in br.coeffs] != expect:
                raise GroupAxiomViolation(
                    f"{self.name}: left-invariant frame does not close linearly"
                )
        # Jacobi
        f = self.structure_constants
        n = self.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = [Fraction(0)] * n
                    for m in range(n):
                        for l in range(n):
                            acc[l] += f[(i, j)][m] * f[(m, k)][l]
                            acc[l] += f[(j, k)][m] * f[(m, i)][l]
                            acc[l] += f[(k, i)][m] * f[(m, j)][l]
                    if any(acc):
                        raise GroupAxiomViolation(f"{self.name}: Jacobi identity fails")

    def _adjoint_matrix(self) -> List[List[Poly]]:
        """M[k][j](g) with Ad_g(e_j) = Σ_k M[k][j] e_k, from conj_g(h)=ghg^-1."""
        n = self.n
        g = [Poly.var(2 * n, i) for i in range(n)]
        h = [Poly.var(2 * n, n + i) for i in range(n)]
        gh = [m.subs(g + h) for m in self.mult]
        ginv = [p.subs(g) for p in self.inverse]  # in 2n vars, g-slot only
        conj = [m.subs(gh + ginv) for m in self.mult]
        M = [[None] * n for _ in range(n)]
        for k in range(n):
            for j in range(n):
                d = conj[k].diff(n + j)
                M[k][j] = d.subs([Poly.var(n, i) for i in range(n)]
                                 + [Poly.const(n, 0)] * n)
        return M

    def _compose_inverse(self, M: List[List[Poly]]) -> List[List[Poly]]:
        return [[entry.subs(self.inverse) for entry in row] for row in M]

    def _validate_coaction(self):
        # counit law: M at identity is 1; cocycle law: M(g1 g2) = M(g1) M(g2)
        n = self.n
        for k in range(n):
            for j in range(n):
                v = self.ad_matrix[k][j].constant_term()
                if v != (1 if k == j else 0):
                    raise GroupAxiomViolation(f"{self.name}: adjoint matrix at e is not 1")
        v2 = [Poly.var(2 * n, i) for i in range(2 * n)]
        prod_pt = [m.subs(v2) for m in self.mult]
        for k in range(n):
            for j in range(n):
                lhs = self.ad_matrix[k][j].subs(prod_pt)
                rhs = Poly.const(2 * n, 0)
                for t in range(n):
                    rhs = rhs + (self.ad_matrix[k][t].subs(v2[:n])
                                 * self.ad_matrix[t][j].subs(v2[n:]))
                if lhs != rhs:
                    raise GroupAxiomViolation(
                        f"{self.name}: adjoint coaction fails coassociativity"
                    )

    # -- public API ------------------------------------------------------

    def left_invariant(self, i: int) -> Derivation:
        return Derivation(self, [self.A_left[k][i] for k in range(self.n)])

    def right_invariant(self, i: int) -> Derivation:
        return Derivation(self, [self.A_right[k][i] for k in range(self.n)])

    def adjoint_field(self, i: int) -> Derivation:
        li = self.left_invariant(i)
        ri = self.right_invariant(i)
        return Derivation(self, [a - b for a, b in zip(li.coeffs, ri.coeffs)])

    def frame_matrix_inverse(self) -> List[List[Poly]]:
        """Inverse of A_left over the polynomial ring (det must be constant)."""
        return _poly_mat_inv(self.A_left, self.n)

    def adjoint_pairing(self, i: int, j: int) -> Poly:
        """⟨ξ^ad_{e_i}, c^j⟩ as a polynomial: the c^j-frame coefficient."""
        Ainv = self.frame_matrix_inverse()
        coeffs = self.adjoint_field(i).coeffs
        out = Poly.const(self.n, 0)
        for k in range(self.n):
            out = out + Ainv[j][k] * coeffs[k]
        return out

    def multiply_points(self, g: Sequence[Fraction], h: Sequence[Fraction]):
        vals = [Fraction(x) for x in g] + [Fraction(x) for x in h]
        return tuple(m.eval(vals) for m in self.mult)

    def invert_point(self, g: Sequence[Fraction]):
        vals = [Fraction(x) for x in g]
        return tuple(p.eval(vals) for p in self.inverse)

    def identity_point(self):
        return tuple(Fraction(0) for _ in range(self.n))

    def exp(self, v: Sequence[Fraction]) -> List[Poly]:
        """One-parameter subgroup exp(t v) as polynomials in t (exact)."""
        v = [Fraction(x) for x in v]
        gamma = [Poly.const(1, 0) for _ in range(self.n)]
        for _ in range(self.n * max(self.weights) + 3):
            new = []
            for k in range(self.n):
                integrand = Poly.const(1, 0)
                for i, vi in enumerate(v):
                    if vi:
                        integrand = integrand + self.A_left[k][i].subs(gamma) * vi
                new.append(_integrate_t(integrand))
            if new == gamma:
                break
            gamma = new
        else:
            raise GroupAxiomViolation(f"{self.name}: exponential did not stabilize")
        return gamma

    def exp_point(self, v: Sequence[Fraction], t: Fraction = Fraction(1)):
        return tuple(p.eval([t]) for p in self.exp(v))

    def adjoint_on_vector(self, g: Sequence[Fraction], v: Sequence[Fraction]):
        """Ad_g(v) as a rational coordinate vector."""
        vals = [Fraction(x) for x in g]
        out = []
        for k in range(self.n):
            acc = Fraction(0)
            for j, vj in enumerate(v):
                if vj:
                    acc += self.ad_matrix[k][j].eval(vals) * vj
            out.append(acc)
        return tuple(out)

    def coadjoint_poly(self, i: int, j: int) -> Poly:
        """ρ(c^i) = Σ_j coadjoint_poly(i,j) ⊗ c^j (matrix of Ad_{g^{-1}})."""
        return self.ad_matrix_inv[i][j]

    def adjoint_poly(self, k: int, j: int) -> Poly:
        """ρ^∨(e_j) = Σ_k adjoint_poly(k,j) ⊗ e_k."""
        return self.ad_matrix[k][j]

    def random_point(self, rng):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(self.n))

    def random_vector(self, rng):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(self.n))

    def __repr__(self):
        return f"UnipotentGroupModel({self.name}, n={self.n})"


def _integrate_t(p: Poly) -> Poly:
    out = {}
    for m, c in p.terms.items():
        out[(m[0] + 1,)] = c / (m[0] + 1)
    return Poly(1, out)


def _poly_mat_inv(A: List[List[Poly]], n: int) -> List[List[Poly]]:
    """Inverse of a polynomial matrix whose determinant is a nonzero constant."""
    # fraction-free Gauss-Jordan is overkill at n <= 6: use cofactor expansion
    def minor(mat, r, c):
        return [[mat[i][j] for j in range(len(mat)) if j != c]
                for i in range(len(mat)) if i != r]

    def det(mat) -> Poly:
        if not mat:
            return Poly.const(A[0][0].nvars, 1)
        if len(mat) == 1:
            return mat[0][0]
        out = None
        for j in range(len(mat)):
            term = mat[0][j] * det(minor(mat, 0, j))
            if j % 2:
                term = -term
            out = term if out is None else out + term
        return out

    d = det(A)
    const = d.constant_term()
    if d != Poly.const(A[0][0].nvars, const) or const == 0:
        raise GroupAxiomViolation("frame matrix determinant is not a nonzero constant")
    inv_const = Fraction(1) / const
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = det(minor(A, j, i))
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * inv_const
    return out


# ---------------------------------------------------------------------------
# distributions on a unipotent group


class Distribution:
    """Finite sum of (point, enveloping word) pairs with rational coefficients.

    ``(g, w)`` acts on a function f by the iterated left-invariant derivative
    along the letters of w, evaluated at g.  Point masses are group-like and
    basis derivatives are primitive; products follow from duality with the
    function coproduct.
    """

    def __init__(self, model: UnipotentGroupModel, terms=None):
        self.model = model
        self.terms: Dict[tuple, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)

    @classmethod
    def point(cls, model, g, coeff=1):
        return cls(model, {(tuple(Fraction(x) for x in g), ()): Fraction(coeff)})

    @classmethod
    def derivative(cls, model, i: int, coeff=1):
        e = model.identity_point()
        return cls(model, {(e, (i,)): Fraction(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Distribution(self.model, out)

    def scale(self, c):
        c = Fraction(c)
        return Distribution(self.model, {k: v * c for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, Distribution) and self.terms == other.terms

    def apply(self, f: Poly) -> Fraction:
        out = Fraction(0)
        for (g, w), c in self.terms.items():
            cur = f
            for i in reversed(w):
                cur = self.model.left_invariant(i).apply(cur)
            out += c * cur.eval(list(g))
        return out

    def multiply(self, other: "Distribution") -> "Distribution":
        """Product dual to the function coproduct."""
        model = self.model
        out = Distribution(model)
        for (g, w), c in self.terms.items():
            for (h, u), d in other.terms.items():
                # move the w-derivatives past the point mass at h:
                # ∂_X δ_h = δ_h ∂_{Ad_{h^{-1}} X}
                gh = model.multiply_points(g, h)
                hinv = model.invert_point(h)
                # expand each letter through Ad_{h^{-1}}
                words = {(): c * d}
                for i in w:
                    img = [model.ad_matrix[k][i].eval(list(hinv))
                           for k in range(model.n)]
                    nxt = {}
                    for wrd, cc in words.items():
                        for k, a in enumerate(img):
                            if a:
                                key = wrd + (k,)
                                nxt[key] = nxt.get(key, Fraction(0)) + cc * a
                    words = nxt
                for wrd, cc in words.items():
                    key = (gh, wrd + u)
                    s = out.terms.get(key, Fraction(0)) + cc
                    if s:
                        out.terms[key] = s
                    else:
                        out.terms.pop(key, None)
        return out

    def counit(self) -> Fraction:
        return sum((c for (g, w), c in self.terms.items() if not w), Fraction(0))

    def coproduct(self):
        """List of (Distribution, Distribution, coeff) triples."""
        model = self.model
        out = []
        for (g, w), c in self.terms.items():
            # Δ(δ_g ∂_w) = (δ_g ⊗ δ_g) Π (∂_i⊗1 + 1⊗∂_i)
            legs = [((), ())]
            for i in w:
                legs = [(a + (i,), b) for (a, b) in legs] + \
                       [(a, b + (i,)) for (a, b) in legs]
            for (a, b) in legs:
                out.append((Distribution(model, {(g, a): Fraction(1)}),
                            Distribution(model, {(g, b): Fraction(1)}), c))
        return out

    def __repr__(self):
        parts = []
        for (g, w), c in self.terms.items():
            pt = ",".join(str(x) for x in g)
            dw = "".join(f"∂{self.model.coords[i]}" for i in w)
            parts.append(f"{c}·δ({pt}){dw}")
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroupModel:
    def __init__(self, name: str, elements: List[str], table: List[List[str]]):
        self.name = name
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise MalformedDefinition(f"{name}: multiplication table must be {n}x{n}")
        self.table = [[self.index[v] for v in row] for row in table]
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._validate()

    def _find_identity(self) -> int:
        n = len(self.elements)
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                return e
        raise GroupAxiomViolation(f"{self.name}: no identity element")

    def _find_inverses(self) -> List[int]:
        n = len(self.elements)
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupAxiomViolation(
                    f"{self.name}: element {self.elements[a]} has no inverse"
                )
        return inv

    def _validate(self):
        n = len(self.elements)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GroupAxiomViolation(
                            f"{self.name}: associativity fails at "
                            f"({self.elements[a]},{self.elements[b]},{self.elements[c]})"
                        )

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, a: int) -> int:
        """g a g^{-1}."""
        return self.mul(self.mul(g, a), self.inv(g))

    def order(self) -> int:
        return len(self.elements)

    def conjugacy_classes(self) -> List[List[int]]:
        seen = set()
        classes = []
        for a in range(len(self.elements)):
            if a in seen:
                continue
            orbit = sorted({self.conj(g, a) for g in range(len(self.elements))})
            seen.update(orbit)
            classes.append(orbit)
        return classes

    def centralizer(self, a: int) -> List[int]:
        return [g for g in range(len(self.elements))
                if self.mul(g, a) == self.mul(a, g)]

    def element_order(self, a: int) -> int:
        k, cur = 1, a
        while cur != self.identity:
            cur = self.mul(cur, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = len(self.elements)
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(n) for b in range(n))

    def __repr__(self):
        return f"FiniteGroupModel({self.name}, order={len(self.elements)})"


def rational_irreps(model: FiniteGroupModel, elements: Optional[List[int]] = None):
    """Irreducible rational representations of a subgroup of the model.

    Supports cyclic subgroups of any order (companion matrices of the
    cyclotomic factors of x^m - 1) and the nonabelian group of order six.
    Returns a list of (label, dim, {subgroup element -> Matrix}).
    """
    from .linalg import identity as mat_identity, mat_mul

    subset = sorted(elements) if elements is not None else list(range(model.order()))
    sub = set(subset)
    for a in subset:
        for b in subset:
            if model.mul(a, b) not in sub:
                raise ValueError("element set is not closed under multiplication")

    def cyclic_generator():
        for a in subset:
            if model.element_order(a) == len(subset) and a in sub:
                # powers must exhaust the subgroup
                pows, cur = {model.identity}, a
                while cur != model.identity:
                    pows.add(cur)
                    cur = model.mul(cur, a)
                if pows == sub:
                    return a
        return None

    gen = cyclic_generator()
    reps = []
    if gen is not None:
        m = len(subset)
        for d, poly in _cyclotomic_factors(m):
            # companion matrix of the factor
            k = len(poly) - 1
            comp = [[Fraction(0)] * k for _ in range(k)]
            for i in range(1, k):
                comp[i][i - 1] = Fraction(1)
            for i in range(k):
                comp[i][k - 1] = -Fraction(poly[i])
            mats = {}
            cur = mat_identity(k)
            g = model.identity
            for _ in range(m):
                mats[g] = cur
                g = model.mul(g, gen)
                cur = mat_mul(cur, comp)
            reps.append((f"cyc{m}-f{d}", k, mats))
        return reps

    if len(subset) == 6 and not all(
        model.mul(a, b) == model.mul(b, a) for a in subset for b in subset
    ):
        # symmetric group on three letters: locate r of order 3, s of order 2
        r = next(a for a in subset if model.element_order(a) == 3)
        s = next(a for a in subset if model.element_order(a) == 2)
        one = Fraction(1)
        R2 = [[Fraction(0), -one], [one, -one]]
        S2 = [[-one, one], [Fraction(0), one]]

        def build(rm, sm, dim):
            mats = {}
            items = [(model.identity, mat_identity(dim))]
            mats[model.identity] = mat_identity(dim)
            frontier = [(model.identity, mat_identity(dim))]
            gens = [(r, rm), (s, sm)]
            while frontier:
                g, mg = frontier.pop()
                for h, mh in gens:
                    gh = model.mul(g, h)
                    if gh not in mats:
                        mats[gh] = mat_mul(mg, mh)
                        frontier.append((gh, mats[gh]))
            return mats

        reps.append(("triv", 1, {g: [[one]] for g in subset}))
        sgn = {}
        for g in subset:
            # parity: r-powers even, the rest odd
            sgn[g] = [[one if g in (model.identity, r, model.mul(r, r)) else -one]]
        reps.append(("sgn", 1, sgn))
        reps.append(("std2", 2, build(R2, S2, 2)))
        return reps

    raise ValueError("rational irreps implemented for cyclic subgroups and S3 only")


def _cyclotomic_factors(m: int):
    """(d, coeffs) for each divisor d of m; coeffs of Φ_d, low degree first."""
    # compute cyclotomic polynomials by exact division of x^d - 1
    cache: Dict[int, List[int]] = {}

    def polydiv(a, b):
        a = list(a)
        out = [0] * (len(a) - len(b) + 1)
        for i in range(len(out) - 1, -1, -1):
            coef = a[i + len(b) - 1] // b[-1]
            out[i] = coef
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
        assert all(x == 0 for x in a), "cyclotomic division failed"
        return out

    def cyclo(d):
        if d in cache:
            return cache[d]
        num = [-1] + [0] * (d - 1) + [1]  # x^d - 1
        for e in range(1, d):
            if d % e == 0:
                num = polydiv(num, cyclo(e))
        cache[d] = num
        return num

    return [(d, cyclo(d)) for d in range(1, m + 1) if m % d == 0]


# ---------------------------------------------------------------------------
# loading


CORPUS_ENV = "GROUPHOPF_GROUP_DIR"


def _data_dir() -> str:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data")


def list_groups() -> List[str]:
    d = _data_dir()
    return sorted(
        os.path.splitext(f)[0] for f in os.listdir(d) if f.endswith(".toml")
    )


def load_group(name_or_path: str):
    """Load a group definition document (TOML)."""
    path = name_or_path
    if not os.path.exists(path):
        path = os.path.join(_data_dir(), name_or_path + ".toml")
    if not os.path.exists(path):
        raise MalformedDefinition(f"no group definition for {name_or_path!r}")
    with open(path, "rb") as fh:
        try:
            doc = _toml.load(fh)
        except Exception as exc:
            raise MalformedDefinition(f"{name_or_path}: {exc}") from exc
    kind = doc.get("kind")
    name = doc.get("name") or os.path.splitext(os.path.basename(path))[0]
    if kind == "unipotent":
        coords = doc.get("coordinates")
        if not coords:
            raise MalformedDefinition(f"{name}: missing coordinates")
        mult_doc = doc.get("multiplication")
        if not mult_doc:
            raise MalformedDefinition(f"{name}: missing multiplication table")
        varnames = [c + "1" for c in coords] + [c + "2" for c in coords]
        mult = []
        for c in coords:
            if c not in mult_doc:
                raise MalformedDefinition(f"{name}: missing multiplication for {c}")
            try:
                mult.append(parse_poly(mult_doc[c], varnames))
            except ValueError as exc:
                raise MalformedDefinition(f"{name}: {exc}") from exc
        weights = doc.get("weights")
        model = UnipotentGroupModel(name, list(coords), mult, weights)
        declared = doc.get("structure_constants")
        if declared:
            _crosscheck_constants(model, declared)
        return model
    if kind == "finite":
        elements = doc.get("elements")
        table = doc.get("table")
        if not elements or not table:
            raise MalformedDefinition(f"{name}: finite groups need elements and table")
        return FiniteGroupModel(name, elements, table)
    raise MalformedDefinition(f"{name}: unknown kind {kind!r}")


def _crosscheck_constants(model: UnipotentGroupModel, declared):
    idx = {c: i for i, c in enumerate(model.coords)}
    for entry in declared:
        i, j = (idx[c] for c in entry["bracket"])
        vals = [Fraction(0)] * model.n
        for cname, v in entry["value"].items():
            vals[idx[cname]] = Fraction(v)
        if model.structure_constants[(i, j)] != vals:
            raise GroupAxiomViolation(
                f"{model.name}: declared bracket [{entry['bracket'][0]},"
                f"{entry['bracket'][1]}] disagrees with the multiplication law"
            )


# spec'd operation names ----------------------------------------------------


def invariant_field(model: UnipotentGroupModel, i: int, side: str) -> Derivation:
    """side='left' returns the left-invariant field of e_i, 'right' the right-invariant."""
    if side == "left":
        return model.left_invariant(i)
    if side == "right":
        return model.right_invariant(i)
    raise ValueError("side must be 'left' or 'right'")


def adjoint_pairing(model: UnipotentGroupModel, i: int, j: int) -> Poly:
    return model.adjoint_pairing(i, j)


@dataclass
class GroupLawRecord:
    point1: tuple
    vector1: tuple
    point2: tuple
    vector2: tuple
    passed: bool


def t1g_group_law_check(model: UnipotentGroupModel, samples: int, rng,
                        corrupt: bool = False):
    """Pushforward law on the shifted tangent group.

    Checks, to first order in t, that multiplying (g1, v1)·(g2, v2) gives
    (g1 g2, Ad_{g2^{-1}} v1 + v2); with ``corrupt`` the conjugation is dropped,
    which must fail for nonabelian groups.
    """
    records = []
    n = model.n
    for _ in range(samples):
        g1, g2 = model.random_point(rng), model.random_point(rng)
        v1, v2 = model.random_vector(rng), model.random_vector(rng)
        e1, e2 = model.exp(v1), model.exp(v2)  # polys in t
        # left side: coordinates of g1 e^{t v1} g2 e^{t v2}, first order in t
        p1 = [Poly.const(1, x) for x in g1]
        p2 = [Poly.const(1, x) for x in g2]
        a = [m.subs(p1 + e1) for m in model.mult]
        b = [m.subs(p2 + e2) for m in model.mult]
        lhs = [_truncate_t(m.subs(a + b), 1) for m in model.mult]
        # right side: g1 g2 e^{t w}, w = Ad_{g2^{-1}} v1 + v2
        w = model.adjoint_on_vector(model.invert_point(g2), v1)
        if corrupt:
            w = v1
        w = tuple(x + y for x, y in zip(w, v2))
        g12 = model.multiply_points(g1, g2)
        ew = model.exp(w)
        rhs = [_truncate_t(m.subs([Poly.const(1, x) for x in g12] + ew), 1)
               for m in model.mult]
        records.append(GroupLawRecord(g1, v1, g2, v2, lhs == rhs))
    return records


def _truncate_t(p: Poly, order: int) -> Poly:
    return Poly(1, {m: c for m, c in p.terms.items() if m[0] <= order})
