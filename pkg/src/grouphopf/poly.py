"""Exact multivariate polynomials over the rationals.

Minimal dict-based implementation (exponent tuple -> Fraction) with just the
operations group models need: arithmetic, substitution, partial derivatives
and a safe parser for the polynomial strings appearing in group definition
files (only +, -, *, ** with integer exponents and named variables).
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Monomial = Tuple[int, ...]


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.nvars, {m: v * c for m, v in self.terms.items()} if c else {})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                out[tuple(m2)] = c * m[i]
        return Poly(self.nvars, out)

    def subs(self, values: Sequence) -> "Poly":
        """Substitute a Poly (or scalar) for each variable."""
        nv = None
        vals: List[Poly] = []
        for v in values:
            if isinstance(v, Poly):
                nv = v.nvars
        if nv is None:
            nv = 0
        for v in values:
            if isinstance(v, Poly):
                assert v.nvars == nv
                vals.append(v)
            else:
                vals.append(Poly.const(nv, v))
        out = Poly.const(nv, 0)
        for m, c in self.terms.items():
            term = Poly.const(nv, c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * vals[i]
            out = out + term
        return out

    def eval(self, values: Sequence) -> Fraction:
        out = Fraction(0)
        vals = [Fraction(v) for v in values]
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                t *= vals[i] ** e
            out += t
        return out

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max(
            (sum(e * w for e, w in zip(m, weights)) for m in self.terms),
            default=0,
        )

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            body = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}")
                for i, e in enumerate(m) if e
            )
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        text = parts[0]
        for p in parts[1:]:
            text += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return text

    def __repr__(self):
        return f"Poly({self.terms})"


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse a polynomial expression over the named variables.

    Only literals, names, unary minus, +, -, * and ** with non-negative
    integer exponents are accepted.
    """
    idx = {n: i for i, n in enumerate(names)}
    nv = len(names)

    def conv(node) -> Poly:
        if isinstance(node, ast.Expression):
            return conv(node.body)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Add):
                return conv(node.left) + conv(node.right)
            if isinstance(node.op, ast.Sub):
                return conv(node.left) - conv(node.right)
            if isinstance(node.op, ast.Mult):
                return conv(node.left) * conv(node.right)
            if isinstance(node.op, ast.Div):
                right = node.right
                if isinstance(right, ast.Constant) and isinstance(right.value, int):
                    return conv(node.left) * Fraction(1, right.value)
                raise ValueError("division only by integer literals")
            if isinstance(node.op, ast.Pow):
                right = node.right
                if not (isinstance(right, ast.Constant) and isinstance(right.value, int)
                        and right.value >= 0):
                    raise ValueError("only non-negative integer exponents")
                return conv(node.left) ** right.value
            raise ValueError(f"operator {ast.dump(node.op)} not allowed")
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -conv(node.operand)
            if isinstance(node.op, ast.UAdd):
                return conv(node.operand)
            raise ValueError("unary operator not allowed")
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return Poly.const(nv, node.value)
            raise ValueError(f"literal {node.value!r} not allowed")
        if isinstance(node, ast.Name):
            if node.id not in idx:
                raise ValueError(f"unknown variable {node.id!r}")
            return Poly.var(nv, idx[node.id])
        raise ValueError(f"syntax {type(node).__name__} not allowed")

    tree = ast.parse(text.strip(), mode="eval")
    return conv(tree)
