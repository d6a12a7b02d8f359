"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from . import linalg


@dataclass(frozen=True, eq=False)
class ParamPoly:
    nvars: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __init__(self, nvars: int, terms=()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            c = linalg.as_fraction(c)
            if c:
                acc[exp] = acc.get(exp, Fraction(0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(
            self, "terms", MappingProxyType({e: acc[e] for e in sorted(acc) if acc[e]})
        )

    @classmethod
    def constant(cls, nvars: int, c=1) -> "ParamPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "ParamPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "ParamPoly":
        m = len(coeffs)
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * m
                e[i] = 1
                out[tuple(e)] = c
        return cls(m, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return ParamPoly(self.nvars, acc)

    def __neg__(self):
        return ParamPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            c = linalg.as_fraction(other)
            return ParamPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return ParamPoly(self.nvars, acc)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, i: int, value) -> "ParamPoly":
        """Fix variable i to ``value``; the variable stays in the signature."""
        value = linalg.as_fraction(value)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k and not value:
                continue
            ne = e[:i] + (0,) + e[i + 1 :]
            acc[ne] = acc.get(ne, Fraction(0)) + c * value**k
        return ParamPoly(self.nvars, acc)

    def permuted(self, perm: Sequence[int]) -> "ParamPoly":
        """Rename variable i to perm[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return ParamPoly(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return f"ParamPoly({self.nvars}, 0)"
        shown = list(self.terms.items())[:6]
        body = " + ".join(
            f"{c}*" + "*".join(f"t{i}^{k}" if k > 1 else f"t{i}" for i, k in enumerate(e) if k)
            for e, c in shown
        )
        more = " + ..." if len(self.terms) > 6 else ""
        return f"ParamPoly({self.nvars}, {body}{more})"
