"""Linear deformations, the parametrized 2-step families, and diagonal contractions."""

from __future__ import annotations

import random
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from . import linalg
from .algebra import CharSeq, LieAlgebra, characteristic_sequence, validate
from .errors import MalformedInputError, NoLimitError, StructureError
from .exterior import PForm
from .symplectic import is_symplectic_form


@dataclass(frozen=True, eq=False)
class TwoCochain:
    """phi(X_i, X_j) = sum_k c X_k for i < j; stored like structure constants."""

    ambient_dim: int
    values: Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]]

    def __init__(self, ambient_dim: int, values=()):
        # reuse the bracket normalization: antisymmetry and range checks
        frozen = LieAlgebra(ambient_dim, dict(values) if not isinstance(values, Mapping) else values).constants
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "values", MappingProxyType(dict(frozen)))

    def __eq__(self, other):
        if not isinstance(other, TwoCochain):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and dict(self.values) == dict(other.values)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.values.items())))

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        acc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for src in (self.values, other.values):
            for key, vec in src.items():
                slot = acc.setdefault(key, {})
                for k, c in vec:
                    slot[k] = slot.get(k, Fraction(0)) + c
        return TwoCochain(self.ambient_dim, acc)

    def scaled(self, t) -> "TwoCochain":
        t = linalg.as_fraction(t)
        return TwoCochain(self.ambient_dim, {key: {k: t * c for k, c in vec} for key, vec in self.values.items()})

    def as_algebra(self) -> LieAlgebra:
        """The cochain read as a (possibly non-Jacobi) bracket table."""
        return LieAlgebra(self.ambient_dim, self.values)


@dataclass(frozen=True)
class DeformationReport:
    jacobi_t0: tuple  # failing triples of mu0
    cocycle_t1: tuple  # failing triples of the cocycle condition
    quadratic_t2: tuple  # failing triples of phi o phi

    @property
    def ok(self) -> bool:
        return not (self.jacobi_t0 or self.cocycle_t1 or self.quadratic_t2)

    @property
    def first_failure(self) -> str | None:
        for label, bad in (("t0", self.jacobi_t0), ("t1", self.cocycle_t1), ("t2", self.quadratic_t2)):
            if bad:
                return label
        return None


def _mixed_jacobiator(a: LieAlgebra, b: LieAlgebra, i: int, j: int, l: int) -> list[Fraction]:
    """sum over cyclic (x,y,z) of a(b(x,y),z) + b(a(x,y),z)."""
    n = a.dim
    out = [Fraction(0)] * n
    for x, y, z in ((i, j, l), (j, l, i), (l, i, j)):
        for first, second in ((a, b), (b, a)):
            for k, c in second.table[x][y].items():
                for m, d in first.table[k][z].items():
                    out[m] += c * d
    return out


def _failures(a: LieAlgebra, b: LieAlgebra, halve: bool) -> tuple:
    n = a.dim
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                v = _mixed_jacobiator(a, b, i, j, l)
                if halve:
                    v = [x / 2 for x in v]
                if any(v):
                    bad.append(((i, j, l), tuple(v)))
    return tuple(bad)


def validate_deformation(L0: LieAlgebra, phi: TwoCochain) -> DeformationReport:
    """Expand Jacobi(mu0 + t phi) = J0 + t J1 + t^2 J2 and report each coefficient."""
    if phi.ambient_dim != L0.dim:
        raise MalformedInputError(f"cochain dimension {phi.ambient_dim} != algebra dimension {L0.dim}")
    P = phi.as_algebra()
    return DeformationReport(
        tuple((t, tuple(v)) for t, v in validate(L0).violations),
        _failures(L0, P, halve=False),
        _failures(P, P, halve=True),
    )


def linear_deformation(L0: LieAlgebra, phi: TwoCochain, t, name: str | None = None) -> LieAlgebra:
    report = validate_deformation(L0, phi)
    if not report.ok:
        raise StructureError("invalid-deformation", f"deformation fails at {report.first_failure}")
    t = linalg.as_fraction(t)
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for key, vec in L0.constants.items():
        acc[key] = dict(vec)
    for key, vec in phi.values.items():
        slot = acc.setdefault(key, {})
        for k, c in vec:
            slot[k] = slot.get(k, Fraction(0)) + t * c
    return LieAlgebra(L0.dim, acc, name=name)


# -- families ---------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    family_id: str
    dim: int
    base: tuple[tuple[int, int, int], ...]  # 1-based (i, j, k) with coefficient 1
    allowed: frozenset  # 1-based (i, j, k) keys for free coefficients
    target: CharSeq


def _chain(p: int) -> tuple[tuple[int, int, int], ...]:
    return tuple((1, 2 * i, 2 * i + 1) for i in range(1, p))


def _keys(indices: Sequence[int], targets: Sequence[int], pairs=None) -> frozenset:
    if pairs is None:
        pairs = [(a, b) for x, a in enumerate(indices) for b in indices[x + 1 :]]
    return frozenset((a, b, k) for a, b in pairs for k in targets)


def family(family_id: str, p: int | None = None) -> Family:
    """Family descriptors; ids are C1_F832, C2_F832, C1_F824, C2_F824,
    C1_general (dimension 2p) and C1_F2k2 (the C1_F824 pattern in dimension 2p).
    ``"C1_general(5)"`` is accepted as a spelling of ``("C1_general", 5)``."""
    m = re.fullmatch(r"(\w+)\((\d+)\)", family_id.strip())
    if m:
        family_id, p = m.group(1), int(m.group(2))
    if family_id == "C1_F832":
        return Family(family_id, 8, _chain(4), _keys([2, 4, 6, 8], [3, 5, 7]), CharSeq((2, 2, 2, 1, 1)))
    if family_id == "C2_F832":
        return Family(family_id, 8, _chain(4), _keys([2, 4, 6], [3, 5, 7, 8]), CharSeq((2, 2, 2, 1, 1)))
    if family_id == "C1_F824":
        return Family(family_id, 8, _chain(3), _keys([2, 4, 6, 7, 8], [3, 5]), CharSeq((2, 2, 1, 1, 1, 1)))
    if family_id == "C2_F824":
        pairs = [(2, 6), (2, 7), (4, 6), (4, 7), (6, 7)]
        return Family(
            family_id, 8, _chain(3) + ((2, 4, 8),), _keys([], [3, 5], pairs), CharSeq((2, 2, 1, 1, 1, 1))
        )
    if family_id == "C1_general":
        if p is None or p < 3:
            raise MalformedInputError("C1_general needs p >= 3")
        evens = list(range(2, 2 * p + 1, 2))
        odds = list(range(3, 2 * p, 2))
        return Family(f"C1_general({p})", 2 * p, _chain(p), _keys(evens, odds), CharSeq((2,) * (p - 1) + (1, 1)))
    if family_id == "C1_F2k2":
        if p is None or p < 4:
            raise MalformedInputError("C1_F2k2 needs p >= 4")
        free = [2, 4] + list(range(6, 2 * p + 1))
        return Family(f"C1_F2k2({p})", 2 * p, _chain(3), _keys(free, [3, 5]), CharSeq((2, 2) + (1,) * (2 * p - 4)))
    raise MalformedInputError(f"unknown family {family_id!r}")


def family_algebra(
    family_id: str,
    p: int | None = None,
    coeffs: Mapping[tuple[int, int, int], object] | None = None,
    seed: int = 0,
    check_charseq: bool = True,
) -> LieAlgebra:
    """Base brackets plus free coefficients keyed by 1-based (i, j, k)."""
    fam = family(family_id, p)
    acc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, j, k in fam.base:
        acc.setdefault((i - 1, j - 1), {})[k - 1] = Fraction(1)
    for key, c in (coeffs or {}).items():
        if tuple(key) not in fam.allowed:
            raise MalformedInputError(f"coefficient {key} is outside the index set of {fam.family_id}")
        i, j, k = key
        c = linalg.as_fraction(c)
        slot = acc.setdefault((i - 1, j - 1), {})
        slot[k - 1] = slot.get(k - 1, Fraction(0)) + c
    L = LieAlgebra(fam.dim, acc, name=fam.family_id)
    report = validate(L)
    if not report.ok:
        raise StructureError("invalid-member", f"{fam.family_id} member violates Jacobi")
    if check_charseq:
        cs = characteristic_sequence(L, seed=seed)
        if cs != fam.target:
            warnings.warn(f"{fam.family_id} member has characteristic sequence {tuple(cs)}, "
                          f"target {tuple(fam.target)}", stacklevel=2)
    return L


# -- contractions -------------------------------------------------------------------


@dataclass(frozen=True)
class ContractionScaling:
    """Y_i = eps^{w_i} X_i; C_ij^k then scales as eps^{w_i + w_j - w_k}."""

    weights: tuple[int, ...]

    def __init__(self, weights: Sequence[int]):
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))

    def exponent(self, i: int, j: int, k: int) -> int:
        w = self.weights
        return w[i] + w[j] - w[k]


def contract(L: LieAlgebra, s: ContractionScaling, name: str | None = None) -> LieAlgebra:
    if len(s.weights) != L.dim:
        raise MalformedInputError(f"need {L.dim} weights, got {len(s.weights)}")
    kept: dict[tuple[int, int], dict[int, Fraction]] = {}
    offending = []
    for (i, j), vec in L.constants.items():
        for k, c in vec:
            e = s.exponent(i, j, k)
            if e < 0:
                offending.append((i, j, k))
            elif e == 0:
                kept.setdefault((i, j), {})[k] = c
    if offending:
        raise NoLimitError(f"brackets diverge as eps -> 0 at {offending}", offending)
    out = LieAlgebra(L.dim, kept, name=name)
    report = validate(out)
    if not report.ok:  # cannot happen for a genuine limit; kept as a guard
        raise StructureError("invalid-limit", "contracted brackets violate Jacobi")
    return out


@dataclass(frozen=True)
class TransportReport:
    transports: bool
    k: int | None
    degrees: tuple[int, ...]
    verified_on_limit: bool


def transport_symplectic(L: LieAlgebra, theta: PForm, s: ContractionScaling) -> TransportReport:
    """theta(Y_i, Y_j) = eps^{w_i + w_j} theta(X_i, X_j): a common degree k transports theta."""
    if not is_symplectic_form(L, theta):
        raise StructureError("not-symplectic", "theta is not a symplectic form on L")
    limit = contract(L, s)
    degrees = tuple(s.weights[i] + s.weights[j] for (i, j) in theta.coeffs)
    common = set(degrees)
    if len(common) == 1:
        k = common.pop()
        return TransportReport(True, k, degrees, is_symplectic_form(limit, theta))
    return TransportReport(False, None, degrees, False)


def support_sample(
    fam: Family, rng: random.Random, anchor: Sequence[int] = (2, 4), values: Sequence[int] = (-2, -1, 1, 2)
) -> dict[tuple[int, int, int], int]:
    """Random coefficients supported on ``anchor`` plus a random subset of the other free indices.

    Each allowed key inside the support gets a nonzero value with probability 1/2.
    Restricting the support reaches the smaller strata that uniform sampling
    almost never hits.
    """
    free = sorted({i for key in fam.allowed for i in key[:2]})
    extra = [i for i in free if i not in anchor]
    support = set(anchor) | {i for i in extra if rng.random() < 0.5}
    out = {}
    for key in sorted(fam.allowed):
        if key[0] in support and key[1] in support and rng.random() < 0.5:
            out[key] = rng.choice(values)
    return out
