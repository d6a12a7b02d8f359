"""Named algebras with their claimed properties, and graph algebras.

Maurer-Cartan systems are transcribed literally through
``d alpha(X, Y) = -alpha([X, Y])``; no global sign flips are applied, so
e.g. ``d alpha_3 = alpha_1 ^ alpha_2`` yields ``[X_1, X_2] = -X_3``.
All indices in the tables below are 1-based, as displayed in the sources.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .algebra import LieAlgebra, direct_sum, require_valid
from .errors import MalformedInputError
from .exterior import PForm


@dataclass(frozen=True)
class Expected:
    symplectic: str  # yes | no | unknown
    charseq: tuple[int, ...] | None
    nilindex: int | None
    citation: str
    field_note: str | None = None
    witness: PForm | None = None
    sign_flip: bool = False  # whether displayed signs needed a global flip


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    expected: Expected
    provenance: str
    note: str = ""


def _br(dim: int, triples, name: str) -> LieAlgebra:
    """Brackets from 1-based (i, j, k[, c]) meaning [X_i, X_j] += c X_k."""
    acc: dict[tuple[int, int], dict[int, int]] = {}
    for t in triples:
        i, j, k = t[:3]
        c = t[3] if len(t) > 3 else 1
        acc.setdefault((i - 1, j - 1), {})[k - 1] = c
    return LieAlgebra(dim, acc, name=name)


def _mc(dim: int, eqs: dict[int, list], name: str) -> LieAlgebra:
    """From 1-based d alpha_k = sum c alpha_i ^ alpha_j, given as {k: [(i, j[, c])]}."""
    out = {}
    for k, terms in eqs.items():
        out[k - 1] = {(t[0] - 1, t[1] - 1): (t[2] if len(t) > 2 else 1) for t in terms}
    return LieAlgebra.from_maurer_cartan(dim, out, name=name)


def _form(dim: int, terms) -> PForm:
    return PForm(dim, 2, {(i - 1, j - 1): c for i, j, c in terms})


# -- constructors ------------------------------------------------------------------


def heisenberg(p: int) -> LieAlgebra:
    """h_{2p+1}: [X_i, X_{p+i}] = Z with Z the last basis vector."""
    n = 2 * p + 1
    return LieAlgebra(n, {(i, p + i): {2 * p: 1} for i in range(p)}, name=f"h{n}")


def free_two_step(k: int) -> LieAlgebra:
    """n_{k,2}: generators X_1..X_k then Y_ij = [X_i, X_j] in lexicographic order."""
    pairs = list(itertools.combinations(range(k), 2))
    return LieAlgebra(k + len(pairs), {p: {k + idx: 1} for idx, p in enumerate(pairs)}, name=f"n{k}2")


@dataclass(frozen=True)
class SimpleGraph:
    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertices: int, edges):
        norm = set()
        for a, b in edges:
            if a == b:
                raise MalformedInputError("graph loops are not allowed")
            if not (0 <= a < vertices and 0 <= b < vertices):
                raise MalformedInputError(f"edge {(a, b)} out of range")
            e = (min(a, b), max(a, b))
            if e in norm:
                raise MalformedInputError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def components(self) -> list[tuple[set[int], int]]:
        """(vertex set, edge count) per connected component."""
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, set[int]] = {}
        for v in range(self.vertices):
            groups.setdefault(find(v), set()).add(v)
        return [(vs, sum(1 for a, _ in self.edges if a in vs)) for vs in groups.values()]

    def is_connected(self) -> bool:
        return self.vertices > 0 and len(self.components()) == 1


def graph_algebra(G: SimpleGraph) -> LieAlgebra:
    """Vertices first, then one central vector per edge (edges sorted)."""
    v = G.vertices
    return LieAlgebra(v + len(G.edges), {e: {v + idx: 1} for idx, e in enumerate(G.edges)}, name=f"graph{v}:{len(G.edges)}")


def graph_symplectic_criterion(G: SimpleGraph) -> bool:
    """Every connected component has #edges <= #vertices."""
    if (G.vertices + len(G.edges)) % 2:
        raise MalformedInputError("the graph algebra has odd dimension")
    return all(e <= len(vs) for vs, e in G.components())


def _canonical(v: int, edges) -> tuple:
    best = None
    for perm in itertools.permutations(range(v)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return best


def connected_graphs(max_total: int, even_only: bool = False) -> Iterator[SimpleGraph]:
    """All connected simple graphs (up to isomorphism) with vertices + edges <= max_total."""
    for v in range(1, max_total + 1):
        all_pairs = list(itertools.combinations(range(v), 2))
        for e in range(v - 1, min(len(all_pairs), max_total - v) + 1):
            if even_only and (v + e) % 2:
                continue
            seen = set()
            for edges in itertools.combinations(all_pairs, e):
                G = SimpleGraph(v, edges)
                if not G.is_connected():
                    continue
                key = _canonical(v, edges)
                if key in seen:
                    continue
                seen.add(key)
                yield G


# -- named entries -------------------------------------------------------------------

_S832 = (2, 2, 2, 1, 1)
_S824 = (2, 2, 1, 1, 1, 1)


def _nosym_general(p: int) -> LieAlgebra:
    if p < 3:
        raise MalformedInputError("nosym_general needs p >= 3")
    eqs: dict[int, list] = {2 * k + 1: [(1, 2 * k)] for k in range(1, p - 1)}
    last = [(1, 2 * p - 2), (2 * p - 2, 2 * p)]
    top = (p - 2) // 2 if p % 2 == 0 else (p - 3) // 2
    last += [(4 * m - 2, 4 * m) for m in range(1, top + 1)]
    eqs[2 * p - 1] = last
    return _mc(2 * p, eqs, f"nosym_general({p})")


def nosym_general(p: int) -> CatalogEntry:
    return CatalogEntry(
        f"nosym_general({p})",
        _nosym_general(p),
        Expected(
            "no" if p == 4 else "unknown",
            (2,) * (p - 1) + (1, 1),
            2,
            "reduced normal form of the non-symplectic C1 member in dimension 2p"
            + ("; coincides with nosym8 up to the sign of the bracket" if p == 4 else ""),
        ),
        "general-p family, both parity branches",
    )


def _entries() -> list[CatalogEntry]:
    E = CatalogEntry
    X = Expected
    out = [
        E("g32", _br(8, [(1, 2, 3), (1, 4, 5), (1, 6, 7)], "g32"),
          X("yes", _S832, 2, "[X1,X2i]=X2i+1, 1<=i<=3"), "model of F(8,2;3,2)"),
        E("g24", _br(8, [(1, 2, 3), (1, 4, 5)], "g24"),
          X("yes", _S824, 2, "[X1,X2i]=X2i+1, i=1,2"), "model of F(8,2;2,4)"),
        E("h81_s21", _br(8, [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 7), (4, 8, 3), (6, 8, 5)], "h81_s21"),
          X("yes", _S832, 2, "rigid algebra of C1 as first listed with the families"),
          "C1 rigid algebra, first bracket list",
          "same brackets as h82_rigid; the two sources swap the labels h8,1 and h8,2"),
        E("h82_s21", _br(8, [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 6, 5), (2, 4, 8)], "h82_s21"),
          X("yes", _S832, 2, "rigid algebra of C2 with [X2,X6]=X5, [X2,X4]=X8; C2 members are symplectic"),
          "C2 rigid algebra"),
        E("h82_rigid", _br(8, [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 7), (4, 8, 3), (6, 8, 5)], "h82_rigid"),
          X("yes", _S832, 2, "rigid algebra shown symplectic with the displayed form",
            witness=_form(8, [(1, 8, 1), (2, 7, 1), (3, 6, -1), (4, 5, 1)])),
          "rigid algebra of the C1 symplectic proposition"),
        E("k8", _mc(8, {3: [(1, 2), (4, 6), (7, 8)], 5: [(1, 4), (2, 8), (6, 7)]}, "k8"),
          X("no", _S824, 2, "k8 is not symplectic; alpha3 and alpha5 have Cartan class 7"),
          "rigid algebra of C1(F(8,2;2,4))"),
        E("nosym8", _mc(8, {3: [(1, 2, -1)], 5: [(1, 4, -1)], 7: [(1, 6, -1), (2, 4, -1), (6, 8, -1)]}, "nosym8"),
          X("no", _S832, 2, "the unique non-symplectic algebra with characteristic sequence (2,2,2,1,1)"),
          "dimension-8 theorem for F(8,2;3,2)"),
        E("filiform6", _br(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (2, 3, 5), (2, 4, 6)], "filiform6"),
          X("yes", (5, 1), 5, "theta = a1^a6 + 2 a2^a5 - a3^a4 is symplectic",
            witness=_form(6, [(1, 6, 1), (2, 5, 2), (3, 4, -1)])),
          "contraction example"),
        E("dim6_1", _br(6, [(1, 2, 3), (1, 4, 5), (2, 6, 5)], "dim6_1"),
          X("yes", (2, 2, 1, 1), 2, "theta = a1a5 + a2a4 + a3a6 is symplectic",
            witness=_form(6, [(1, 5, 1), (2, 4, 1), (3, 6, 1)])),
          "dimension-6 list, item 1"),
        E("dim6_2", _br(6, [(1, 2, 3), (1, 4, 5), (2, 6, 5), (4, 6, 3)], "dim6_2"),
          X("yes", (2, 2, 1, 1), 2, "theta = a1a5 + a2a4 + a3a6 is symplectic",
            witness=_form(6, [(1, 5, 1), (2, 4, 1), (3, 6, 1)])),
          "dimension-6 list, item 2"),
        E("dim6_3", _br(6, [(1, 2, 3), (1, 4, 5), (2, 6, 5, -1), (4, 6, 3)], "dim6_3"),
          X("yes", (2, 2, 1, 1), 2, "theta = a4a5 + a1a6 + a3a2 is symplectic (real case)",
            field_note="real-form", witness=_form(6, [(4, 5, 1), (1, 6, 1), (3, 2, 1)])),
          "dimension-6 list, item 3"),
        E("n7_124", _mc(8, {3: [(1, 2), (4, 7)], 5: [(1, 4), (6, 7)]}, "n7_124"),
          X("yes", _S824, 2, "listed symplectic decomposable algebra n7^124 + K"), "complex list"),
        E("n6_19", _mc(8, {3: [(1, 2)], 5: [(1, 4), (2, 6)]}, "n6_19"),
          X("yes", _S824, 2, "listed symplectic decomposable algebra n6^19 + K^2"), "complex list"),
        E("n6_20", _mc(8, {3: [(1, 2)], 5: [(1, 4)], 6: [(2, 4)]}, "n6_20"),
          X("yes", _S824, 2, "listed symplectic decomposable algebra n6^20 + K^2"), "complex list"),
        E("n6_20_1", _mc(8, {3: [(1, 2), (4, 6)], 5: [(1, 4), (2, 6, -1)]}, "n6_20_1"),
          X("yes", _S824, 2, "listed under the real case: n6^{20,1} + R^2", field_note="real-form"),
          "real list"),
        E("n5_5", _mc(8, {3: [(1, 2)], 5: [(1, 4)]}, "n5_5"),
          X("yes", _S824, 2, "listed symplectic decomposable algebra n5^5 + K^3"), "complex list"),
        E("n3_1", _mc(8, {3: [(1, 2)], 5: [(1, 4), (4, 6)]}, "n3_1"),
          X("yes", _S824, 2, "listed symplectic decomposable algebra n3^1 + n3^1 + K^3"), "complex list"),
        E("mc41", _mc(8, {3: [(1, 2)], 5: [(1, 4)], 8: [(2, 4)]}, "mc41"),
          X("yes", _S824, 2, "reduced C2(F(8,2;2,4)) member; decomposable"), "C2 of F(8,2;2,4)"),
        E("h3_a1", direct_sum(heisenberg(1), LieAlgebra.abelian(1), name="h3_a1"),
          X("yes", (2, 1, 1), 2, "every 2-step nilpotent algebra of dimension 4 is symplectic"), "dimension 4"),
        E("h5_a1", direct_sum(heisenberg(2), LieAlgebra.abelian(1), name="h5_a1"),
          X("no", (2, 1, 1, 1, 1), 2, "h5 + K is not symplectic"), "dimension 6"),
        E("n32", free_two_step(3).renamed("n32"),
          X("yes", (2, 2, 1, 1), 2, "n_{3,2} is the unique free 2-step algebra admitting a symplectic form"),
          "free 2-step algebras"),
        E("n42", free_two_step(4).renamed("n42"),
          X("no", (2, 2, 2, 1, 1, 1, 1), 2, "n_{k,2} is symplectic iff k <= 3"), "free 2-step algebras"),
    ]
    for p in (3, 4, 5):
        out.append(nosym_general(p))
    return out


_CACHE: list[CatalogEntry] | None = None


def list_entries() -> list[CatalogEntry]:
    global _CACHE
    if _CACHE is None:
        entries = _entries()
        names = [e.name for e in entries]
        if len(set(names)) != len(names):
            raise AssertionError("duplicate catalog names")
        for e in entries:
            require_valid(e.algebra)
        _CACHE = entries
    return list(_CACHE)


def named(name: str) -> CatalogEntry:
    if name.startswith("nosym_general(") and name.endswith(")"):
        try:
            return nosym_general(int(name[len("nosym_general(") : -1]))
        except ValueError:
            pass
    for e in list_entries():
        if e.name == name:
            return e
    raise KeyError(f"unknown catalog entry {name!r}")
