"""Betti numbers of square-free monomial ideals via Hochster's formula.

    beta_{i,sigma}(R/I) = dim H~_{|sigma|-i-1}(Delta(I)|_sigma; GF(p))

Only multidegrees ``sigma`` that are unions of generator supports are
visited: for any other ``sigma`` some vertex lies in no generator inside
``sigma``, the restriction is a cone over it and all its reduced homology
vanishes. Each restriction splits as a join over the connected pieces of the
generators it contains, and reduced homology of a join over a field is the
shifted convolution of the pieces' ranks, so pieces are computed once and
cached by their relabelled shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .ideals import MonomialIdeal
from .ring import PrimeField

DEFAULT_VARIABLE_CAP = 16


class HochsterCapExceeded(RuntimeError):
    pass


def _mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class SimplicialComplex:
    """Finite simplicial complex given by its vertex set and faces.

    Faces are stored as frozensets and always include the empty face unless
    the complex is the void complex (no faces at all).
    """

    def __init__(self, vertices: Iterable[int], faces: Iterable[frozenset[int]]):
        self.vertices = frozenset(vertices)
        self._faces = sorted({frozenset(f) for f in faces}, key=lambda f: (len(f), sorted(f)))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], vertices: Iterable[int] | None = None) -> SimplicialComplex:
        facets = [frozenset(f) for f in facets]
        faces = set()
        for F in facets:
            for r in range(len(F) + 1):
                faces.update(frozenset(c) for c in combinations(sorted(F), r))
        verts = set(vertices) if vertices is not None else set().union(*facets) if facets else set()
        return cls(verts, faces)

    @property
    def faces(self) -> list[frozenset[int]]:
        return list(self._faces)

    @property
    def facets(self) -> list[frozenset[int]]:
        fs = self._faces
        return [F for F in fs if not any(F < G for G in fs if len(G) == len(F) + 1)]

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self._faces), default=0) - 1

    def faces_of_dim(self, d: int) -> list[frozenset[int]]:
        return [f for f in self._faces if len(f) == d + 1]

    def __contains__(self, face) -> bool:
        return frozenset(face) in set(self._faces)

    def __len__(self) -> int:
        return len(self._faces)

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[sorted(f) for f in self.facets]})"


def _independent_faces(nverts: int, gen_masks: tuple[int, ...]) -> list[list[int]]:
    """Faces (as bitmasks over ``range(nverts)``) containing no generator mask, grouped by size."""
    levels = [[0]]
    while True:
        nxt = []
        for face in levels[-1]:
            top = face.bit_length()
            for v in range(top, nverts):
                cand = face | (1 << v)
                if not any(g & cand == g for g in gen_masks):
                    nxt.append(cand)
        if not nxt:
            return levels
        levels.append(nxt)


def _boundary_rank(faces: list[int], lower: list[int], p: int) -> int:
    """Rank over GF(p) of the boundary map from ``faces`` to ``lower``.

    Column reduction keyed on the lowest pivot row; over GF(2) columns are
    Python integers and reduction is XOR.
    """
    index = {f: i for i, f in enumerate(lower)}
    rank = 0
    if p == 2:
        pivots: dict[int, int] = {}
        for face in faces:
            col = 0
            for v in _bits(face):
                col |= 1 << index[face ^ (1 << v)]
            while col:
                top = col.bit_length() - 1
                other = pivots.get(top)
                if other is None:
                    pivots[top] = col
                    rank += 1
                    break
                col ^= other
        return rank
    pivots_p: dict[int, dict[int, int]] = {}
    for face in faces:
        col: dict[int, int] = {}
        for k, v in enumerate(_bits(face)):
            col[index[face ^ (1 << v)]] = 1 if k % 2 == 0 else p - 1
        while col:
            top = max(col)
            other = pivots_p.get(top)
            if other is None:
                inv = pow(col[top], -1, p)
                pivots_p[top] = {r: c * inv % p for r, c in col.items()}
                rank += 1
                break
            factor = col[top]
            for r, c in other.items():
                val = (col.get(r, 0) - factor * c) % p
                if val:
                    col[r] = val
                else:
                    col.pop(r, None)
    return rank


def _homology_from_levels(levels: list[list[int]], p: int) -> list[int]:
    """Reduced homology ranks; entry ``j`` is ``H~_{j-1}``."""
    ranks = [0] * (len(levels) + 1)
    for d in range(1, len(levels)):
        ranks[d] = _boundary_rank(levels[d], levels[d - 1], p)
    out = []
    for d in range(len(levels)):
        out.append(len(levels[d]) - ranks[d] - ranks[d + 1])
    return out


def reduced_homology_ranks(K: SimplicialComplex, p: int) -> list[int]:
    """Ranks ``[H~_{-1}, H~_0, H~_1, ...]`` of ``K`` over GF(p)."""
    PrimeField(p)
    verts = sorted(K.vertices | set().union(*K.faces) if K.faces else K.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    by_size: dict[int, list[int]] = {}
    for f in K.faces:
        by_size.setdefault(len(f), []).append(_mask(pos[v] for v in f))
    if not by_size:
        return []
    levels = [sorted(by_size.get(s, [])) for s in range(max(by_size) + 1)]
    return _trim(_homology_from_levels(levels, p))


def _trim(ranks: list[int]) -> list[int]:
    while ranks and ranks[-1] == 0:
        ranks.pop()
    return ranks


def stanley_reisner_restriction(M: MonomialIdeal, sigma: Iterable[int]) -> SimplicialComplex:
    """Faces ``F`` of ``sigma`` such that no generator of ``M`` has support inside ``F``."""
    if not M.is_square_free():
        raise ValueError("Stanley-Reisner complex needs a square-free monomial ideal")
    sigma = sorted(set(sigma))
    pos = {v: i for i, v in enumerate(sigma)}
    gens = tuple(_mask(pos[v] for v in g.support) for g in M.generators if g.support <= set(sigma))
    levels = _independent_faces(len(sigma), gens)
    faces = [frozenset(sigma[i] for i in _bits(f)) for level in levels for f in level]
    return SimplicialComplex(sigma, faces)


@lru_cache(maxsize=None)
def _piece_homology(nverts: int, gen_masks: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(_homology_from_levels(_independent_faces(nverts, gen_masks), p))


def _canonical_piece(vertices: list[int], gens: list[int]) -> tuple[int, tuple[int, ...]]:
    pos = {v: i for i, v in enumerate(vertices)}
    relabelled = sorted(_mask(pos[v] for v in _bits(g)) for g in gens)
    return len(vertices), tuple(relabelled)


def _join(a: list[int], b: list[int]) -> list[int]:
    # index j means H~_{j-1}; H~_{r+1}(A*B) = sum_{i+k=r} H~_i(A) (x) H~_k(B)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                if y:
                    out[i + k] += x * y
    return out


def _restricted_homology(sigma: int, gen_masks: list[int], p: int) -> list[int]:
    inside = [g for g in gen_masks if g & sigma == g]
    parent = {v: v for v in _bits(sigma)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in inside:
        vs = _bits(g)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for v in _bits(sigma):
        groups.setdefault(find(v), []).append(v)
    ranks = [1]  # the empty complex {emptyset}
    for verts in groups.values():
        vmask = _mask(verts)
        piece_gens = [g for g in inside if g & vmask == g]
        n, key = _canonical_piece(verts, piece_gens)
        ranks = _join(ranks, list(_piece_homology(n, key, p)))
        if not any(ranks):
            return []
    return ranks


@dataclass
class BettiTable:
    """Multigraded Betti numbers of ``R/I``: ``(i, sigma) -> rank``."""

    p: int
    entries: dict[tuple[int, frozenset[int]], int] = field(default_factory=dict)

    @property
    def projective_dimension(self) -> int:
        return max((i for (i, _), r in self.entries.items() if r), default=0)

    def total(self, i: int) -> int:
        return sum(r for (j, _), r in self.entries.items() if j == i)

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarsened to ``(i, |sigma|) -> rank``."""
        out: dict[tuple[int, int], int] = {}
        for (i, sigma), r in self.entries.items():
            out[(i, len(sigma))] = out.get((i, len(sigma)), 0) + r
        return out

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.projective_dimension + 1)]


def betti_table(M: MonomialIdeal, p: int = 2, cap: int = DEFAULT_VARIABLE_CAP) -> BettiTable:
    if not M.is_square_free():
        raise ValueError("Hochster's formula needs a square-free monomial ideal")
    PrimeField(p)
    support = sorted(M.support)
    if len(support) > cap:
        raise HochsterCapExceeded(f"{len(support)} variables exceed the Hochster cap of {cap}")
    pos = {v: i for i, v in enumerate(support)}
    gens = [_mask(pos[v] for v in g.support) for g in M.generators]
    table = BettiTable(p)
    if any(g == 0 for g in gens):
        # the unit ideal: R/I = 0
        return table
    for sigma in range(1 << len(support)):
        covered = 0
        for g in gens:
            if g & sigma == g:
                covered |= g
        if covered != sigma:
            continue
        size = bin(sigma).count("1")
        ranks = _restricted_homology(sigma, gens, p)
        for j, r in enumerate(ranks):
            if r:
                i = size - j  # H~_{j-1} with |sigma| - i - 1 = j - 1
                table.entries[(i, frozenset(support[b] for b in _bits(sigma)))] = r
    return table


def projective_dimension(M: MonomialIdeal, p: int = 2, cap: int = DEFAULT_VARIABLE_CAP) -> int:
    """``pd(R/M)`` over GF(p); the zero ideal gives 0."""
    return betti_table(M, p, cap).projective_dimension
