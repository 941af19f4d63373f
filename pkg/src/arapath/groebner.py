"""Buchberger's algorithm and multivariate division over GF(p).

The public functions take and return :class:`~arapath.ring.Polynomial`;
internally every polynomial is a ``dict`` from dense exponent tuples to
coefficients, which is considerably faster in pure Python.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .ring import Polynomial, Ring

DEFAULT_MAX_PAIRS = 50_000
DEFAULT_MAX_DEGREE = 60
BUDGET_ENV = "ARA_PATH_BUDGET"


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a Buchberger run hits its pair or degree cap."""

    def __init__(self, reason: str, pairs: int, max_degree: int):
        super().__init__(f"Groebner budget exceeded: {reason} (pairs reduced={pairs}, max degree seen={max_degree})")
        self.reason = reason
        self.pairs = pairs
        self.max_degree = max_degree


@dataclass(frozen=True)
class Budget:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self):
        if self.max_pairs <= 0 or self.max_degree <= 0:
            raise ValueError("budgets must be positive")

    @classmethod
    def from_env(cls) -> Budget:
        raw = os.environ.get(BUDGET_ENV)
        if not raw:
            return cls()
        return cls(max_pairs=int(raw))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Poly:
    """Monic internal polynomial: leading exponent plus full coefficient map."""

    __slots__ = ("lm", "coeffs", "tail")

    def __init__(self, coeffs: dict, key, p: int):
        lm = max(coeffs, key=key)
        c = coeffs[lm]
        if c != 1:
            inv = pow(c, -1, p)
            coeffs = {e: a * inv % p for e, a in coeffs.items()}
        self.lm = lm
        self.coeffs = coeffs
        self.tail = [(e, a) for e, a in coeffs.items() if e != lm]


def _reduce(f: dict, basis: Sequence[_Poly], key, p: int) -> dict:
    """Full reduction of ``f`` by ``basis`` (first divisor in list order wins)."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for g in basis:
            lm = g.lm
            if _divides(lm, m):
                q = _sub(m, lm)
                for e, a in g.tail:
                    e2 = _add(e, q)
                    v = (f.get(e2, 0) - c * a) % p
                    if v:
                        f[e2] = v
                    else:
                        f.pop(e2, None)
                break
        else:
            rem[m] = c
    return rem


def _to_internal(f: Polynomial) -> dict:
    return f.to_dense()


def _key_for(ring: Ring):
    return ring.order.dense_key


def _ring_of(polys: Sequence[Polynomial]) -> Ring:
    if not polys:
        raise ValueError("need at least one polynomial to determine the ring")
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring != ring:
            raise ValueError(f"ring mismatch: {ring} vs {f.ring}")
    return ring


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``f`` on division by ``G``.

    When ``G`` is not a Gröbner basis the remainder depends on the order of
    ``G``, but ``f - result`` always lies in the ideal of ``G``.
    """
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise ValueError(f"ring mismatch: {ring} vs {g.ring}")
    key = _key_for(ring)
    basis = [_Poly(_to_internal(g), key, ring.p) for g in G if not g.is_zero()]
    return Polynomial.from_dense(ring, _reduce(_to_internal(f), basis, key, ring.p))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``(L/lt(f))*f - (L/lt(g))*g`` with ``L`` the lcm of the leading monomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {g.ring}")
    fld = f.ring.field
    lcm = f.leading_monomial.lcm(g.leading_monomial)
    a = f.mul_monomial(lcm / f.leading_monomial, fld.inv(f.leading_coefficient))
    b = g.mul_monomial(lcm / g.leading_monomial, fld.inv(g.leading_coefficient))
    return a - b


def _spoly_internal(f: _Poly, g: _Poly, p: int) -> dict:
    lcm = _lcm(f.lm, g.lm)
    qf, qg = _sub(lcm, f.lm), _sub(lcm, g.lm)
    out: dict = {}
    for e, a in f.tail:
        out[_add(e, qf)] = a
    for e, a in g.tail:
        e2 = _add(e, qg)
        v = (out.get(e2, 0) - a) % p
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


@dataclass
class GroebnerBasis:
    ring: Ring
    basis: list[Polynomial]
    reduced: bool = True
    pairs_reduced: int = 0

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.basis)

    def reduce(self, f: Polynomial) -> Polynomial:
        if self.is_unit():
            return self.ring.zero()
        return normal_form(f, self.basis)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def _update(polys: list[_Poly], G: list[int], B: list[tuple], h: int) -> tuple[list[int], list[tuple]]:
    """Gebauer–Möller installation of ``polys[h]`` into basis ``G`` and pairs ``B``."""
    hlm = polys[h].lm
    C = [(g, _lcm(hlm, polys[g].lm)) for g in G]
    D = []
    for idx, (g, L) in enumerate(C):
        if _coprime(hlm, polys[g].lm):
            D.append((g, L, True))
            continue
        dominated = any(_divides(L2, L) for (_, L2) in C[idx + 1:]) or any(_divides(L2, L) for (_, L2, _) in D)
        if not dominated:
            D.append((g, L, False))
    # coprime leading monomials: first criterion drops the pair
    E = [(h, g, L) for (g, L, cop) in D if not cop]
    B_new = []
    for (i, j, L) in B:
        if _divides(hlm, L) and _lcm(polys[i].lm, hlm) != L and _lcm(polys[j].lm, hlm) != L:
            continue
        B_new.append((i, j, L))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(hlm, polys[g].lm)]
    G_new.append(h)
    return G_new, B_new


def _pair_sort_key(pair):
    i, j, L = pair
    return (sum(L), L, min(i, j), max(i, j))


def _buchberger_internal(F: list[dict], key, p: int, budget: Budget, stop_on_unit: bool):
    polys: list[_Poly] = []
    G: list[int] = []
    B: list[tuple] = []
    zero = None
    max_deg = 0
    for f in F:
        if not f:
            continue
        g = _Poly(f, key, p)
        zero = zero or tuple(0 for _ in g.lm)
        if g.lm == zero:
            return [g], 0
        polys.append(g)
        G, B = _update(polys, G, B, len(polys) - 1)
    reductions = 0
    while B:
        B.sort(key=_pair_sort_key)
        i, j, L = B.pop(0)
        reductions += 1
        if reductions > budget.max_pairs:
            raise GroebnerBudgetExceeded("pair reductions", reductions - 1, max_deg)
        s = _spoly_internal(polys[i], polys[j], p)
        r = _reduce(s, [polys[g] for g in G], key, p)
        if not r:
            continue
        h = _Poly(r, key, p)
        deg = sum(h.lm)
        max_deg = max(max_deg, max(sum(e) for e in h.coeffs))
        if max_deg > budget.max_degree:
            raise GroebnerBudgetExceeded("degree cap", reductions, max_deg)
        if stop_on_unit and deg == 0:
            return [h], reductions
        polys.append(h)
        G, B = _update(polys, G, B, len(polys) - 1)
    return [polys[g] for g in G], reductions


def _interreduce(basis: list[_Poly], key, p: int) -> list[_Poly]:
    minimal = []
    for i, g in enumerate(basis):
        if any(_divides(h.lm, g.lm) and (h.lm != g.lm or j < i) for j, h in enumerate(basis) if j != i):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        tail = _reduce(dict(g.tail), others, key, p)
        tail[g.lm] = 1
        out.append(_Poly(tail, key, p))
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return out


def buchberger(F: Sequence[Polynomial], *, reduce: bool = True, budget: Budget | None = None,
               stop_on_unit: bool = False) -> GroebnerBasis:
    """Gröbner basis of the ideal generated by ``F``.

    Uses the normal selection strategy with a deterministic tie-break and the
    Gebauer–Möller criteria. With ``stop_on_unit`` the run returns ``{1}`` as
    soon as a nonzero constant appears.

    Raises :class:`GroebnerBudgetExceeded` instead of truncating.
    """
    ring = _ring_of(list(F))
    budget = budget or Budget.from_env()
    key = _key_for(ring)
    p = ring.p
    internal, pairs = _buchberger_internal([_to_internal(f) for f in F], key, p, budget, stop_on_unit)
    if reduce:
        internal = _interreduce(internal, key, p)
    basis = [Polynomial.from_dense(ring, g.coeffs) for g in internal]
    return GroebnerBasis(ring, basis, reduced=reduce, pairs_reduced=pairs)


def ideal_contains(f: Polynomial, F: Sequence[Polynomial], budget: Budget | None = None) -> bool:
    if f.is_zero():
        return True
    nonzero = [g for g in F if not g.is_zero()]
    if not nonzero:
        return False
    return buchberger(nonzero, budget=budget).contains(f)


def is_groebner_basis(G: Sequence[Polynomial]) -> bool:
    """Exhaustive Buchberger criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not normal_form(s_polynomial(G[a], G[b]), G).is_zero():
                return False
    return True
