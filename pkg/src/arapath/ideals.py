"""Monomial ideals and certification of radical equalities.

Equality of radicals is only ever decided against a square-free monomial
ideal ``M``: since ``M`` is radical, ``sqrt(F) == M`` holds exactly when every
``f`` in ``F`` lies in ``M`` and every generator of ``M`` lies in ``sqrt(F)``.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import Budget, GroebnerBudgetExceeded, buchberger
from .ring import Monomial, MonomialOrder, ParseError, Polynomial, Ring, max_variable_index, parse_polynomial


class MonomialIdeal:
    """Minimal monomial generating set, sorted lexicographically (largest first).

    The zero ideal has no generators.
    """

    __slots__ = ("ring", "generators")

    def __init__(self, ring: Ring, monomials: Iterable[Monomial] = ()):
        mons = set(monomials)
        for m in mons:
            if m.max_index > ring.nvars:
                raise ValueError(f"{m} outside ring with {ring.nvars} variables")
        # sorting by degree first means a divisor is always seen before its multiples
        keep: list[Monomial] = []
        for m in sorted(mons, key=lambda m: (m.degree, m.items())):
            if not any(g.divides(m) for g in keep):
                keep.append(m)
        lex = MonomialOrder("lex", ring.nvars)
        keep.sort(key=lex.key, reverse=True)
        self.ring = ring
        self.generators: tuple[Monomial, ...] = tuple(keep)

    def __reduce__(self):
        return (MonomialIdeal, (self.ring, self.generators))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MonomialIdeal) and self.generators == other.generators
                and self.ring.field == other.ring.field)

    def __hash__(self) -> int:
        return hash(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_square_free(self) -> bool:
        return all(m.is_square_free() for m in self.generators)

    @property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for m in self.generators:
            out |= m.support
        return frozenset(out)

    def contains_monomial(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def polynomials(self, ring: Ring | None = None) -> list[Polynomial]:
        ring = ring or self.ring
        return [ring.monomial(m) for m in self.generators]

    def with_ring(self, ring: Ring) -> MonomialIdeal:
        return MonomialIdeal(ring, self.generators)

    def relabel(self, mapping, ring: Ring | None = None) -> MonomialIdeal:
        return MonomialIdeal(ring or self.ring, (m.relabel(mapping) for m in self.generators))

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def to_text(self) -> str:
        return format_ideal(self.generators)

    def __str__(self) -> str:
        return f"({self.to_text()})"

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.to_text()})"


def minimalize(monomials: Iterable[Monomial], ring: Ring | None = None) -> MonomialIdeal:
    monomials = list(monomials)
    if ring is None:
        ring = Ring.of(max((m.max_index for m in monomials), default=0))
    return MonomialIdeal(ring, monomials)


def ideal_sum(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    if A.ring.field != B.ring.field:
        raise ValueError("ideals over different fields")
    ring = A.ring if A.ring.nvars >= B.ring.nvars else A.ring.with_nvars(B.ring.nvars)
    return MonomialIdeal(ring, A.generators + B.generators)


def monomial_ideal_contains(f: Polynomial, M: MonomialIdeal) -> bool:
    """Term-by-term divisibility test; no Gröbner computation."""
    return all(M.contains_monomial(m) for _, m in f.terms)


def format_ideal(gens: Iterable[Monomial | Polynomial], sep: str = "; ") -> str:
    return sep.join(str(g) for g in gens)


_SPLIT = re.compile(r"[;|\n]")


def split_generators(text: str) -> list[str]:
    """Split ideal or generator-list text on ``;``, ``|`` or newlines.

    Surrounding parentheses are allowed: ``(x1x2; x2x3)``.
    """
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = [part.strip() for part in _SPLIT.split(s)]
    return [part for part in parts if part and not part.startswith("#")]


def parse_polynomials(text: str, ring: Ring | None = None) -> list[Polynomial]:
    if ring is None:
        ring = Ring.of(max_variable_index(text))
    return [parse_polynomial(part, ring) for part in split_generators(text)]


def parse_ideal(text: str, ring: Ring | None = None) -> MonomialIdeal:
    """Read ``x1*x2; x2*x3`` style text into a monomial ideal."""
    if ring is None:
        ring = Ring.of(max_variable_index(text))
    mons = []
    for part in split_generators(text):
        f = parse_polynomial(part, ring)
        if f.is_zero():
            continue
        if len(f) != 1:
            raise ParseError(f"generator {part!r} is not a monomial", text, text.find(part))
        mons.append(f.leading_monomial)
    return MonomialIdeal(ring, mons)


def radical_membership(f: Polynomial, F: Sequence[Polynomial], budget: Budget | None = None) -> bool:
    """Decide ``f in sqrt(F)`` with the Rabinowitsch trick.

    A fresh variable ``z`` is appended; ``f`` is in the radical iff
    ``F + (1 - z*f)`` is the unit ideal.
    """
    if f.is_zero():
        return True
    ring = f.ring
    big = ring.extend(1)
    z = big.var(big.nvars)
    gens = [g.embed(big) for g in F if not g.is_zero()]
    gens.append(big.one() - z * f.embed(big))
    return buchberger(gens, budget=budget, stop_on_unit=True, reduce=False).is_unit()


@dataclass(frozen=True)
class CheckRecord:
    kind: str  # "forward" or "backward"
    target: str
    result: str  # "pass", "fail" or "skipped(budget)"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "target": self.target, "result": self.result}


@dataclass
class RadicalEqualityReport:
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def forward(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.kind == "forward"]

    @property
    def backward(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.kind == "backward"]

    @property
    def verdict(self) -> bool:
        return all(c.result == "pass" for c in self.checks)

    @property
    def skipped(self) -> bool:
        return any(c.result.startswith("skipped") for c in self.checks)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.result == "fail"]

    def transcript(self) -> str:
        lines = [f"{c.kind:8s} {c.result:16s} {c.target}" for c in self.checks]
        lines.append(f"verdict: {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"verdict": "pass" if self.verdict else ("skipped" if self.skipped and not self.failures else "fail"),
                "checks": [c.as_dict() for c in self.checks]}


def _backward_check(args) -> str:
    m, F, budget = args
    try:
        return "pass" if radical_membership(m, F, budget) else "fail"
    except GroebnerBudgetExceeded:
        return "skipped(budget)"


def verify_radical_equality(F: Sequence[Polynomial], M: MonomialIdeal, *, budget: Budget | None = None,
                            workers: int | None = None) -> RadicalEqualityReport:
    """Check ``sqrt(F) == M`` for a square-free monomial ideal ``M``.

    Forward checks are plain divisibility; each backward check is one
    Rabinowitsch Gröbner run, optionally spread over ``workers`` processes.
    """
    if not M.is_square_free():
        raise ValueError("radical equality is only decided against square-free monomial ideals")
    nvars = max([M.ring.nvars] + [f.ring.nvars for f in F])
    ring = M.ring.with_nvars(nvars)
    F = [f.embed(ring) for f in F]
    report = RadicalEqualityReport()
    for f in F:
        report.checks.append(CheckRecord("forward", str(f), "pass" if monomial_ideal_contains(f, M) else "fail"))
    jobs = [(ring.monomial(m), F, budget) for m in M.generators]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_backward_check, jobs))
    else:
        results = [_backward_check(job) for job in jobs]
    for m, res in zip(M.generators, results):
        report.checks.append(CheckRecord("backward", str(m), res))
    return report
