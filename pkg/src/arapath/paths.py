"""Path ideals, block pairs and certified generator systems.

A path ideal ``I_t(L_n)`` is generated by the ``n - t + 1`` windows
``x_i*...*x_{i+t-1}``. Writing ``n = k(t+1) + d`` with ``0 <= d <= t``, the
windows are grouped into ``k`` blocks of ``t + 1`` consecutive windows; each
block is replaced by a verified pair of polynomials with the same radical.
The ``d < t - 1`` case pads the path with fresh variables and projects the
result back; the ``d = t`` case keeps the last window as it is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .groebner import Budget
from .hochster import DEFAULT_VARIABLE_CAP, projective_dimension
from .ideals import MonomialIdeal, RadicalEqualityReport, verify_radical_equality
from .ring import DEFAULT_CHARACTERISTIC, Monomial, ParseError, Polynomial, Ring, parse_polynomial

SOURCES = ("builtin", "config", "search")
DEFAULT_SOURCES = ("builtin", "config")
DEFAULT_SEARCH_BUDGET = 64


class PairUnavailable(LookupError):
    def __init__(self, t: int, tried: Sequence[str]):
        super().__init__(f"pair unavailable for t={t} (sources tried: {', '.join(tried) or 'none'})")
        self.t = t
        self.tried = tuple(tried)


class VerificationFailure(RuntimeError):
    """A constructed system failed a check that must hold."""


@dataclass(frozen=True)
class PathParams:
    n: int
    t: int
    k: int
    d: int

    def __post_init__(self):
        if self.n != self.k * (self.t + 1) + self.d or not 0 <= self.d <= self.t:
            raise ValueError(f"inconsistent decomposition {self}")

    def as_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "k": self.k, "d": self.d}


def _check_nt(n: int, t: int) -> None:
    if t < 1 or n < 1:
        raise ValueError(f"n and t must be positive (got n={n}, t={t})")
    if t > n:
        raise ValueError(f"t={t} exceeds n={n}")


def decompose_nt(n: int, t: int) -> PathParams:
    _check_nt(n, t)
    k, d = divmod(n, t + 1)
    return PathParams(n, t, k, d)


def window(i: int, t: int) -> Monomial:
    return Monomial.product(range(i, i + t))


def path_ideal(n: int, t: int, p: int = DEFAULT_CHARACTERISTIC) -> MonomialIdeal:
    _check_nt(n, t)
    return MonomialIdeal(Ring.of(n, p), (window(i, t) for i in range(1, n - t + 2)))


def ara_formula(n: int, t: int) -> int:
    params = decompose_nt(n, t)
    if params.d == t:
        return 2 * params.k + 1
    return 2 * params.k


def block_ideal(t: int, p: int = DEFAULT_CHARACTERISTIC) -> MonomialIdeal:
    """The ``t + 1`` windows on ``2t`` variables."""
    return path_ideal(2 * t, t, p)


def blocks(params: PathParams, *, allow_leftover: bool = False) -> list[list[Monomial]]:
    """Windows grouped ``t + 1`` at a time; block ``b`` starts at window ``b(t+1) + 1``.

    Outside the exact-fit case ``d = t - 1`` the windows past the last full
    block are not returned, so ``allow_leftover`` must be set explicitly.
    """
    t = params.t
    if params.d != t - 1 and not allow_leftover:
        raise ValueError(f"blocks need d = t - 1 (n={params.n}, t={t} has d={params.d})")
    return [[window(b * (t + 1) + j, t) for j in range(1, t + 2)] for b in range(params.k)]


# block pairs

@dataclass(frozen=True)
class BlockPair:
    t: int
    pair: tuple[Polynomial, Polynomial]
    provenance: str
    verified: bool = False
    report: RadicalEqualityReport | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.provenance not in SOURCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def to_config_line(self) -> str:
        return f"t={self.t}: {self.pair[0]} | {self.pair[1]}"

    def instantiate(self, offset: int, ring: Ring) -> list[Polynomial]:
        """The pair with ``x_i -> x_{i+offset}``, as polynomials of ``ring``."""
        return [g.shift(offset, ring) for g in self.pair]


def verify_block_pair(t: int, pair: Sequence[Polynomial], budget: Budget | None = None) -> RadicalEqualityReport:
    if len(pair) != 2:
        raise ValueError("a block pair has exactly two polynomials")
    ring = pair[0].ring
    return verify_radical_equality(list(pair), block_ideal(t, ring.p), budget=budget)


def _builtin_templates(t: int, ring: Ring) -> tuple[Polynomial, Polynomial] | None:
    if t == 1:
        return ring.var(1), ring.var(2)
    if t == 2:
        return ring.parse("x1*x2 + x3*x4"), ring.parse("x2*x3")
    return None


@lru_cache(maxsize=None)
def builtin_pair(t: int, p: int = DEFAULT_CHARACTERISTIC) -> BlockPair | None:
    """Builtin pair for ``t <= 2``, re-verified once per characteristic."""
    ring = Ring.of(2 * t, p)
    pair = _builtin_templates(t, ring)
    if pair is None:
        return None
    report = verify_block_pair(t, pair)
    if not report.verdict:
        raise VerificationFailure(f"builtin pair for t={t} failed verification:\n{report.transcript()}")
    return BlockPair(t, pair, "builtin", True, report)


@dataclass
class PairConfig:
    pairs: dict[int, BlockPair] = field(default_factory=dict)
    rejected: list[str] = field(default_factory=list)

    def get(self, t: int) -> BlockPair | None:
        return self.pairs.get(t)


def parse_pair_config(text: str, p: int = DEFAULT_CHARACTERISTIC, budget: Budget | None = None) -> PairConfig:
    """Read ``t=2: x1*x2 + x3*x4 | x2*x3`` lines, verifying every pair.

    Lines that fail to parse or to verify land in ``rejected`` with a
    diagnostic; the first accepted pair for a given ``t`` wins.
    """
    out = PairConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        head = head.replace(" ", "")
        if not sep or not head.startswith("t=") or not head[2:].isdigit() or int(head[2:]) < 1:
            out.rejected.append(f"line {lineno}: expected 't=<k>: f | g', got {line!r}")
            continue
        t = int(head[2:])
        parts = [s.strip() for s in body.split("|")]
        if len(parts) != 2 or not all(parts):
            out.rejected.append(f"line {lineno}: expected two polynomials separated by '|'")
            continue
        ring = Ring.of(2 * t, p)
        try:
            pair = tuple(parse_polynomial(s, ring) for s in parts)
        except ParseError as exc:
            out.rejected.append(f"line {lineno}: {exc}")
            continue
        report = verify_block_pair(t, pair, budget)
        if not report.verdict:
            bad = ", ".join(f"{c.kind} {c.target}: {c.result}" for c in report.checks if c.result != "pass")
            out.rejected.append(f"line {lineno}: pair for t={t} does not verify ({bad})")
            continue
        if t in out.pairs:
            out.rejected.append(f"line {lineno}: duplicate pair for t={t} ignored")
            continue
        out.pairs[t] = BlockPair(t, pair, "config", True, report)
    return out


def load_pair_config(path: str | Path, p: int = DEFAULT_CHARACTERISTIC, budget: Budget | None = None) -> PairConfig:
    return parse_pair_config(Path(path).read_text(encoding="utf-8"), p, budget)


def _structured_candidates(t: int, ring: Ring) -> Iterator[tuple[Polynomial, Polynomial]]:
    """Pairs built around the two middle variables ``x_t, x_{t+1}`` (``t >= 3``).

    With ``A = x2*...*x_{t-1}``, ``B = x_{t+2}*...*x_{2t-1}`` and ``u = x_t*x_{t+1}``::

        g2 = u*(x_t*A + x_{t+1}*B)
        g1 = m_1^2 + m_{t+1}^2 + u*((x1^2 + x_{2t}^2)*A*B + theta)

    where ``theta`` runs over ``m_i / u`` for ``i = 2..t`` and then ``-A*B``.
    On ``x_t = 0`` and ``x_{t+1} = 0`` the system reduces to a single end window;
    elsewhere on ``g2 = 0`` the function ``g1`` equals ``u*theta``.
    """
    if t < 3:
        return
    tt, tu = ring.var(t), ring.var(t + 1)
    A = ring.monomial(Monomial.product(range(2, t)))
    B = ring.monomial(Monomial.product(range(t + 2, 2 * t)))
    u = tt * tu
    g2 = u * (tt * A + tu * B)
    base = (ring.monomial(window(1, t)) ** 2 + ring.monomial(window(t + 1, t)) ** 2
            + u * (ring.var(1) ** 2 + ring.var(2 * t) ** 2) * A * B)
    thetas = [ring.monomial(window(i, t) / Monomial.product((t, t + 1))) for i in range(2, t + 1)]
    thetas.append(-(A * B))
    for theta in thetas:
        yield base + u * theta, g2


def _partitions(t: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    idx = range(1, t + 2)
    # window 1 always goes into the first polynomial
    for r in range(0, t):
        for rest in itertools.combinations(range(2, t + 2), r):
            S1 = (1,) + rest
            S2 = tuple(i for i in idx if i not in S1)
            yield S1, S2


def _family_candidates(t: int, ring: Ring) -> Iterator[tuple[Polynomial, Polynomial]]:
    """``(sum_{S1} c_i u_i m_i, sum_{S2} c_i u_i m_i)`` in a fixed order.

    Ordered by total multiplier degree, then partition, then which windows
    carry a variable multiplier and which variables, then signs. The first
    sign in each polynomial is fixed to ``+1``.
    """
    nv = 2 * t
    mons = {i: window(i, t) for i in range(1, t + 2)}
    for deg in range(0, t + 2):
        for S1, S2 in _partitions(t):
            order = S1 + S2
            for carriers in itertools.combinations(order, deg):
                for vars_ in itertools.product(range(1, nv + 1), repeat=deg):
                    mult = dict(zip(carriers, vars_))
                    free = [i for i in order if i not in (S1[0], S2[0])]
                    for signs in itertools.product((1, -1), repeat=len(free)):
                        sign = dict(zip(free, signs))
                        polys = []
                        for S in (S1, S2):
                            terms = []
                            for i in S:
                                m = mons[i] * Monomial({mult[i]: 1}) if i in mult else mons[i]
                                terms.append((sign.get(i, 1), m))
                            polys.append(Polynomial.from_terms(ring, terms))
                        yield polys[0], polys[1]


def candidate_pairs(t: int, p: int = DEFAULT_CHARACTERISTIC) -> Iterator[tuple[Polynomial, Polynomial]]:
    """Search order: the structured family (``t >= 3``), then the flat family."""
    ring = Ring.of(2 * t, p)
    yield from _structured_candidates(t, ring)
    yield from _family_candidates(t, ring)


@lru_cache(maxsize=None)
def search_block_pair(t: int, budget: int = DEFAULT_SEARCH_BUDGET, p: int = DEFAULT_CHARACTERISTIC,
                      gb_budget: Budget | None = None) -> BlockPair | None:
    """First candidate that passes verification, trying at most ``budget`` of them."""
    if budget < 0:
        raise ValueError("search budget must be non-negative")
    if t < 1:
        raise ValueError("t must be positive")
    for pair in itertools.islice(candidate_pairs(t, p), budget):
        report = verify_block_pair(t, pair, gb_budget)
        if report.verdict:
            return BlockPair(t, pair, "search", True, report)
    return None


def get_block_pair(t: int, sources: Sequence[str] = DEFAULT_SOURCES, *, config: PairConfig | None = None,
                   p: int = DEFAULT_CHARACTERISTIC, search_budget: int = DEFAULT_SEARCH_BUDGET,
                   gb_budget: Budget | None = None) -> BlockPair:
    tried = []
    for src in sources:
        if src not in SOURCES:
            raise ValueError(f"unknown pair source {src!r}")
        tried.append(src)
        if src == "builtin":
            found = builtin_pair(t, p)
        elif src == "config":
            found = config.get(t) if config is not None else None
            if found is not None and found.pair[0].ring.p != p:
                found = None
        else:
            found = search_block_pair(t, search_budget, p, gb_budget)
        if found is not None and found.verified:
            return found
    raise PairUnavailable(t, tried)


# padding and projection

def padding_monomials(params: PathParams) -> tuple[MonomialIdeal, int]:
    """Windows ``i = k(t+1)+d-t+2 .. k(t+1)`` reaching into fresh variables."""
    n, t, k, d = params.n, params.t, params.k, params.d
    if d >= t - 1:
        raise ValueError(f"padding needs d < t - 1 (n={n}, t={t} has d={d})")
    extended = n + (t - 1 - d)
    start = max(k * (t + 1) + d - t + 2, 1)
    J = MonomialIdeal(Ring.of(extended), (window(i, t) for i in range(start, k * (t + 1) + 1)))
    return J, extended


@dataclass
class Lemma1Check:
    holds: bool
    witnesses: dict[Monomial, int] = field(default_factory=dict)
    failing: Monomial | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_lemma1_hypothesis(I: MonomialIdeal, J: MonomialIdeal) -> Lemma1Check:
    """Each generator of ``J`` needs a variable that divides no generator of ``I``.

    The witness reported is the largest such variable.
    """
    used = I.support
    out = Lemma1Check(True)
    for g in J.generators:
        fresh = sorted(g.support - used)
        if not fresh:
            return Lemma1Check(False, out.witnesses, g)
        out.witnesses[g] = fresh[-1]
    return out


def lemma1_project(polys: Iterable[Polynomial], keep_max_index: int) -> list[Polynomial]:
    """Delete every term touching a variable above ``keep_max_index``; drop zeros."""
    out = []
    for f in polys:
        g = f.filter_terms(lambda m: m.max_index <= keep_max_index)
        if not g.is_zero():
            out.append(g)
    return out


# certificates

@dataclass
class AraCertificate:
    params: PathParams
    generators: list[Polynomial]
    count: int
    formula_value: int
    pd_value: int | None = None
    verification: RadicalEqualityReport | None = None
    steps: list[str] = field(default_factory=list)
    tight: bool = True
    pair_provenance: str | None = None

    @property
    def degraded(self) -> bool:
        return not self.tight

    @property
    def gap(self) -> int:
        return self.count - self.formula_value

    @property
    def verdict(self) -> str:
        """``pass``, ``fail``, ``skipped`` (budget) or ``off``."""
        if self.verification is None:
            return "off"
        return self.verification.as_dict()["verdict"]

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "generators": [str(g) for g in self.generators],
            "count": self.count,
            "formula": self.formula_value,
            "pd": self.pd_value,
            "tight": self.tight,
            "pair": self.pair_provenance,
            "verification": self.verification.as_dict() if self.verification is not None else None,
            "steps": list(self.steps),
        }


def default_verify(n: int, t: int) -> bool:
    return (t == 2 and n <= 9) or ara_formula(n, t) <= 8


def substitute_blocks(pair: BlockPair, k: int, ring: Ring, steps: list[str] | None = None) -> list[Polynomial]:
    """The pair shifted onto each of the first ``k`` blocks, ``2k`` polynomials in all."""
    t = pair.t
    out = []
    for b in range(k):
        off = b * (t + 1)
        if steps is not None:
            steps.append(f"block {b + 1}: windows {off + 1}..{off + t + 1} on x{off + 1}..x{off + 2 * t} "
                         f"replaced by the pair shifted by {off}")
        out.extend(pair.instantiate(off, ring))
    return out


def construct_certificate(n: int, t: int, *, verify: bool | None = None, pair_sources: Sequence[str] = DEFAULT_SOURCES,
                          config: PairConfig | None = None, p: int = DEFAULT_CHARACTERISTIC,
                          budget: Budget | None = None, search_budget: int = DEFAULT_SEARCH_BUDGET,
                          workers: int | None = None, pd_cap: int = DEFAULT_VARIABLE_CAP,
                          pd_characteristic: int | None = None) -> AraCertificate:
    """Generators for ``I_t(L_n)`` up to radical, as many as the closed formula.

    Without a verified pair for ``t`` the path monomials themselves are
    returned and the certificate is marked non-tight. Raises
    :class:`VerificationFailure` when a completed check fails or when the
    projective dimension disagrees with the formula.
    """
    params = decompose_nt(n, t)
    k, d = params.k, params.d
    formula = ara_formula(n, t)
    ring = Ring.of(n, p)
    I = path_ideal(n, t, p)
    steps = [f"n = {k}*{t + 1} + {d}"]
    pair: BlockPair | None = None
    if k > 0:
        try:
            pair = get_block_pair(t, pair_sources, config=config, p=p, search_budget=search_budget, gb_budget=budget)
            steps.append(f"pair for t={t}: {pair.provenance}, verified on the block: {pair.to_config_line()}")
        except PairUnavailable as exc:
            steps.append(str(exc))

    tight = True
    if k > 0 and pair is None:
        gens = I.polynomials()
        tight = False
        steps.append(f"degraded: using the {len(gens)} path monomials, {len(gens) - formula} above the formula")
    elif d == t - 1:
        gens = substitute_blocks(pair, k, ring, steps)
    elif d < t - 1:
        J, extended = padding_monomials(params)
        steps.append(f"padding: J = ({J.to_text()}), extended n = {extended}")
        check = check_lemma1_hypothesis(I.with_ring(J.ring), J)
        if not check.holds:
            raise VerificationFailure(f"padding violates the projection hypothesis at {check.failing}")
        steps.append("projection hypothesis holds: " + ", ".join(f"{g} via x{v}" for g, v in check.witnesses.items()))
        big = substitute_blocks(pair, k, Ring.of(extended, p), steps)
        gens = [Polynomial.from_terms(ring, g.terms) for g in lemma1_project(big, n)]
        fresh = f"x{n + 1}" if extended == n + 1 else f"x{n + 1}..x{extended}"
        steps.append(f"projection: dropped terms involving {fresh}")
    else:
        gens = substitute_blocks(pair, k, ring, steps) if k else []
        last = window(n - t + 1, t)
        gens.append(ring.monomial(last))
        steps.append(f"leftover: last window {last} kept")

    cert = AraCertificate(params, gens, len(gens), formula, tight=tight,
                          pair_provenance=pair.provenance if pair else None, steps=steps)
    if tight and cert.count != formula:
        raise VerificationFailure(f"constructed {cert.count} generators, formula gives {formula}")

    if n <= pd_cap:
        cert.pd_value = projective_dimension(I, pd_characteristic or p, pd_cap)
        if cert.pd_value != formula:
            raise VerificationFailure(f"pd(R/I) = {cert.pd_value} differs from the formula value {formula}")
        if cert.pd_value > cert.count:
            raise VerificationFailure(f"pd(R/I) = {cert.pd_value} exceeds the generator count {cert.count}")
    else:
        steps.append(f"pd not computed: {n} variables exceed the cap {pd_cap}")

    if verify is None:
        verify = default_verify(n, t)
    if verify:
        report = verify_radical_equality(gens, I, budget=budget, workers=workers)
        cert.verification = report
        if report.failures:
            raise VerificationFailure(f"radical equality fails for n={n}, t={t}:\n{report.transcript()}")
    return cert
