"""Exact arithmetic over prime fields: monomials, term orders, sparse polynomials.

Variables are always named ``x1 .. xN``. Coefficients live in GF(p) and are
stored as integers in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

DEFAULT_CHARACTERISTIC = 32003
MAX_EXPONENT = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field GF(p) for a prime ``2 <= p < 2**31``."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_CHARACTERISTIC):
        if not isinstance(p, int) or not (2 <= p < 2**31) or not is_prime(p):
            raise ValueError(f"characteristic must be a prime in [2, 2^31), got {p!r}")
        self.p = p

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def reduce(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(a, -1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative, used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


class Monomial:
    """Immutable power product stored as sorted ``(variable, exponent)`` pairs.

    Variable indices are 1-based; zero exponents are never stored, so the
    empty monomial is the unit ``1``.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[int, int] = {}
        for var, exp in pairs:
            if var < 1:
                raise ValueError(f"variable index must be >= 1, got {var}")
            if exp < 0:
                raise ValueError(f"negative exponent {exp} for x{var}")
            merged[var] = merged.get(var, 0) + exp
        items = tuple(sorted((v, e) for v, e in merged.items() if e))
        for _, e in items:
            if e > MAX_EXPONENT:
                raise OverflowError("exponent overflow")
        self._items = items
        self._hash = hash(items)

    @classmethod
    def _raw(cls, items: tuple[tuple[int, int], ...]) -> Monomial:
        m = object.__new__(cls)
        m._items = items
        m._hash = hash(items)
        return m

    @classmethod
    def from_dense(cls, exps: Iterable[int]) -> Monomial:
        return cls._raw(tuple((i + 1, e) for i, e in enumerate(exps) if e))

    @classmethod
    def product(cls, variables: Iterable[int]) -> Monomial:
        """Square-free monomial on the given variable indices."""
        return cls((v, 1) for v in variables)

    def to_dense(self, nvars: int) -> tuple[int, ...]:
        out = [0] * nvars
        for v, e in self._items:
            if v > nvars:
                raise ValueError(f"x{v} outside ring with {nvars} variables")
            out[v - 1] = e
        return tuple(out)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._items)

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self._items)

    @property
    def max_index(self) -> int:
        return self._items[-1][0] if self._items else 0

    def is_one(self) -> bool:
        return not self._items

    def is_square_free(self) -> bool:
        return all(e == 1 for _, e in self._items)

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self._items + other._items)

    def divides(self, other: Monomial) -> bool:
        theirs = dict(other._items)
        return all(theirs.get(v, 0) >= e for v, e in self._items)

    def __truediv__(self, other: Monomial) -> Monomial:
        mine = dict(self._items)
        for v, e in other._items:
            left = mine.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            mine[v] = left
        return Monomial(mine)

    def lcm(self, other: Monomial) -> Monomial:
        merged = dict(self._items)
        for v, e in other._items:
            merged[v] = max(merged.get(v, 0), e)
        return Monomial(merged)

    def gcd(self, other: Monomial) -> Monomial:
        theirs = dict(other._items)
        return Monomial((v, min(e, theirs[v])) for v, e in self._items if v in theirs)

    def shift(self, offset: int) -> Monomial:
        """Relabel ``x_i -> x_{i+offset}``."""
        return Monomial._raw(tuple((v + offset, e) for v, e in self._items))

    def relabel(self, mapping: Mapping[int, int]) -> Monomial:
        return Monomial((mapping[v], e) for v, e in self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and other._items == self._items

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Monomial, (self._items,))

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self._items)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ORDER_KINDS = ("degrevlex", "lex")


@dataclass(frozen=True)
class MonomialOrder:
    """Total, multiplicative order on monomials in ``nvars`` variables.

    ``key`` maps a dense exponent tuple to a sort key that is larger for
    larger monomials.
    """

    kind: str = "degrevlex"
    nvars: int = 0

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def dense_key(self, exps: tuple[int, ...]):
        if self.kind == "lex":
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def key(self, m: Monomial):
        return self.dense_key(m.to_dense(self.nvars))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class Ring:
    """``GF(p)[x1..xN]`` with a fixed term order."""

    nvars: int
    field: PrimeField = field(default_factory=PrimeField)
    order_kind: str = "degrevlex"

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("number of variables must be non-negative")

    @classmethod
    def of(cls, nvars: int, p: int = DEFAULT_CHARACTERISTIC, order: str = "degrevlex") -> Ring:
        return cls(nvars, PrimeField(p), order)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder(self.order_kind, self.nvars)

    def extend(self, extra: int = 1) -> Ring:
        return Ring(self.nvars + extra, self.field, self.order_kind)

    def with_nvars(self, nvars: int) -> Ring:
        return Ring(nvars, self.field, self.order_kind)

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def one(self) -> Polynomial:
        return Polynomial.from_terms(self, [(1, Monomial())])

    def var(self, i: int) -> Polynomial:
        return Polynomial.from_terms(self, [(1, Monomial({i: 1}))])

    def monomial(self, m: Monomial, coeff: int = 1) -> Polynomial:
        return Polynomial.from_terms(self, [(coeff, m)])

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)


class Polynomial:
    """Sparse polynomial with terms kept in strictly descending order.

    Instances are immutable; ``terms`` is a tuple of ``(coefficient,
    Monomial)`` with nonzero coefficients in ``[0, p)``.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: tuple[tuple[int, Monomial], ...]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[int, Monomial]]) -> Polynomial:
        p = ring.p
        acc: dict[Monomial, int] = {}
        for c, m in terms:
            if m.max_index > ring.nvars:
                raise ValueError(f"x{m.max_index} outside ring with {ring.nvars} variables")
            acc[m] = (acc.get(m, 0) + c) % p
        return cls._from_dict(ring, acc)

    @classmethod
    def _from_dict(cls, ring: Ring, acc: Mapping[Monomial, int]) -> Polynomial:
        order = ring.order
        items = [(c, m) for m, c in acc.items() if c]
        items.sort(key=lambda cm: order.key(cm[1]), reverse=True)
        return cls(ring, tuple(items))

    @classmethod
    def from_dense(cls, ring: Ring, coeffs: Mapping[tuple[int, ...], int]) -> Polynomial:
        return cls._from_dict(ring, {Monomial.from_dense(e): c % ring.p for e, c in coeffs.items()})

    def to_dense(self) -> dict[tuple[int, ...], int]:
        n = self.ring.nvars
        return {m.to_dense(n): c for c, m in self.terms}

    def as_dict(self) -> dict[Monomial, int]:
        return {m: c for c, m in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1].is_one() or not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, Monomial]]:
        return iter(self.terms)

    @property
    def leading_term(self) -> tuple[int, Monomial]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def leading_monomial(self) -> Monomial:
        return self.leading_term[1]

    @property
    def leading_coefficient(self) -> int:
        return self.leading_term[0]

    @property
    def degree(self) -> int:
        return max((m.degree for _, m in self.terms), default=-1)

    @property
    def monomials(self) -> list[Monomial]:
        return [m for _, m in self.terms]

    @property
    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for _, m in self.terms:
            out |= m.support
        return frozenset(out)

    def _check(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.from_terms(self.ring, [(other, Monomial())])
        return None

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = self.as_dict()
        p = self.ring.p
        for c, m in other.terms:
            acc[m] = (acc.get(m, 0) + c) % p
        return Polynomial._from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, tuple(((-c) % p, m) for c, m in self.terms))

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, tuple((a * c % p, m) for a, m in self.terms))

    def mul_monomial(self, m: Monomial, c: int = 1) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        if m.max_index > self.ring.nvars:
            raise ValueError(f"x{m.max_index} outside ring with {self.ring.nvars} variables")
        # multiplication by a monomial preserves the order, no re-sort needed
        return Polynomial(self.ring, tuple((a * c % p, t * m) for a, t in self.terms))

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        p = self.ring.p
        acc: dict[Monomial, int] = {}
        for a, m in self.terms:
            for b, n in other.terms:
                mn = m * n
                acc[mn] = (acc.get(mn, 0) + a * b) % p
        return Polynomial._from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient))

    def embed(self, ring: Ring) -> Polynomial:
        """Same polynomial viewed in a ring with at least as many variables."""
        if ring.field != self.ring.field:
            raise ValueError("cannot embed across different fields")
        if ring == self.ring:
            return self
        return Polynomial.from_terms(ring, self.terms)

    def shift(self, offset: int, ring: Ring | None = None) -> Polynomial:
        """Substitute ``x_i -> x_{i+offset}`` on exponent vectors."""
        ring = ring or self.ring
        return Polynomial.from_terms(ring, [(c, m.shift(offset)) for c, m in self.terms])

    def relabel(self, mapping: Mapping[int, int], ring: Ring | None = None) -> Polynomial:
        ring = ring or self.ring
        return Polynomial.from_terms(ring, [(c, m.relabel(mapping)) for c, m in self.terms])

    def filter_terms(self, keep) -> Polynomial:
        return Polynomial(self.ring, tuple((c, m) for c, m in self.terms if keep(m)))

    def evaluate(self, point: Mapping[int, int] | list[int]) -> int:
        """Value at a point; a list is read as ``[x1, x2, ...]``."""
        p = self.ring.p
        get = (lambda v: point[v - 1]) if isinstance(point, list) else point.__getitem__
        total = 0
        for c, m in self.terms:
            val = c
            for v, e in m.items():
                val = val * pow(get(v), e, p) % p
            total += val
        return total % p

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == Polynomial.from_terms(self.ring, [(other, Monomial())])
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    field_ = f.ring.field
    out: list[str] = []
    for idx, (c, m) in enumerate(f.terms):
        s = field_.signed(c)
        sign = "-" if s < 0 else "+"
        mag = abs(s)
        if m.is_one():
            body = str(mag)
        elif mag == 1:
            body = str(m)
        else:
            body = f"{mag}*{m}"
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


class ParseError(ValueError):
    """Malformed polynomial or ideal text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = mt.start(mt.lastgroup) if mt.lastgroup != "idx" else mt.start("var")
        if mt.group("int") is not None:
            tokens.append(("int", int(mt.group("int")), mt.start("int")))
        elif mt.group("var") is not None:
            tokens.append(("var", int(mt.group("idx")), mt.start("var")))
        else:
            tokens.append(("op", mt.group("op"), start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


def max_variable_index(text: str) -> int:
    """Largest ``k`` such that ``xk`` occurs in ``text`` (0 if none)."""
    return max((int(k) for k in re.findall(r"x(\d+)", text)), default=0)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Read ``text`` in the ASCII grammar into a canonical polynomial.

    Grammar::

        poly := ['+'|'-'] term (('+'|'-') term)*
        term := [integer] ('*'? var)*
        var  := 'x' index ('^' exponent)?
    """
    tokens = _tokenize(text)
    i = 0
    terms: list[tuple[int, Monomial]] = []

    def peek():
        return tokens[i]

    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        coeff = 1
        exps: list[tuple[int, int]] = []
        seen_any = False
        kind, val, pos = peek()
        if kind == "int":
            coeff = val
            seen_any = True
            i += 1
        while True:
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                if not seen_any:
                    raise ParseError("'*' without left operand", text, pos)
                i += 1
                kind, val, pos = peek()
                if kind != "var":
                    raise ParseError("expected variable after '*'", text, pos)
            if kind != "var":
                break
            if val < 1:
                raise ParseError("variable index must be >= 1", text, pos)
            if val > ring.nvars:
                raise ParseError(f"x{val} exceeds ring with {ring.nvars} variables", text, pos)
            i += 1
            exp = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                kind2, val2, pos2 = peek()
                if kind2 != "int":
                    raise ParseError("expected exponent after '^'", text, pos2)
                exp = val2
                i += 1
            exps.append((val, exp))
            seen_any = True
        if not seen_any:
            raise ParseError("expected term", text, peek()[2])
        terms.append((sign * coeff, Monomial(exps)))
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise ParseError(f"unexpected token {val!r}", text, pos)
    return Polynomial.from_terms(ring, terms)
