"""Exact graded polynomial arithmetic over a prime field F_p.

A polynomial is a dict mapping exponent tuples to coefficients in [1, p).
The monomial order is degree-first graded reverse lexicographic (grevlex),
with per-variable positive weights.
"""

from __future__ import annotations

import re
from typing import Iterable

Mono = tuple[int, ...]
Terms = dict[Mono, int]


class InvalidInput(ValueError):
    """Raised on malformed or mismatched inputs (wrong ring, bad syntax, ...)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PolyRing:
    """Polynomial ring F_p[x_1..x_n] with positive weights and grevlex order."""

    def __init__(self, p: int, names: Iterable[str], weights: Iterable[int] | None = None):
        self.p = int(p)
        if not _is_prime(self.p):
            raise InvalidInput(f"characteristic {p} is not prime")
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names) or not self.names:
            raise InvalidInput("variable names must be nonempty and distinct")
        for nm in self.names:
            if not re.fullmatch(r"[A-Za-z_]\w*", nm):
                raise InvalidInput(f"bad variable name {nm!r}")
        self.n = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        if len(self.weights) != self.n or any(w <= 0 for w in self.weights):
            raise InvalidInput("weights must be positive, one per variable")
        self._var_index = {nm: i for i, nm in enumerate(self.names)}

    # -- monomials ---------------------------------------------------------

    def mono_deg(self, m: Mono) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def mono_key(self, m: Mono):
        """Sort key: bigger key = bigger monomial in grevlex."""
        return (self.mono_deg(m), tuple(-e for e in reversed(m)))

    def mono_mul(self, a: Mono, b: Mono) -> Mono:
        return tuple(x + y for x, y in zip(a, b))

    def mono_divides(self, a: Mono, b: Mono) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def mono_div(self, a: Mono, b: Mono) -> Mono:
        return tuple(x - y for x, y in zip(a, b))

    def mono_lcm(self, a: Mono, b: Mono) -> Mono:
        return tuple(max(x, y) for x, y in zip(a, b))

    @property
    def one_mono(self) -> Mono:
        return (0,) * self.n

    def monomials_of_degree(self, d: int) -> list[Mono]:
        """All monomials of weighted degree d, descending in the order."""
        out: list[Mono] = []

        def rec(i: int, rem: int, acc: list[int]):
            if i == self.n - 1:
                w = self.weights[i]
                if rem % w == 0:
                    out.append(tuple(acc + [rem // w]))
                return
            w = self.weights[i]
            for e in range(rem // w + 1):
                rec(i + 1, rem - e * w, acc + [e])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.mono_key, reverse=True)
        return out

    # -- construction ------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self.one_mono: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self._var_index[name]
        m = tuple(1 if j == i else 0 for j in range(self.n))
        return Polynomial(self, {m: 1})

    def from_terms(self, terms: Terms) -> "Polynomial":
        clean = {m: c % self.p for m, c in terms.items() if c % self.p}
        return Polynomial(self, clean)

    # -- text syntax -------------------------------------------------------

    _TOKEN = re.compile(r"\s*(\d+|[A-Za-z_]\w*|\^|\*|\+|-|\(|\))")

    def parse(self, text: str) -> "Polynomial":
        """Parse `3*x^2*y - y^3 + 1`; coefficients reduce mod p."""
        toks: list[str] = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise InvalidInput(f"bad polynomial syntax near {text[pos:pos+10]!r}")
                break
            toks.append(m.group(1))
            pos = m.end()
        if not toks:
            raise InvalidInput("empty polynomial text")
        self._toks = toks
        self._pos = 0
        poly = self._parse_sum()
        if self._pos != len(toks):
            raise InvalidInput(f"trailing tokens in polynomial: {toks[self._pos:]}")
        return poly

    def _peek(self):
        return self._toks[self._pos] if self._pos < len(self._toks) else None

    def _parse_sum(self) -> "Polynomial":
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._peek() == "-" else 1
            self._pos += 1
        acc = self._parse_product() * self.const(sign)
        while self._peek() in ("+", "-"):
            sign = -1 if self._peek() == "-" else 1
            self._pos += 1
            acc = acc + self._parse_product() * self.const(sign)
        return acc

    def _parse_product(self) -> "Polynomial":
        acc = self._parse_power()
        while self._peek() == "*":
            self._pos += 1
            acc = acc * self._parse_power()
        return acc

    def _parse_power(self) -> "Polynomial":
        base = self._parse_atom()
        if self._peek() == "^":
            self._pos += 1
            tok = self._peek()
            if tok is None or not tok.isdigit():
                raise InvalidInput("exponent must be a nonnegative integer")
            self._pos += 1
            e = int(tok)
            acc = self.one()
            for _ in range(e):
                acc = acc * base
            return acc
        return base

    def _parse_atom(self) -> "Polynomial":
        tok = self._peek()
        if tok is None:
            raise InvalidInput("unexpected end of polynomial text")
        self._pos += 1
        if tok.isdigit():
            return self.const(int(tok))
        if tok == "(":
            inner = self._parse_sum()
            if self._peek() != ")":
                raise InvalidInput("unbalanced parenthesis")
            self._pos += 1
            return inner
        if tok in self._var_index:
            return self.var(tok)
        raise InvalidInput(f"unknown variable {tok!r}")

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.p == other.p
            and self.names == other.names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.p, self.names, self.weights))

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={','.join(self.names)})"


class Polynomial:
    """Immutable polynomial; terms canonically keyed, no zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise InvalidInput("polynomials from different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.p
        out: Terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = self.ring.mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: (a * c) % self.ring.p for m, a in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mono_deg(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous polynomial; None for 0."""
        if not self.terms:
            return None
        degs = {self.ring.mono_deg(m) for m in self.terms}
        if len(degs) != 1:
            raise InvalidInput("degree() requires a homogeneous polynomial")
        return degs.pop()

    def lead(self) -> tuple[Mono, int]:
        m = max(self.terms, key=self.ring.mono_key)
        return m, self.terms[m]

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.mono_key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(sorted(self.terms.items()))))
        return self._hash

    def text(self, pretty: bool = True) -> str:
        """Canonical text.  pretty=False keeps all coefficients in [1, p-1]."""
        if not self.terms:
            return "0"
        ring = self.ring
        parts: list[str] = []
        for m, c in self.sorted_terms():
            if pretty and c > ring.p // 2:
                sign, c = "-", ring.p - c
            else:
                sign = "+"
            factors = []
            for nm, e in zip(ring.names, m):
                if e == 1:
                    factors.append(nm)
                elif e > 1:
                    factors.append(f"{nm}^{e}")
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(c)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return self.text()


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Arithmetic dispatch: op in {add, mul, scalar} (scalar uses b's constant)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar":
        c = b.terms.get(b.ring.one_mono, 0) if b.terms else 0
        if set(b.terms) - {b.ring.one_mono}:
            raise InvalidInput("scalar operand must be constant")
        return a.scale(c)
    raise InvalidInput(f"unknown op {op!r}")


def monomial_cmp(ring: PolyRing, m1: Mono, m2: Mono) -> int:
    """-1, 0, or 1 comparing m1 to m2 in degree-first grevlex."""
    if len(m1) != ring.n or len(m2) != ring.n:
        raise InvalidInput("monomial length must match ring variable count")
    k1, k2 = ring.mono_key(m1), ring.mono_key(m2)
    return (k1 > k2) - (k1 < k2)
