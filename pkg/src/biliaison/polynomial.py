"""Homogeneous polynomial arithmetic in k[X,Y,Z,T] over a prime field.

Polynomials are immutable maps ``exponent tuple -> coefficient`` with
coefficients kept in ``range(p)``.  The ambient monomial order is degree
reverse lexicographic with X > Y > Z > T.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

DEFAULT_PRIME = 32003
VARIABLES = ("X", "Y", "Z", "T")
NVARS = 4

Monomial = tuple  # 4-tuple of non-negative exponents


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


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


@dataclass(frozen=True)
class FieldScalar:
    """An element of F_p."""

    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            if other.p != self.p:
                raise ValueError("scalars over different primes")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return FieldScalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldScalar(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldScalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.p)

    def inverse(self) -> "FieldScalar":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return FieldScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldScalar(self._coerce(other), self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.p}"


# ---------------------------------------------------------------- monomials

def mono_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2] + m[3]


def mono_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in degrevlex."""
    return (m[0] + m[1] + m[2] + m[3], -m[3], -m[2], -m[1])


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return (b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3])


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


@lru_cache(maxsize=None)
def monomials_of_degree(d: int) -> tuple:
    """All monomials of degree d, in decreasing degrevlex order."""
    if d < 0:
        return ()
    out = []
    for e3 in range(d + 1):
        for e2 in range(d - e3 + 1):
            for e1 in range(d - e3 - e2 + 1):
                out.append((d - e3 - e2 - e1, e1, e2, e3))
    # decreasing degrevlex == increasing (e3, e2, e1)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(d))}


def mono_str(m: Monomial) -> str:
    parts = []
    for v, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


# --------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable polynomial over F_p in X, Y, Z, T.

    ``terms`` lists (coefficient, monomial) pairs in strictly decreasing
    degrevlex order.  ``degree`` is the common degree of all terms, ``None``
    for the zero polynomial, and the string ``"inhomogeneous"`` otherwise.
    """

    __slots__ = ("_coeffs", "p", "_terms", "_hash")

    def __init__(self, coeffs: dict | None = None, p: int = DEFAULT_PRIME):
        clean = {}
        if coeffs:
            for m, c in coeffs.items():
                c %= p
                if c:
                    clean[tuple(m)] = c
        self._coeffs = clean
        self.p = p
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: dict, p: int) -> "Polynomial":
        # coeffs already reduced and nonzero
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj.p = p
        obj._terms = None
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls._raw({}, p)

    @classmethod
    def constant(cls, c: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({(0, 0, 0, 0): c}, p)

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({tuple(m): c}, p)

    @classmethod
    def variable(cls, i: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        e = [0, 0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1}, p)

    @classmethod
    def random_form(cls, d: int, rng: random.Random, p: int = DEFAULT_PRIME) -> "Polynomial":
        """Dense form of degree d with uniformly random coefficients."""
        return cls({m: rng.randrange(p) for m in monomials_of_degree(d)}, p)

    # accessors
    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    @property
    def terms(self) -> list:
        if self._terms is None:
            self._terms = [(self._coeffs[m], m) for m in sorted(self._coeffs, key=mono_key, reverse=True)]
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    @property
    def degree(self):
        if not self._coeffs:
            return None
        degs = {mono_degree(m) for m in self._coeffs}
        if len(degs) > 1:
            return "inhomogeneous"
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return self.degree != "inhomogeneous"

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self._coeffs)

    def coefficient(self, m: Monomial) -> int:
        return self._coeffs.get(tuple(m), 0)

    def leading_term(self) -> tuple:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._coeffs, key=mono_key)
        return FieldScalar(self._coeffs[m], self.p), m

    def monic(self) -> "Polynomial":
        c, _ = self.leading_term()
        return self.scale(c.inverse().value)

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.p != other.p:
            raise ValueError(f"polynomials over different primes ({self.p} vs {other.p})")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldScalar)):
            return Polynomial.constant(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Polynomial._raw({m: p - c for m, c in self._coeffs.items()}, p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out: dict = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial._raw({m: c for m, c in out.items() if c}, p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p)
        p = self.p
        return Polynomial._raw({m: (v * c) % p for m, v in self._coeffs.items()}, p)

    def mul_monomial(self, u: Monomial, c: int = 1) -> "Polynomial":
        p = self.p
        c %= p
        if c == 0:
            return Polynomial.zero(p)
        return Polynomial._raw({mono_mul(m, u): (v * c) % p for m, v in self._coeffs.items()}, p)

    def exact_divide(self, other: "Polynomial") -> "Polynomial | None":
        """Return q with self == q*other, or None if other does not divide self."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lc, lm = other.leading_term()
        inv = lc.inverse().value
        rem = self
        quot: dict = {}
        while rem:
            c, m = rem.leading_term()
            if not mono_divides(lm, m):
                return None
            u = mono_div(m, lm)
            k = (c.value * inv) % self.p
            quot[u] = k
            rem = rem - other.mul_monomial(u, k)
        return Polynomial(quot, self.p)

    def substitute(self, images: list) -> "Polynomial":
        """Evaluate at polynomials ``images`` for (X, Y, Z, T)."""
        out = Polynomial.zero(self.p)
        for m, c in self._coeffs.items():
            t = Polynomial.constant(c, self.p)
            for v, e in zip(images, m):
                if e:
                    t = t * (v ** e)
            out = out + t
        return out

    def permute_variables(self, perm: tuple) -> "Polynomial":
        """Variable i is sent to variable perm[i]."""
        out = {}
        for m, c in self._coeffs.items():
            e = [0, 0, 0, 0]
            for i, k in enumerate(m):
                e[perm[i]] = k
            out[tuple(e)] = c
        return Polynomial._raw(out, self.p)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.p == other.p and self._coeffs == other._coeffs
        if isinstance(other, int):
            return self == Polynomial.constant(other, self.p)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._coeffs.items())))
        return self._hash

    # printing
    def __str__(self):
        if not self._coeffs:
            return "0"
        half = self.p // 2
        chunks = []
        for c, m in self.terms:
            neg = c > half
            a = self.p - c if neg else c
            word = mono_str(m)
            if not word:
                body = str(a)
            elif a == 1:
                body = word
            else:
                body = f"{a}*{word}"
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, p={self.p})"


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        kind = ("int", "name", "^", "*", "sign", "(", ")")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def parse_polynomial(text: str, p: int = DEFAULT_PRIME) -> Polynomial:
    """Parse ``poly := term (('+'|'-') term)*`` with ``term := [int] ('*'? var ('^' int)?)*``.

    >>> str(parse_polynomial("X*Z - Y*T"))
    'X*Z - Y*T'
    """
    tokens = _tokenize(text)
    i = 0
    out: dict = {}

    def peek():
        return tokens[i]

    def expect_int():
        nonlocal i
        kind, val, pos = tokens[i]
        if kind != "int":
            raise ParseError("expected integer exponent", pos, text)
        i += 1
        return int(val)

    if peek()[0] == "end":
        raise ParseError("empty polynomial", 0, text)
    sign = 1
    if peek()[0] == "sign":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        coeff = 1
        expo = [0, 0, 0, 0]
        seen = False
        kind, val, pos = peek()
        if kind == "int":
            coeff = int(val)
            i += 1
            seen = True
        while True:
            kind, val, pos = peek()
            if kind == "*":
                if not seen:
                    raise ParseError("'*' before any factor", pos, text)
                if tokens[i + 1][0] != "name":
                    raise ParseError("expected variable after '*'", tokens[i + 1][2], text)
                i += 1
                continue
            if kind != "name":
                break
            if val not in VARIABLES:
                raise ParseError(f"unknown variable {val!r}", pos, text)
            i += 1
            e = 1
            if peek()[0] == "^":
                i += 1
                e = expect_int()
            expo[VARIABLES.index(val)] += e
            seen = True
        if not seen:
            raise ParseError("expected a term", pos, text)
        m = tuple(expo)
        out[m] = (out.get(m, 0) + sign * coeff) % p
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind != "sign":
            raise ParseError(f"unexpected token {val!r}", pos, text)
        sign = -1 if val == "-" else 1
        i += 1
    return Polynomial(out, p)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Polynomial) -> tuple:
    return f.leading_term()


def parse_many(texts: Iterable[str], p: int = DEFAULT_PRIME) -> list:
    return [parse_polynomial(t, p) for t in texts]


def variables(p: int = DEFAULT_PRIME) -> tuple:
    return tuple(Polynomial.variable(i, p) for i in range(NVARS))
