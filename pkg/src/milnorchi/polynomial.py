"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable mapping from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients over an ordered tuple of variable
names.  Terms are printed in graded reverse lexicographic order, largest
first, and the printed form parses back to the same polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import GermError, PolynomialParseError

Monomial = tuple

__all__ = [
    "Polynomial",
    "MapGerm",
    "WeightedType",
    "parse_polynomial",
    "differentiate",
    "gradient",
    "evaluate",
    "check_weighted_type",
    "grevlex_key",
    "local_key",
]


def grevlex_key(m):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def local_key(m):
    """Sort key for the negative degree reverse lexicographic (local) order.

    Lower total degree is larger, so the constant monomial is the maximum.
    """
    return (-sum(m), tuple(-e for e in reversed(m)))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial over Q.

    >>> x, y = Polynomial.variable(("x", "y"), "x"), Polynomial.variable(("x", "y"), "y")
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise ValueError(f"monomial {m} does not match {n} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = _as_fraction(c)
            if c:
                c = clean.get(m, 0) + c
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
        self.variables = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, variables, c=0):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        m = tuple(int(v == name) for v in variables)
        return cls._raw(variables, {m: Fraction(1)})

    @classmethod
    def monomial(cls, variables, exponents, c=1):
        return cls(variables, {tuple(exponents): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def order(self):
        """Lowest total degree of a term (order of vanishing at 0); -1 for zero."""
        return min((sum(m) for m in self._terms), default=-1)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def sorted_terms(self, key=grevlex_key):
        """Terms as (monomial, coefficient) pairs, largest first under ``key``."""
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return Polynomial.constant(self.variables, _as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _as_fraction(other)
            if not c:
                return Polynomial._raw(self.variables, {})
            return Polynomial._raw(self.variables, {m: c * v for m, v in self._terms.items()})
        other = self._coerce(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.variables, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self._terms == other._terms
        try:
            other = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: other} if other else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -----------------------------------------

    def diff(self, var):
        if var not in self.variables:
            raise ValueError(f"unknown variable {var!r}")
        i = self.variables.index(var)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial._raw(self.variables, out)

    def __call__(self, *point):
        return evaluate(self, point)

    def map_variables(self, variables, index_map=None):
        """Re-embed into a larger (or reordered) variable tuple.

        ``index_map[i]`` is the position of ``self.variables[i]`` in
        ``variables``; by default positions are looked up by name.
        """
        variables = tuple(variables)
        if index_map is None:
            index_map = [variables.index(v) for v in self.variables]
        n = len(variables)
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[index_map[i]] += k
            out[tuple(e)] = c
        return Polynomial._raw(variables, out)

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = []
            for name, e in zip(self.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            if idx == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.variables!r})"


@dataclass(frozen=True)
class MapGerm:
    """A polynomial map germ (R^n, 0) -> (R^n, 0).

    Components must share the variable tuple, there must be as many
    components as variables, and every component must vanish at 0.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise GermError("a map germ needs at least one component")
        variables = comps[0].variables
        for i, p in enumerate(comps):
            if p.variables != variables:
                raise GermError(f"component {i} is over {p.variables}, expected {variables}")
        if len(comps) != len(variables):
            raise GermError(
                f"{len(comps)} components in {len(variables)} variables; the map must be square")
        for i, p in enumerate(comps):
            if p.constant_term():
                raise GermError(
                    f"component {i} ({p}) has nonzero constant term; H(0) != 0")

    @property
    def variables(self):
        return self.components[0].variables

    @property
    def n(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.components) + ")"


@dataclass(frozen=True)
class WeightedType:
    """Weights ``(d_1, ..., d_n)`` and weighted degree ``d``."""

    weights: tuple
    degree: int

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if any(x <= 0 for x in w) or int(self.degree) <= 0:
            raise ValueError("weights and degree must be positive integers")
        object.__setattr__(self, "degree", int(self.degree))


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/()])|(?P<bad>\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "bad":
            raise PolynomialParseError(f"unexpected character {value!r}", text, start)
        if kind == "num" and "." in value:
            raise PolynomialParseError(
                f"decimal literal {value!r}; use a rational p/q", text, start)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolynomialParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            if op == "*":
                p = p * self.unary()
            else:
                tok = self.peek()
                if tok[0] != "num":
                    raise self.error("division is only allowed by an integer literal")
                self.take()
                d = int(tok[1])
                if d == 0:
                    raise self.error("division by zero", tok)
                p = p / d
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "-":
                raise self.error("negative exponent", tok)
            if tok[0] != "num":
                raise self.error("exponent must be a non-negative integer literal", tok)
            self.take()
            base = base ** int(tok[1])
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                raise self.error("chained exponent; add parentheses")
        return base

    def atom(self):
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return Polynomial.constant(self.variables, int(value))
        if kind == "ident":
            if value not in self.variables:
                raise self.error(f"unknown variable {value!r}", tok)
            return Polynomial.variable(self.variables, value)
        if kind == "op" and value == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return p
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {value!r}", tok)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the ordered ``variables``.

    Grammar: integer literals, ``/`` by an integer literal, identifiers,
    ``+ - * ^`` and parentheses.  Multiplication must be explicit.
    """
    if not isinstance(text, str):
        raise TypeError("polynomial text must be a string")
    return _Parser(text, variables).parse()


# -- operations ---------------------------------------------------------------

def differentiate(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


def gradient(p: Polynomial) -> MapGerm:
    """The gradient of ``p`` as a map germ (raises GermError if grad p(0) != 0)."""
    return MapGerm(tuple(p.diff(v) for v in p.variables))


def evaluate(p: Polynomial, point: Iterable) -> Fraction:
    point = tuple(_as_fraction(x) for x in point)
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    total = Fraction(0)
    for m, c in p.terms.items():
        v = c
        for x, e in zip(point, m):
            if e:
                v *= x ** e
        total += v
    return total


def euler_defect(p: Polynomial, w: WeightedType) -> Polynomial:
    """sum_i d_i x_i dp/dx_i - d p, which vanishes iff p has type ``w``."""
    if len(w.weights) != p.nvars:
        raise ValueError(f"{len(w.weights)} weights for {p.nvars} variables")
    acc = -w.degree * p
    for d_i, v in zip(w.weights, p.variables):
        acc = acc + d_i * Polynomial.variable(p.variables, v) * p.diff(v)
    return acc


def check_weighted_type(p: Polynomial, w: WeightedType) -> bool:
    """True iff every monomial of ``p`` has weighted degree ``w.degree``.

    Checked both monomial-wise and through the Euler relation; the two
    must agree.
    """
    if len(w.weights) != p.nvars:
        raise ValueError(f"{len(w.weights)} weights for {p.nvars} variables")
    by_monomial = all(
        sum(d * a for d, a in zip(w.weights, m)) == w.degree for m in p.terms)
    by_euler = euler_defect(p, w).is_zero()
    if by_monomial != by_euler:
        raise AssertionError("monomial and Euler-relation checks disagree")
    return by_monomial
