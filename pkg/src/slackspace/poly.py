"""Sparse multivariate polynomials over exact rationals.

A ``Ring`` fixes an ordered tuple of variable names; a ``Polynomial`` is a
dict from dense exponent tuples to nonzero ``Fraction`` coefficients.  All
arithmetic is exact.  Polynomials are order-agnostic; a ``MonomialOrder`` is
supplied where term order matters (leading terms, canonical text).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .orders import DEGREVLEX, MonomialOrder, mono_mul


class Ring:
    """A polynomial ring over the rationals with named variables."""

    __slots__ = ("vars", "index", "nvars", "_zero_mono")

    def __init__(self, names):
        self.vars = tuple(names)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.vars)}
        self.nvars = len(self.vars)
        self._zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, Ring) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        return f"Ring({','.join(self.vars)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self._zero_mono: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def gens(self):
        return [self.var(n) for n in self.vars]

    def monomial(self, mono: tuple, coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {tuple(mono): coeff})

    def extend(self, extra_names) -> "Ring":
        return Ring(self.vars + tuple(extra_names))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables(self) -> set:
        """Indices of variables actually appearing."""
        seen = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return seen

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        lm = max(self.terms, key=order.key)
        return lm, self.terms[lm]

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- content and normal forms -------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; 0 for zero."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Divide by content; sign fixed so the degrevlex leading coeff > 0."""
        if not self.terms:
            return self
        c = self.content()
        lm, lc = self.leading_term(DEGREVLEX)
        if lc < 0:
            c = -c
        return Polynomial(self.ring, {m: v / c for m, v in self.terms.items()})

    def monomial_content(self) -> tuple:
        """Exponent-wise min over all terms (the largest monomial divisor)."""
        it = iter(self.terms)
        acc = list(next(it))
        for m in it:
            for i, e in enumerate(m):
                if e < acc[i]:
                    acc[i] = e
        return tuple(acc)

    def div_monomial(self, mono: tuple) -> "Polynomial":
        return Polynomial(
            self.ring,
            {tuple(a - b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
        )

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        if lc == 1:
            return self
        return Polynomial(self.ring, {m: c / lc for m, c in self.terms.items()})

    # -- evaluation / substitution ------------------------------------------

    def evaluate(self, values: dict) -> Fraction:
        """Evaluate at a full point {var name or index: Fraction}."""
        point = [None] * self.ring.nvars
        for k, v in values.items():
            i = k if isinstance(k, int) else self.ring.index[k]
            point[i] = Fraction(v)
        total = Fraction(0)
        for m, c in self.terms.items():
            acc = c
            for i, e in enumerate(m):
                if e:
                    if point[i] is None:
                        raise ValueError(f"no value for {self.ring.vars[i]}")
                    acc *= point[i] ** e
            total += acc
        return total

    def substitute(self, repl: dict) -> "Polynomial":
        """Substitute polynomials or scalars for variables (same ring)."""
        out = self.ring.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            acc = self.ring.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                name = self.ring.vars[i]
                if name in repl or i in repl:
                    val = repl.get(name, repl.get(i))
                    if not isinstance(val, Polynomial):
                        val = self.ring.const(val)
                    key = (i, e)
                    if key not in cache:
                        cache[key] = val ** e
                    acc = acc * cache[key]
                else:
                    acc = acc * self.ring.monomial(
                        tuple(e if j == i else 0 for j in range(self.ring.nvars))
                    )
            out = out + acc
        return out

    def rename_ring(self, ring: Ring) -> "Polynomial":
        """Transport into another ring containing all used variables."""
        out: dict = {}
        for m, c in self.terms.items():
            mono = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    mono[ring.index[self.ring.vars[i]]] = e
            key = tuple(mono)
            out[key] = out.get(key, Fraction(0)) + c
        return Polynomial(ring, {m: c for m, c in out.items() if c})

    # -- text form -----------------------------------------------------------

    def text(self, order: MonomialOrder = DEGREVLEX) -> str:
        """Canonical text: terms sorted descending under ``order``."""
        if not self.terms:
            return "0"
        parts = []
        for m in order.sorted_desc(self.terms):
            c = self.terms[m]
            factors = [
                self.ring.vars[i] if e == 1 else f"{self.ring.vars[i]}^{e}"
                for i, e in enumerate(m)
                if e
            ]
            body = "*".join(factors)
            mag = abs(c)
            if not factors:
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", chunk))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, chunk in parts[1:]:
            out += f" {sign} {chunk}"
        return out

    def __repr__(self):
        return f"<{self.text()}>"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*^()]))"
)


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse canonical text form (also accepts ** for powers, parentheses)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    tokens.append(("end", ""))

    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_atom() -> Polynomial:
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "name":
            if val not in ring.index:
                raise ValueError(f"unknown variable {val!r}")
            return ring.var(val)
        if kind == "op" and val == "(":
            inner = parse_sum()
            kind, val = take()
            if (kind, val) != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        if kind == "op" and val == "-":
            return -parse_atom()
        raise ValueError(f"unexpected token {val!r}")

    def parse_power() -> Polynomial:
        base = parse_atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def parse_product() -> Polynomial:
        acc = parse_power()
        while peek() == ("op", "*"):
            take()
            acc = acc * parse_power()
        return acc

    def parse_sum() -> Polynomial:
        kind, val = peek()
        negate = False
        if (kind, val) == ("op", "-"):
            take()
            negate = True
        acc = parse_product()
        if negate:
            acc = -acc
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op = take()
            nxt = parse_product()
            acc = acc + (-nxt if op == "-" else nxt)
        return acc

    result = parse_sum()
    if peek()[0] != "end":
        raise ValueError(f"trailing tokens in {text!r}")
    return result
