"""Monomial orders: lex, degrevlex, and block elimination orders.

Monomials are dense exponent tuples over a fixed ring.  An order exposes a
``key`` function mapping a monomial to a tuple that sorts ascending, so the
largest monomial under the order is ``max(monomials, key=order.key)``.
"""

from __future__ import annotations


class MonomialOrder:
    """Base class; subclasses provide ``key`` and a stable ``name``."""

    name = "abstract"

    def key(self, mono: tuple) -> tuple:
        raise NotImplementedError

    def greater(self, a: tuple, b: tuple) -> bool:
        return self.key(a) > self.key(b)

    def sorted_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)

    def __repr__(self):
        return f"<order {self.name}>"


class Lex(MonomialOrder):
    name = "lex"

    def key(self, mono):
        return mono


class DegRevLex(MonomialOrder):
    """Degree reverse lexicographic; ties broken so the monomial with the
    smaller exponent in the last differing variable is the larger one."""

    name = "degrevlex"

    def key(self, mono):
        return (sum(mono), tuple(-e for e in reversed(mono)))


class PermutedDegRevLex(MonomialOrder):
    """Degrevlex after permuting variables; used to push one variable last
    (variable order ``priority[0] > priority[1] > ...``)."""

    def __init__(self, priority: tuple):
        self.priority = tuple(priority)
        self.name = f"degrevlex{self.priority}"

    def key(self, mono):
        permuted = tuple(mono[i] for i in self.priority)
        return (sum(mono), tuple(-e for e in reversed(permuted)))


class BlockElimination(MonomialOrder):
    """Eliminates the front block: compares the front-block exponents by
    degrevlex first, then the remaining variables by degrevlex."""

    def __init__(self, front: frozenset | set, nvars: int):
        self.front = frozenset(front)
        self.front_idx = tuple(sorted(self.front))
        self.back_idx = tuple(i for i in range(nvars) if i not in self.front)
        self.name = f"block({sorted(self.front)})"

    def key(self, mono):
        fr = tuple(mono[i] for i in self.front_idx)
        bk = tuple(mono[i] for i in self.back_idx)
        return (
            sum(fr),
            tuple(-e for e in reversed(fr)),
            sum(bk),
            tuple(-e for e in reversed(bk)),
        )


LEX = Lex()
DEGREVLEX = DegRevLex()


def order_by_name(name: str) -> MonomialOrder:
    """Resolve a CLI/JSON order name."""
    if name == "lex":
        return LEX
    if name == "degrevlex":
        return DEGREVLEX
    raise ValueError(f"unknown monomial order {name!r}")


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True iff monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)
