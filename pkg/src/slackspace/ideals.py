"""Ideals with cached Groebner bases: saturation, elimination, dimension.

Saturation by a single polynomial adjoins a fresh variable t, adds t*f - 1,
computes a basis under a block order eliminating t, and intersects with the
original ring.  Saturation by a monomial iterates over its variables; for
homogeneous ideals a variable saturation uses the degrevlex divide-out rule
(the target variable is rotated to be smallest), which avoids the auxiliary
variable entirely.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionUndefinedError
from .groebner import (
    DEFAULT_LIMITS,
    GroebnerLimits,
    groebner_basis,
    normal_form,
)
from .orders import (
    DEGREVLEX,
    BlockElimination,
    MonomialOrder,
    PermutedDegRevLex,
)
from .poly import Polynomial, Ring


class Ideal:
    """An ideal given by generators, with a cached reduced Groebner basis."""

    def __init__(self, ring: Ring, generators, limits: GroebnerLimits = None):
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        self.limits = limits or DEFAULT_LIMITS
        self._gb_cache: dict = {}

    def __repr__(self):
        return f"Ideal({len(self.generators)} gens in {self.ring!r})"

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> list:
        cached = self._gb_cache.get(order.name)
        if cached is None:
            cached = groebner_basis(self.generators, order, self.limits)
            self._gb_cache[order.name] = cached
        return cached

    def set_cached_basis(self, order: MonomialOrder, basis: list):
        self._gb_cache[order.name] = basis

    def reduce(self, p: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        return normal_form(p, self.groebner(order), order)

    def contains(self, p: Polynomial, order: MonomialOrder = DEGREVLEX) -> bool:
        return self.reduce(p, order).is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_trivial(self) -> bool:
        """True iff 1 is in the ideal."""
        if not self.generators:
            return False
        gb = self.groebner(DEGREVLEX)
        return any(not g.is_zero() and g.is_constant() for g in gb)

    def is_homogeneous(self) -> bool:
        for g in self.generators:
            degs = {sum(m) for m in g.terms}
            if len(degs) > 1:
                return False
        return True

    def equals(self, other: "Ideal", order: MonomialOrder = DEGREVLEX) -> bool:
        """Mutual reduction in both directions."""
        if self.ring != other.ring:
            raise ValueError("ideals in different rings")
        return all(other.contains(g, order) for g in self.generators) and all(
            self.contains(g, order) for g in other.generators
        )

    def variables_used(self) -> set:
        used = set()
        for g in self.generators:
            used |= g.variables()
        return used

    def to_text(self, order: MonomialOrder = DEGREVLEX) -> list:
        return [g.text(order) for g in self.generators]

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_text(cls, ring: Ring, texts, limits=None) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], limits=limits)

    def with_generators(self, gens) -> "Ideal":
        return Ideal(self.ring, gens, limits=self.limits)

    def restricted(self) -> "Ideal":
        """Same ideal in the subring of variables actually used."""
        used = sorted(self.variables_used())
        sub = Ring(tuple(self.ring.vars[i] for i in used))
        gens = [g.rename_ring(sub) for g in self.generators]
        return Ideal(sub, gens, limits=self.limits)


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder = DEGREVLEX) -> bool:
    return I.equals(J, order)


def reduce_poly(p: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    return I.reduce(p, order)


def _strip_variable(gens: list, var_index: int):
    """Divide each generator by the largest power of one variable."""
    changed = False
    out = []
    for g in gens:
        k = min(m[var_index] for m in g.terms)
        if k > 0:
            mono = tuple(k if i == var_index else 0 for i in range(g.ring.nvars))
            g = g.div_monomial(mono)
            changed = True
        out.append(g)
    return out, changed


def _saturate_by_variable_homogeneous(I: Ideal, var_index: int) -> Ideal:
    """Degrevlex divide-out saturation; valid for homogeneous ideals."""
    priority = tuple(i for i in range(I.ring.nvars) if i != var_index) + (var_index,)
    order = PermutedDegRevLex(priority)
    gens = I.generators
    while True:
        gb = groebner_basis(gens, order, I.limits)
        stripped, changed = _strip_variable(gb, var_index)
        if not changed:
            out = Ideal(I.ring, gb, limits=I.limits)
            out.set_cached_basis(order, gb)
            return out
        gens = stripped


def _saturate_rabinowitsch(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^inf via the auxiliary variable t and elimination of t."""
    ring = I.ring
    tname = "t_sat"
    while tname in ring.index:
        tname += "_"
    ext = Ring((tname,) + ring.vars)
    gens = [g.rename_ring(ext) for g in I.generators]
    gens.append(ext.var(tname) * f.rename_ring(ext) - ext.one())
    order = BlockElimination({0}, ext.nvars)
    gb = groebner_basis(gens, order, I.limits)
    kept = [g for g in gb if 0 not in g.variables()]
    back = [g.rename_ring(ring) for g in kept]
    return Ideal(ring, back, limits=I.limits)


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^inf for nonzero f."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    if I.is_zero_ideal():
        return I
    if f.is_constant():
        return I
    current = I
    # peel off the monomial content of f and saturate variable by variable
    mono = f.monomial_content()
    support = [i for i, e in enumerate(mono) if e]
    for v in support:
        current = saturate_by_variable(current, v)
    core = f.div_monomial(mono)
    if not core.is_constant():
        current = _saturate_rabinowitsch(current, core)
    return current


def saturate_by_variable(I: Ideal, var_index: int) -> Ideal:
    if I.is_zero_ideal():
        return I
    # stripping target-variable powers from generators is always sound:
    # g = x^k h puts h in I : x^inf without changing the saturation
    pre, _ = _strip_variable(I.generators, var_index)
    J = Ideal(I.ring, pre, limits=I.limits)
    if J.is_homogeneous():
        return _saturate_by_variable_homogeneous(J, var_index)
    return _saturate_rabinowitsch(J, J.ring.var(J.ring.vars[var_index]))


def saturate_by_variables(I: Ideal, var_indices=None) -> Ideal:
    """Saturate by the product of the given variables (default: all used).

    Uses I : (fg)^inf = (I : f^inf) : g^inf, so one pass over the variables
    computes the full saturation.
    """
    if I.is_zero_ideal():
        return I
    if var_indices is None:
        var_indices = sorted(I.variables_used())
    current = I
    for v in var_indices:
        current = saturate_by_variable(current, v)
        if current.is_trivial():
            return current
    return current


def eliminate(I: Ideal, var_indices) -> Ideal:
    """I intersected with the subring omitting the given variables."""
    front = frozenset(var_indices)
    if not front:
        return Ideal(I.ring, list(I.generators), limits=I.limits)
    order = BlockElimination(front, I.ring.nvars)
    gb = groebner_basis(I.generators, order, I.limits)
    kept = [g for g in gb if not (g.variables() & front)]
    return Ideal(I.ring, kept, limits=I.limits)


def _min_hitting_set(edges: list, universe: list) -> int:
    """Exact minimum hitting set size via branch and bound."""
    edges = [frozenset(e) for e in edges if e]
    # drop supersets of other edges
    edges.sort(key=len)
    minimal = []
    for e in edges:
        if not any(m <= e for m in minimal):
            minimal.append(e)
    best = [len(universe)]

    def search(remaining, chosen):
        if not remaining:
            best[0] = min(best[0], chosen)
            return
        if chosen + 1 >= best[0]:
            return
        e = min(remaining, key=len)
        for v in sorted(e):
            rest = [r for r in remaining if v not in r]
            search(rest, chosen + 1)

    search(minimal, 0)
    return best[0]


def krull_dimension(I: Ideal, ambient_size: int = None) -> int:
    """Dimension via a maximal independent variable set modulo in(I).

    By default the ambient ring is the set of variables appearing in the
    generators; pass ``ambient_size`` to declare a larger ambient variable
    count (extra variables are free and each adds one to the dimension).
    """
    used = sorted(I.variables_used())
    if not I.generators:
        return ambient_size if ambient_size is not None else I.ring.nvars
    gb = I.groebner(DEGREVLEX)
    if any(g.is_constant() and not g.is_zero() for g in gb):
        raise DimensionUndefinedError("trivial ideal has no dimension")
    supports = []
    for g in gb:
        lm, _ = g.leading_term(DEGREVLEX)
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    core_vars = sorted(set().union(*supports) | set(used))
    cover = _min_hitting_set(supports, core_vars)
    dim_core = len(core_vars) - cover
    if ambient_size is None:
        ambient_size = len(used)
    if ambient_size < len(core_vars):
        raise ValueError("declared ambient smaller than variables in use")
    return dim_core + (ambient_size - len(core_vars))


def is_trivial(I: Ideal) -> bool:
    return I.is_trivial()
