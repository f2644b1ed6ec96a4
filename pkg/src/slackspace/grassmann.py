"""Pluecker vectors, Pluecker/cone ideals, and the slack <-> Grassmannian maps.

Pluecker coordinates are indexed by sorted (d+1)-subsets of [v] in
colexicographic order.  The sign convention for filling slack entries is the
parity of the permutation sorting (J_F, i); the residual orientation sign of
each facet column is not derivable from abstract data, so matrices are passed
through a column sign normalization (first nonzero entry made positive).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .cones import AbstractCone, FacetBasisChoice, choose_facet_bases, facet_extensions
from .errors import InvalidBasisError, NotASubspaceError, RankError, ShapeError
from .groebner import DEFAULT_LIMITS
from .ideals import Ideal, eliminate, saturate_by_variables
from .linalg import bareiss_det, rref
from .poly import Polynomial, Ring
from .slack import NumericSlackMatrix, SymbolicSlackMatrix


def colex_key(subset: tuple) -> tuple:
    return tuple(reversed(subset))


def colex_subsets(v: int, k: int) -> list:
    return sorted(combinations(range(1, v + 1), k), key=colex_key)


def subset_var_name(subset: tuple) -> str:
    if all(i <= 9 for i in subset):
        return "p_" + "".join(str(i) for i in subset)
    return "p_" + "_".join(str(i) for i in subset)


def sort_sign(tup: tuple):
    """(sign, sorted tuple); sign 0 when the tuple has repeats."""
    n = len(tup)
    if len(set(tup)) != n:
        return 0, tuple(sorted(tup))
    inversions = sum(
        1 for a in range(n) for b in range(a + 1, n) if tup[a] > tup[b]
    )
    return (-1) ** inversions, tuple(sorted(tup))


@dataclass(frozen=True)
class PluckerVector:
    """Projective vector of coordinates on sorted (d+1)-subsets of [v]."""

    d_plus_1: int
    v: int
    coords: dict  # sorted tuple -> Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.coords.values()):
            raise RankError("all Pluecker coordinates vanish")

    def subsets(self) -> list:
        return colex_subsets(self.v, self.d_plus_1)

    def coord(self, subset) -> Fraction:
        return self.coords.get(tuple(sorted(subset)), Fraction(0))

    def signed_coord(self, tup: tuple) -> Fraction:
        sign, key = sort_sign(tup)
        if sign == 0:
            return Fraction(0)
        return sign * self.coords.get(key, Fraction(0))

    def as_list(self) -> list:
        return [self.coord(J) for J in self.subsets()]

    def canonical(self) -> "PluckerVector":
        """Integer-cleared representative, first nonzero coordinate positive."""
        vals = self.as_list()
        den = 1
        for c in vals:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [c * den for c in vals]
        g = 0
        for c in ints:
            g = gcd(g, int(c))
        lead = next(c for c in ints if c != 0)
        scale = Fraction(den, g if lead > 0 else -g)
        return PluckerVector(
            self.d_plus_1,
            self.v,
            {J: c * scale for J, c in zip(self.subsets(), vals)},
        )

    def projectively_equal(self, other: "PluckerVector") -> bool:
        if (self.d_plus_1, self.v) != (other.d_plus_1, other.v):
            return False
        return self.canonical().coords == other.canonical().coords

    def to_json(self) -> dict:
        out = {}
        for J in self.subsets():
            c = self.coord(J)
            if c:
                key = "".join(map(str, J)) if all(i <= 9 for i in J) else ",".join(map(str, J))
                out[key] = str(c)
        return out

    @classmethod
    def from_json(cls, d_plus_1: int, v: int, data: dict) -> "PluckerVector":
        coords = {}
        for key, val in data.items():
            idx = tuple(int(t) for t in key.split(",")) if "," in key else tuple(
                int(ch) for ch in key
            )
            coords[tuple(sorted(idx))] = Fraction(val)
        return cls(d_plus_1, v, coords)


@dataclass
class SignConvention:
    """Per-subset orientation signs (default +1) composed with sort parity."""

    delta_J: dict = field(default_factory=dict)

    def delta(self, vertex: int, basis: tuple) -> int:
        sign, key = sort_sign(tuple(basis) + (vertex,))
        if sign == 0:
            return 0
        return sign * self.delta_J.get(key, 1)


def plucker(X) -> PluckerVector:
    """Pluecker vector of a v x (d+1) exact matrix (all maximal minors)."""
    rows = [[Fraction(x) for x in r] for r in X]
    v = len(rows)
    if v == 0:
        raise ShapeError("empty matrix")
    d1 = len(rows[0])
    if v < d1:
        raise ShapeError(f"need at least {d1} rows, got {v}")
    coords = {}
    for J in colex_subsets(v, d1):
        coords[J] = bareiss_det([rows[i - 1] for i in J])
    if all(c == 0 for c in coords.values()):
        raise RankError(f"matrix has rank < {d1}; Pluecker vector is zero")
    return PluckerVector(d1, v, coords)


class PluckerRing:
    """Polynomial ring on Pluecker variables in colex order."""

    def __init__(self, d_plus_1: int, v: int):
        self.d_plus_1 = d_plus_1
        self.v = v
        self.subsets = colex_subsets(v, d_plus_1)
        self.names = tuple(subset_var_name(J) for J in self.subsets)
        self.ring = Ring(self.names)
        self.index_of = {J: i for i, J in enumerate(self.subsets)}

    def var(self, subset: tuple) -> Polynomial:
        return self.ring.var(subset_var_name(tuple(sorted(subset))))

    def signed_var(self, tup: tuple) -> Polynomial:
        sign, key = sort_sign(tup)
        if sign == 0:
            return self.ring.zero()
        p = self.var(key)
        return p if sign > 0 else -p

    def point_values(self, p: PluckerVector) -> dict:
        return {name: p.coord(J) for name, J in zip(self.names, self.subsets)}


def plucker_ideal_generators(pring: PluckerRing) -> list:
    """Quadratic exchange relations, deduplicated, zero relations removed."""
    d1, v = pring.d_plus_1, pring.v
    if d1 < 2 or d1 >= v:
        return []
    gens = []
    seen = set()
    for A in combinations(range(1, v + 1), d1 - 1):
        for B in combinations(range(1, v + 1), d1 + 1):
            poly = pring.ring.zero()
            for t, b in enumerate(B):
                first = pring.signed_var(A + (b,))
                rest = pring.signed_var(tuple(x for x in B if x != b))
                term = first * rest
                poly = poly + (term if t % 2 == 0 else -term)
            if poly.is_zero():
                continue
            poly = poly.primitive()
            key = frozenset(poly.terms.items())
            if key not in seen:
                seen.add(key)
                gens.append(poly)
    return gens


def plucker_ideal(d_plus_1: int, v: int, limits=DEFAULT_LIMITS) -> Ideal:
    pring = PluckerRing(d_plus_1, v)
    return Ideal(pring.ring, plucker_ideal_generators(pring), limits=limits)


def check_plucker_relations(p: PluckerVector) -> bool:
    pring = PluckerRing(p.d_plus_1, p.v)
    values = pring.point_values(p)
    return all(
        g.evaluate(values) == 0 for g in plucker_ideal_generators(pring)
    )


def _sign_normalize_columns_poly(rows: list, ring: Ring) -> list:
    """Flip each column so its first nonzero entry has positive lead coeff."""
    if not rows:
        return rows
    ncols = len(rows[0])
    out = [list(r) for r in rows]
    for j in range(ncols):
        for i in range(len(rows)):
            e = out[i][j]
            if not e.is_zero():
                _, lc = e.leading_term()
                if lc < 0:
                    for k in range(len(rows)):
                        out[k][j] = -out[k][j]
                break
    return out


def _sign_normalize_columns_frac(rows: list) -> list:
    if not rows:
        return rows
    ncols = len(rows[0])
    out = [list(r) for r in rows]
    for j in range(ncols):
        for i in range(len(rows)):
            if out[i][j] != 0:
                if out[i][j] < 0:
                    for k in range(len(rows)):
                        out[k][j] = -out[k][j]
                break
    return out


def grv_symbolic(
    cone: AbstractCone,
    bases: FacetBasisChoice = None,
    pring: PluckerRing = None,
    signs: SignConvention = None,
    normalize_columns=True,
) -> SymbolicSlackMatrix:
    """Symbolic slack matrix filled with signed Pluecker variables."""
    bases = bases or choose_facet_bases(cone)
    pring = pring or PluckerRing(cone.d + 1, cone.v)
    signs = signs or SignConvention()
    rows = []
    for i in range(1, cone.v + 1):
        row = []
        for j in range(cone.f):
            J = bases.basis(j)
            if i in J:
                row.append(pring.ring.zero())
            else:
                delta = signs.delta(i, J)
                var = pring.var(tuple(sorted(J + (i,))))
                row.append(var * delta)
        rows.append(row)
    if normalize_columns:
        rows = _sign_normalize_columns_poly(rows, pring.ring)
    return SymbolicSlackMatrix(cone=cone, ring=pring.ring, entries=rows)


def grv(
    p: PluckerVector,
    cone: AbstractCone,
    bases: FacetBasisChoice = None,
    signs: SignConvention = None,
    normalize_columns=True,
) -> NumericSlackMatrix:
    """Numeric slack-variety point filled from a Pluecker vector."""
    if (p.d_plus_1, p.v) != (cone.d + 1, cone.v):
        raise ShapeError(
            f"Pluecker vector is for ({p.d_plus_1},{p.v}), cone wants ({cone.d+1},{cone.v})"
        )
    bases = bases or choose_facet_bases(cone)
    signs = signs or SignConvention()
    rows = []
    for i in range(1, cone.v + 1):
        row = []
        for j in range(cone.f):
            J = bases.basis(j)
            if i in cone.facets[j]:
                row.append(Fraction(0))
            else:
                delta = signs.delta(i, J)
                row.append(delta * p.coord(tuple(sorted(J + (i,)))))
        rows.append(row)
    for j in range(cone.f):
        if all(rows[i][j] == 0 for i in range(cone.v)):
            raise InvalidBasisError(
                f"facet {j}: chosen basis {bases.basis(j)} is dependent at this point "
                "(its slack column vanishes identically)"
            )
    if normalize_columns:
        rows = _sign_normalize_columns_frac(rows)
    return NumericSlackMatrix(cone=cone, entries=rows)


def vgr(S: NumericSlackMatrix) -> PluckerVector:
    """Column space of a slack-variety point as a canonical Pluecker vector."""
    d1 = S.cone.d + 1
    red, pivots = rref([list(r) for r in S.entries])
    if len(pivots) != d1:
        raise RankError(f"slack matrix has rank {len(pivots)}, expected {d1}")
    basis_cols = [[row[j] for j in pivots] for row in S.entries]
    return plucker(basis_cols).canonical()


def grr(p: PluckerVector) -> list:
    """A v x (d+1) matrix whose Pluecker vector is projectively p.

    Uses the colex-least nonzero coordinate J0: entry (i, k) is the signed
    coordinate of J0 with its k-th element replaced by i, so the rows J0
    form p_{J0} times the identity.
    """
    if not check_plucker_relations(p):
        raise NotASubspaceError("coordinates violate the quadratic Pluecker relations")
    J0 = next(J for J in p.subsets() if p.coord(J) != 0)
    rows = []
    for i in range(1, p.v + 1):
        row = []
        for k in range(p.d_plus_1):
            tup = J0[:k] + (i,) + J0[k + 1:]
            row.append(p.signed_coord(tup))
        rows.append(row)
    return rows


def gr_cone_ideal(
    cone: AbstractCone,
    bases: FacetBasisChoice = None,
    pring: PluckerRing = None,
    limits=DEFAULT_LIMITS,
) -> Ideal:
    """Pluecker ideal plus vanishing facet-subset variables, saturated by the
    product of the facet-extension variables."""
    bases = bases or choose_facet_bases(cone)
    pring = pring or PluckerRing(cone.d + 1, cone.v)
    extensions, contained = facet_extensions(cone, bases)
    gens = plucker_ideal_generators(pring)
    gens += [pring.var(J) for J in sorted(contained, key=colex_key)]
    ideal = Ideal(pring.ring, gens, limits=limits)
    ext_vars = [pring.ring.index[subset_var_name(J)] for J in sorted(extensions, key=colex_key)]
    return saturate_by_variables(ideal, ext_vars)


def section_ideal(
    cone: AbstractCone,
    bases: FacetBasisChoice = None,
    limits=DEFAULT_LIMITS,
) -> Ideal:
    """Eliminate all Pluecker variables outside the facet extensions."""
    bases = bases or choose_facet_bases(cone)
    pring = PluckerRing(cone.d + 1, cone.v)
    gr = gr_cone_ideal(cone, bases, pring, limits=limits)
    extensions, _ = facet_extensions(cone, bases)
    keep = {pring.ring.index[subset_var_name(J)] for J in extensions}
    drop = set(range(pring.ring.nvars)) - keep
    return eliminate(gr, drop)


def substituted_slack_ideal(
    cone: AbstractCone,
    bases: FacetBasisChoice = None,
    limits=DEFAULT_LIMITS,
):
    """Slack ideal of the GrV-identified slack matrix mapped into Pluecker
    variables; reports containment in the section ideal and strictness.

    Returns (substituted ideal, identified symbolic matrix, containment,
    strict).
    """
    from .slack import slack_ideal, symbolic_slack

    bases = bases or choose_facet_bases(cone)
    pring = PluckerRing(cone.d + 1, cone.v)
    sym = grv_symbolic(cone, bases, pring)
    base = symbolic_slack(cone)

    # identify slack variables carrying the same signed Pluecker entry
    rep: dict = {}
    subst_to_p: dict = {}
    identify: dict = {}
    for i in range(cone.v):
        for j in range(cone.f):
            e = sym.entries[i][j]
            if e.is_zero():
                continue
            key = frozenset(e.terms.items())
            slack_var = base.entries[i][j]
            if slack_var.is_zero():
                continue  # symbolic GrV may be nonzero where incidence forces zero
            name = base.ring.vars[next(iter(slack_var.terms)).index(1)]
            if key in rep:
                identify[name] = rep[key]
            else:
                rep[key] = name
                subst_to_p[name] = e
    rows = []
    for i in range(cone.v):
        row = []
        for j in range(cone.f):
            e = base.entries[i][j]
            if e.is_zero():
                row.append(e)
            else:
                name = base.ring.vars[next(iter(e.terms)).index(1)]
                row.append(base.ring.var(identify.get(name, name)))
        rows.append(row)
    identified = SymbolicSlackMatrix(cone=cone, ring=base.ring, entries=rows)
    ideal_x = slack_ideal(identified, limits=limits)

    # map into the Pluecker ring
    subst = {name: poly for name, poly in subst_to_p.items()}
    gens_p = []
    for g in ideal_x.generators:
        acc = pring.ring.zero()
        for mono, coeff in g.terms.items():
            term = pring.ring.const(coeff)
            for vi, e in enumerate(mono):
                if e:
                    term = term * subst[base.ring.vars[vi]] ** e
            acc = acc + term
        gens_p.append(acc.primitive())
    ideal_p = Ideal(pring.ring, gens_p, limits=limits)

    sect = section_ideal(cone, bases, limits=limits)
    containment = all(sect.contains(g) for g in ideal_p.generators)
    strict = containment and not all(ideal_p.contains(g) for g in sect.generators)
    return ideal_p, identified, containment, strict
