"""Slack matrices, symbolic slack matrices, slack ideals, and scalings.

The symbolic slack matrix of a cone puts a fresh variable x_k at every
non-incidence, numbered row-major over the support.  The slack ideal is the
ideal of (d+2)-minors saturated with respect to the product of all entry
variables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .cones import AbstractCone
from .errors import CannotNormalizeError, ShapeError
from .groebner import DEFAULT_LIMITS
from .ideals import Ideal, saturate_by_variables
from .linalg import in_column_space, mat_mul, minors, rank
from .poly import Polynomial, Ring


@dataclass
class SymbolicSlackMatrix:
    """v x f matrix of zeros and polynomials over the cone's entry ring."""

    cone: AbstractCone
    ring: Ring
    entries: list  # list of rows of Polynomial
    ones: frozenset = frozenset()  # positions scaled to 1

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def entry(self, i, j) -> Polynomial:
        return self.entries[i][j]

    def variable_positions(self) -> dict:
        """Map variable name -> (row, col) for single-variable entries."""
        out = {}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if not e.is_zero() and e.is_monomial() and e.total_degree() == 1:
                    ((mono, c),) = e.terms.items()
                    if c == 1:
                        out[self.ring.vars[mono.index(1)]] = (i, j)
        return out

    def variables(self) -> list:
        """Names of variables appearing anywhere in the matrix."""
        used = set()
        for row in self.entries:
            for e in row:
                used |= e.variables()
        return [self.ring.vars[i] for i in sorted(used)]

    def substitute_ones(self, positions) -> "SymbolicSlackMatrix":
        """Set the entry at each position to 1 (entry must be a variable)."""
        positions = frozenset(tuple(p) for p in positions)
        repl = {}
        for (i, j) in positions:
            e = self.entries[i][j]
            if e.is_zero() or not (e.is_monomial() and e.total_degree() == 1):
                raise CannotNormalizeError(
                    f"position ({i},{j}) is not a single-variable entry"
                )
            ((mono, _),) = e.terms.items()
            repl[mono.index(1)] = 1
        rows = [[e.substitute(repl) for e in row] for row in self.entries]
        return SymbolicSlackMatrix(
            cone=self.cone, ring=self.ring, entries=rows, ones=self.ones | positions
        )

    def column_submatrix(self, cols) -> list:
        return [[row[j] for j in cols] for row in self.entries]

    def to_text_rows(self) -> list:
        return [[e.text() for e in row] for row in self.entries]


@dataclass
class NumericSlackMatrix:
    """v x f matrix of exact rationals tied to a cone."""

    cone: AbstractCone
    entries: list  # rows of Fraction

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def column(self, j) -> list:
        return [row[j] for row in self.entries]

    def rank(self) -> int:
        return rank(self.entries)

    def scale_columns(self, scalars) -> "NumericSlackMatrix":
        return NumericSlackMatrix(
            self.cone,
            [[e * s for e, s in zip(row, scalars)] for row in self.entries],
        )

    def scale_rows(self, scalars) -> "NumericSlackMatrix":
        return NumericSlackMatrix(
            self.cone,
            [[e * s for e in row] for row, s in zip(self.entries, scalars)],
        )


@dataclass
class ScalingNormalization:
    """Positions set to 1: a spanning tree of the bipartite support graph."""

    positions: frozenset

    def count(self) -> int:
        return len(self.positions)


@dataclass
class SlackVerdict:
    support_ok: bool
    rank_ok: bool
    nonnegative_ok: bool
    ones_in_column_space: bool = None  # only checked in polytope mode

    def ok(self, polytope_mode=False) -> bool:
        base = self.support_ok and self.rank_ok and self.nonnegative_ok
        if polytope_mode:
            return base and bool(self.ones_in_column_space)
        return base

    def failures(self) -> list:
        out = []
        if not self.support_ok:
            out.append("support")
        if not self.rank_ok:
            out.append("rank")
        if not self.nonnegative_ok:
            out.append("nonnegativity")
        if self.ones_in_column_space is False:
            out.append("ones-in-column-space")
        return out


def symbolic_slack(cone: AbstractCone, var_prefix="x") -> SymbolicSlackMatrix:
    """Pairwise-distinct variables at non-incidences, numbered row-major."""
    support = cone.support()
    names = tuple(f"{var_prefix}_{k}" for k in range(1, len(support) + 1))
    ring = Ring(names)
    rows = [[ring.zero() for _ in range(cone.f)] for _ in range(cone.v)]
    for k, (i, j) in enumerate(support):
        rows[i][j] = ring.var(names[k])
    return SymbolicSlackMatrix(cone=cone, ring=ring, entries=rows)


def slack_from_VH(cone: AbstractCone, vertices, W, w) -> NumericSlackMatrix:
    """S[i][j] = w_j - W_j . q_i exactly."""
    v = len(vertices)
    f = len(W)
    if len(w) != f:
        raise ShapeError("w and W have different lengths")
    if v != cone.v or f != cone.f:
        raise ShapeError(
            f"V/H data is {v} vertices x {f} inequalities, cone wants {cone.v}x{cone.f}"
        )
    rows = []
    for q in vertices:
        q = [Fraction(x) for x in q]
        row = []
        for Wj, wj in zip(W, w):
            row.append(Fraction(wj) - sum(Fraction(a) * b for a, b in zip(Wj, q)))
        rows.append(row)
    return NumericSlackMatrix(cone=cone, entries=rows)


def slack_from_cone(cone: AbstractCone, R, B) -> NumericSlackMatrix:
    """Exact product of a ray matrix R (v x d+1) and facet normals B (d+1 x f)."""
    if len(R) != cone.v or (R and len(R[0]) != cone.d + 1):
        raise ShapeError("ray matrix has wrong shape")
    if len(B) != cone.d + 1 or (B and len(B[0]) != cone.f):
        raise ShapeError("facet-normal matrix has wrong shape")
    rows = mat_mul([[Fraction(x) for x in row] for row in R],
                   [[Fraction(x) for x in row] for row in B])
    return NumericSlackMatrix(cone=cone, entries=rows)


def scale_to_ones(
    S: SymbolicSlackMatrix, override=None
) -> tuple:
    """Set v+f-1 variables to 1 along a spanning tree of the support graph.

    Default tree: breadth-first from row 0 with increasing-index tie-break.
    ``override`` pins an explicit position set, validated to be a tree.
    """
    v, f = S.shape
    support = [
        (i, j)
        for i in range(v)
        for j in range(f)
        if not S.entries[i][j].is_zero()
    ]
    adj_row = {i: [] for i in range(v)}
    adj_col = {j: [] for j in range(f)}
    for (i, j) in support:
        adj_row[i].append(j)
        adj_col[j].append(i)

    if override is not None:
        positions = sorted(tuple(p) for p in override)
        if len(positions) != v + f - 1:
            raise CannotNormalizeError(
                f"override has {len(positions)} positions, expected v+f-1={v+f-1}"
            )
        support_set = set(support)
        if any(p not in support_set for p in positions):
            raise CannotNormalizeError("override positions must lie on the support")
        # spanning tree check: connected and acyclic on rows+cols
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        for (i, j) in positions:
            a, b = find(("r", i)), find(("c", j))
            if a == b:
                raise CannotNormalizeError("override positions contain a cycle")
            parent[a] = b
        roots = {find(("r", i)) for i in range(v)} | {find(("c", j)) for j in range(f)}
        if len(roots) != 1:
            raise CannotNormalizeError("override positions do not span rows and columns")
        chosen = positions
    else:
        seen_rows = {0}
        seen_cols = set()
        chosen = []
        queue = deque([("r", 0)])
        while queue:
            kind, idx = queue.popleft()
            if kind == "r":
                for j in sorted(adj_row[idx]):
                    if j not in seen_cols:
                        seen_cols.add(j)
                        chosen.append((idx, j))
                        queue.append(("c", j))
            else:
                for i in sorted(adj_col[idx]):
                    if i not in seen_rows:
                        seen_rows.add(i)
                        chosen.append((i, idx))
                        queue.append(("r", i))
        if len(seen_rows) != v or len(seen_cols) != f:
            raise CannotNormalizeError("support bipartite graph is disconnected")

    scaled = S.substitute_ones(chosen)
    return scaled, ScalingNormalization(positions=frozenset(chosen))


def slack_ideal(
    S: SymbolicSlackMatrix,
    norm: ScalingNormalization = None,
    limits=DEFAULT_LIMITS,
) -> Ideal:
    """Ideal of (d+2)-minors saturated by the product of all entry variables.

    With ``norm``, the normalization is substituted first and the ideal lives
    in the surviving variables.
    """
    if norm is not None:
        S = S.substitute_ones(norm.positions)
    d = S.cone.d
    k = d + 2
    v, f = S.shape
    if k > v or k > f:
        # no (d+2)-minors: the zero ideal
        return Ideal(S.ring, [], limits=limits)
    gens = [p for (_idx, p) in minors(S.entries, k) if not p.is_zero()]
    used = set()
    for g in gens:
        used |= g.variables()
    ideal = Ideal(S.ring, gens, limits=limits)
    return saturate_by_variables(ideal, sorted(used))


def is_slack_matrix(S: NumericSlackMatrix, polytope_mode=False) -> SlackVerdict:
    """Support, exact rank d+1, strict positivity on support; in polytope
    mode additionally the all-ones vector in the column space."""
    cone = S.cone
    support_ok = True
    nonneg_ok = True
    for i in range(cone.v):
        for j in range(cone.f):
            val = S.entries[i][j]
            if cone.incident(i + 1, j):
                if val != 0:
                    support_ok = False
            else:
                if val == 0:
                    support_ok = False
                if val < 0:
                    nonneg_ok = False
    rank_ok = S.rank() == cone.d + 1
    ones = None
    if polytope_mode:
        ones = in_column_space(S.entries, [Fraction(1)] * cone.v)
    return SlackVerdict(
        support_ok=support_ok,
        rank_ok=rank_ok,
        nonnegative_ok=nonneg_ok,
        ones_in_column_space=ones,
    )
