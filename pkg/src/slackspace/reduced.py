"""Reduced slack matrices, column/row reconstruction, and realizability checks.

A reduced slack matrix keeps only the columns of a facet set F that contains
a flag while every excluded facet is simplicial.  Excluded columns are
refilled with signed spanning minors over a flag column set; excluded rows
(super-reduction) are refilled from the left kernel of the zero-column
submatrix, introducing one fresh parameter per kernel dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .certificates import NonrealizabilityCertificate, PositivityConstraintSet
from .cones import (
    AbstractCone,
    Flag,
    flag_in,
    super_reduction_rows,
    violated_reduction_condition,
)
from .errors import (
    InvalidFlagError,
    RankError,
    ReconstructionImpossibleError,
    ReductionError,
)
from .groebner import DEFAULT_LIMITS
from .ideals import Ideal, saturate
from .linalg import det_symbolic, minors, poly_matrix_rank
from .poly import Polynomial, Ring
from .slack import SymbolicSlackMatrix, scale_to_ones, symbolic_slack
from .grassmann import sort_sign, _sign_normalize_columns_poly


PARAMETER_PREFIXES = ("y", "z", "u", "w", "s", "r", "q", "o", "n", "m")


@dataclass
class ReducedSlackMatrix:
    """Column submatrix of the symbolic slack matrix on facet set F."""

    cone: AbstractCone
    columns: tuple  # facet positions, increasing
    ring: Ring
    entries: list  # rows over row_labels
    row_labels: tuple  # vertex labels (1-based), increasing
    flag: Flag
    ones: frozenset = frozenset()

    @property
    def shape(self):
        return (len(self.entries), len(self.columns))

    def label_to_row(self) -> dict:
        return {lab: i for i, lab in enumerate(self.row_labels)}

    def column_position(self, facet_pos: int) -> int:
        return self.columns.index(facet_pos)

    def variables(self) -> list:
        used = set()
        for row in self.entries:
            for e in row:
                used |= e.variables()
        return [self.ring.vars[i] for i in sorted(used)]

    def as_symbolic(self) -> SymbolicSlackMatrix:
        return SymbolicSlackMatrix(
            cone=self.cone, ring=self.ring, entries=self.entries, ones=self.ones
        )

    def to_text_rows(self) -> list:
        return [[e.text() for e in row] for row in self.entries]


def reduce_matrix(cone: AbstractCone, facet_subset, base: SymbolicSlackMatrix = None) -> ReducedSlackMatrix:
    """Column submatrix on F; variable numbering inherited from the full
    symbolic slack matrix, ring restricted to the variables that survive."""
    columns = tuple(sorted(set(facet_subset)))
    why = violated_reduction_condition(cone, columns)
    if why:
        raise ReductionError(f"invalid reduction: {why}")
    base = base or symbolic_slack(cone)
    flag = flag_in(cone, columns)
    used = set()
    for i in range(cone.v):
        for j in columns:
            used |= base.entries[i][j].variables()
    sub = Ring(tuple(base.ring.vars[k] for k in sorted(used)))
    entries = [
        [base.entries[i][j].rename_ring(sub) for j in columns] for i in range(cone.v)
    ]
    return ReducedSlackMatrix(
        cone=cone,
        columns=columns,
        ring=sub,
        entries=entries,
        row_labels=tuple(range(1, cone.v + 1)),
        flag=flag,
    )


def scale_reduced(red: ReducedSlackMatrix, override=None) -> ReducedSlackMatrix:
    """Scale v+|F|-1 entries to one along a spanning tree (or an override)."""
    scaled, norm = scale_to_ones(red.as_symbolic(), override=override)
    return ReducedSlackMatrix(
        cone=red.cone,
        columns=red.columns,
        ring=red.ring,
        entries=scaled.entries,
        row_labels=red.row_labels,
        flag=red.flag,
        ones=red.ones | norm.positions,
    )


def reduced_slack_ideal(red: ReducedSlackMatrix, limits=DEFAULT_LIMITS) -> Ideal:
    """Slack ideal of the reduced matrix: (d+2)-minors saturated by the
    product of the surviving variables."""
    from .ideals import saturate_by_variables

    k = red.cone.d + 2
    v, f = red.shape
    if k > v or k > f:
        return Ideal(red.ring, [], limits=limits)
    gens = [p for (_i, p) in minors(red.entries, k) if not p.is_zero()]
    used = set()
    for g in gens:
        used |= g.variables()
    return saturate_by_variables(Ideal(red.ring, gens, limits=limits), sorted(used))


def _flag_columns_or_default(red: ReducedSlackMatrix, flag_cols) -> tuple:
    if flag_cols is None:
        return tuple(sorted(set(red.flag.facets)))
    flag_cols = tuple(sorted(set(flag_cols)))
    if not set(flag_cols) <= set(red.columns):
        raise InvalidFlagError(f"flag columns {flag_cols} not within {red.columns}")
    if len(flag_cols) != red.cone.d + 1:
        raise InvalidFlagError(
            f"need {red.cone.d + 1} flag columns, got {len(flag_cols)}"
        )
    return flag_cols


def _flag_basis_matrix(red: ReducedSlackMatrix, flag_cols: tuple) -> list:
    pos = [red.column_position(j) for j in flag_cols]
    X = [[row[p] for p in pos] for row in red.entries]
    flag = flag_in(red.cone, flag_cols)
    l2r = red.label_to_row()
    if not all(lab in l2r for lab in flag.vertices):
        raise InvalidFlagError("flag vertices missing from the reduced matrix rows")
    sub = [
        [X[l2r[lab]][k] for k in range(len(flag_cols))] for lab in flag.vertices
    ]
    if det_symbolic(sub).is_zero():
        raise InvalidFlagError("flag spanning minor is identically zero")
    return X


def reconstruct_columns(
    red: ReducedSlackMatrix, flag_cols=None, normalize_columns=True
):
    """Fill every missing simplicial-facet column with signed spanning minors.

    Returns (full entries over all cone facets, fills) where fills maps
    (vertex label, facet position) to the filling polynomial.
    """
    cone = red.cone
    flag_cols = _flag_columns_or_default(red, flag_cols)
    X = _flag_basis_matrix(red, flag_cols)
    l2r = red.label_to_row()
    missing = [j for j in range(cone.f) if j not in red.columns]
    fills = {}
    full_cols = {}
    for j in red.columns:
        p = red.column_position(j)
        full_cols[j] = [row[p] for row in red.entries]
    for j in missing:
        G = tuple(sorted(cone.facets[j]))
        if any(lab not in l2r for lab in G):
            raise InvalidFlagError(
                f"facet {j} touches rows missing from the reduced matrix"
            )
        col = []
        for lab in red.row_labels:
            if lab in cone.facets[j]:
                col.append(red.ring.zero())
                continue
            sign, T = sort_sign(G + (lab,))
            sub = [X[l2r[t]] for t in T]
            val = det_symbolic(sub) * sign
            col.append(val)
        if normalize_columns:
            col = [c[0] for c in _sign_normalize_columns_poly([[e] for e in col], red.ring)]
        for lab, e in zip(red.row_labels, col):
            if lab not in cone.facets[j]:
                fills[(lab, j)] = e
        full_cols[j] = col
    full = [
        [full_cols[j][i] for j in range(cone.f)] for i in range(len(red.row_labels))
    ]
    return full, fills


@dataclass
class KFIdeal:
    """Principal ideal generated by the product of the filling minors.

    The factors are kept unexpanded; saturation works factor by factor.
    """

    ring: Ring
    factors: list  # (position, Polynomial)
    zero_factors: list = field(default_factory=list)

    def factor_polys(self) -> list:
        return [p for _pos, p in self.factors]

    def generator(self) -> Polynomial:
        if self.zero_factors:
            return self.ring.zero()
        g = self.ring.one()
        for _pos, p in self.factors:
            g = g * p
        return g

    def as_ideal(self, limits=DEFAULT_LIMITS) -> Ideal:
        return Ideal(self.ring, [self.generator()], limits=limits)


def kf_ideal(red: ReducedSlackMatrix, flag_cols=None) -> KFIdeal:
    _, fills = reconstruct_columns(red, flag_cols)
    factors = []
    zeros = []
    for pos in sorted(fills):
        p = fills[pos]
        if p.is_zero():
            zeros.append(pos)
        else:
            factors.append((pos, p))
    return KFIdeal(ring=red.ring, factors=factors, zero_factors=zeros)


def projection_closure_test(I_F: Ideal, K_F: KFIdeal):
    """Compare saturate(I_F, gen(K_F)) with I_F.

    Returns (status, saturated ideal, certificate-or-None) where status is
    "saturation-stable" or "drops-components"; a trivial saturation yields a
    non-realizability certificate carrying the responsible factor.
    """
    if K_F.zero_factors:
        return "drops-components", Ideal(I_F.ring, [I_F.ring.one()]), None
    current = I_F
    seen = set()
    for pos, factor in K_F.factors:
        key = frozenset(factor.primitive().terms.items())
        if key in seen:
            continue
        seen.add(key)
        current = saturate(current, factor)
        if current.is_trivial():
            cert = NonrealizabilityCertificate(
                kind="trivial-saturated-ideal",
                witness={
                    "polynomial": factor.text(),
                    "position": list(pos),
                    "ideal": [g.text() for g in I_F.generators],
                },
            )
            return "drops-components", current, cert
    status = "saturation-stable" if current.equals(I_F) else "drops-components"
    return status, current, None


def super_reduce(red: ReducedSlackMatrix, retain=None, scale_override=None):
    """Drop removable rows and scale; returns (scaled S_G, dropped labels)."""
    removed, retained = super_reduction_rows(red.cone, red.columns, retain=retain)
    l2r = red.label_to_row()
    entries = [list(red.entries[l2r[lab]]) for lab in retained]
    sg = ReducedSlackMatrix(
        cone=red.cone,
        columns=red.columns,
        ring=red.ring,
        entries=entries,
        row_labels=tuple(retained),
        flag=red.flag,
        ones=red.ones,
    )
    sg = scale_reduced(sg, override=scale_override)
    return sg, tuple(removed)


def _cramer_vectors(M: list, ring: Ring) -> list:
    """Left-kernel candidates of an m x k polynomial matrix via Laplace:
    for each (k+1)-subset T of rows, the vector of signed k-minors."""
    m = len(M)
    k = len(M[0]) if M else 0
    out = []
    for T in combinations(range(m), k + 1):
        vec = [ring.zero()] * m
        nonzero = False
        for pos, t in enumerate(T):
            rows = [M[i] for i in T if i != t]
            val = det_symbolic(rows) if k else ring.one()
            if pos % 2 == 1:
                val = -val
            if not val.is_zero():
                nonzero = True
            vec[t] = val
        if nonzero:
            out.append(vec)
    return out


def _primitive_row(row: list) -> list:
    from math import gcd as _gcd

    mono = None
    for e in row:
        if e.is_zero():
            continue
        mc = e.monomial_content()
        mono = mc if mono is None else tuple(min(a, b) for a, b in zip(mono, mc))
    out = [e.div_monomial(mono) if (mono and not e.is_zero()) else e for e in row]
    num, den = 0, 1
    for e in out:
        for c in e.terms.values():
            num = _gcd(num, c.numerator)
            den = den * c.denominator // _gcd(den, c.denominator)
    if num == 0:
        return out
    scale = Fraction(den, num)
    first = next(e for e in out if not e.is_zero())
    _, lc = first.leading_term()
    if lc * scale < 0:
        scale = -scale
    return [e * scale for e in out]


def reconstruct_rows(sg: ReducedSlackMatrix, dropped_labels, parameters=True,
                     row_basis=None):
    """Fill each dropped row from the left kernel of its zero-column block.

    The kernel lives in the row space of a flag-spanning (d+1)-row basis of
    the reduced matrix (lex-least by default, ``row_basis`` pins a choice;
    different valid choices agree only modulo the slack ideal of S_G).  Row
    families are parametrized by fresh variables (one prefix per dropped
    row, in row order); a one-dimensional family uses the canonical
    representative instead of a parameter.  Returns the assembled reduced
    matrix over all rows plus a map of the added parameters.
    """
    from .cones import _pattern_has_flag

    cone = sg.cone
    d1 = cone.d + 1
    if row_basis is not None:
        basis_rows = tuple(sorted(row_basis))
        if len(basis_rows) != d1 or not set(basis_rows) <= set(sg.row_labels):
            raise ReconstructionImpossibleError(
                f"row basis {basis_rows} is not a {d1}-subset of the matrix rows"
            )
        if not _pattern_has_flag(cone, basis_rows, sg.columns):
            raise ReconstructionImpossibleError(
                f"row basis {basis_rows} does not span a flag"
            )
    else:
        basis_rows = None
        for R in combinations(sg.row_labels, d1):
            if _pattern_has_flag(cone, R, sg.columns):
                basis_rows = R
                break
        if basis_rows is None:
            raise ReconstructionImpossibleError("no flag-spanning row basis in S_G")
    l2r = sg.label_to_row()
    Y = [sg.entries[l2r[lab]] for lab in basis_rows]

    families = []
    for lab in sorted(dropped_labels):
        zero_cols = [
            sg.column_position(j) for j in sg.columns if lab in cone.facets[j]
        ]
        k = len(zero_cols)
        if k > cone.d:
            raise ReconstructionImpossibleError(
                f"row {lab} has {k} > d zeros; not reconstructible from the kernel"
            )
        M = [[row[c] for c in zero_cols] for row in Y]
        if k and poly_matrix_rank(M, cap=k) < k:
            raise RankError(f"zero-column block of row {lab} has rank below {k}")
        target_dim = d1 - k
        basis = []
        for vec in _cramer_vectors(M, sg.ring) if k else [[sg.ring.one()] + [sg.ring.zero()] * (d1 - 1)]:
            w = [
                sum((vec[t] * Y[t][c] for t in range(d1)), sg.ring.zero())
                for c in range(len(sg.columns))
            ]
            if all(e.is_zero() for e in w):
                continue
            w = _primitive_row(w)
            if poly_matrix_rank(basis + [w]) > len(basis):
                basis.append(w)
            if len(basis) == target_dim:
                break
        if not basis:
            raise ReconstructionImpossibleError(f"kernel for row {lab} is zero")
        families.append((lab, basis))

    # extend the ring with parameters for families of dimension >= 2
    param_names = []
    for idx, (lab, basis) in enumerate(families):
        if len(basis) >= 2 and parameters:
            prefix = PARAMETER_PREFIXES[idx % len(PARAMETER_PREFIXES)]
            param_names.extend(f"{prefix}_{t}" for t in range(len(basis)))
    ext = sg.ring.extend(param_names) if param_names else sg.ring
    params_used = {}
    rows_out = {}
    pcursor = 0
    for idx, (lab, basis) in enumerate(families):
        if len(basis) == 1 or not parameters:
            rows_out[lab] = [e.rename_ring(ext) for e in basis[0]]
            params_used[lab] = ()
        else:
            names = param_names[pcursor: pcursor + len(basis)]
            pcursor += len(basis)
            row = [ext.zero() for _ in sg.columns]
            for t, w in enumerate(basis):
                pv = ext.var(names[t])
                row = [acc + pv * e.rename_ring(ext) for acc, e in zip(row, w)]
            rows_out[lab] = row
            params_used[lab] = tuple(names)

    all_labels = sorted(set(sg.row_labels) | set(dropped_labels))
    entries = []
    for lab in all_labels:
        if lab in rows_out:
            entries.append(rows_out[lab])
        else:
            entries.append([e.rename_ring(ext) for e in sg.entries[l2r[lab]]])
    assembled = ReducedSlackMatrix(
        cone=cone,
        columns=sg.columns,
        ring=ext,
        entries=entries,
        row_labels=tuple(all_labels),
        flag=sg.flag,
        ones=sg.ones,
    )
    return assembled, params_used


def detect_extra_zeros(entries: list, cone: AbstractCone, ideal: Ideal = None) -> list:
    """Positions required nonzero whose entry is identically zero (or reduces
    to zero modulo the given ideal)."""
    certs = []
    for i in range(cone.v):
        for j in range(cone.f):
            if cone.incident(i + 1, j):
                continue
            e = entries[i][j]
            if e.is_zero():
                certs.append(
                    NonrealizabilityCertificate(
                        kind="extra-zero",
                        witness={
                            "position": [i + 1, j],
                            "mode": "syntactic",
                            "normal_form": "0",
                        },
                    )
                )
            elif ideal is not None and ideal.reduce(e).is_zero():
                certs.append(
                    NonrealizabilityCertificate(
                        kind="extra-zero",
                        witness={
                            "position": [i + 1, j],
                            "mode": "modulo-ideal",
                            "normal_form": "0",
                            "entry": e.text(),
                        },
                    )
                )
    return certs


def _strip_positive_content(p: Polynomial) -> Polynomial:
    """Divide by the monomial content and positive rational content only."""
    out = p.div_monomial(p.monomial_content())
    c = out.content()
    return out * (1 / c) if c not in (0, 1) else out


def sign_normalize(entries: list, cone: AbstractCone, ring: Ring):
    """Fixed-point column sign resolution via monomial entries.

    Returns (column signs, constraint set, contradiction certificates,
    unresolved column list).  Free variables are taken strictly positive, so
    a single-term entry fixes its column's sign; remaining entries of signed
    columns become strict-positivity constraints (monomial content divided
    out).  Conflicting monomial signs yield an immediate certificate.
    """
    signs = {}
    unresolved = []
    constraints = PositivityConstraintSet(ring=ring)
    certs = []
    for j in range(cone.f):
        mono_signs = {}
        for i in range(cone.v):
            if cone.incident(i + 1, j):
                continue
            e = entries[i][j]
            if e.is_zero():
                continue
            if e.is_monomial():
                c = next(iter(e.terms.values()))
                mono_signs[i] = 1 if c > 0 else -1
        if not mono_signs:
            signs[j] = None
            unresolved.append(j)
            continue
        values = set(mono_signs.values())
        if len(values) > 1:
            rows = sorted(mono_signs)
            certs.append(
                NonrealizabilityCertificate(
                    kind="sign-contradiction",
                    witness={
                        "facet": j,
                        "detail": "monomial entries force opposite column signs",
                        "rows": [r + 1 for r in rows],
                        "entries": [entries[r][j].text() for r in rows],
                    },
                )
            )
            signs[j] = None
            continue
        sigma = values.pop()
        signs[j] = sigma
        for i in range(cone.v):
            if cone.incident(i + 1, j):
                continue
            e = entries[i][j]
            if e.is_zero() or e.is_monomial():
                continue
            constraints.add(_strip_positive_content(e * sigma), (i + 1, j))
    return signs, constraints, certs, unresolved
