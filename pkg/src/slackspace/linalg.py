"""Exact linear algebra over the rationals and symbolic determinants.

Numeric matrices are plain lists of lists of ``Fraction``.  Symbolic
determinants work on square lists of lists of ``Polynomial`` and expand by
cofactors along the sparsest row or column, memoizing on index subsets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import ShapeError
from .poly import Polynomial, Ring


def frac_matrix(rows) -> list:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> list:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list:
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a) -> list:
    return [list(row) for row in zip(*a)]


def bareiss_det(rows) -> Fraction:
    """Fraction-free Bareiss determinant of a square rational matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    if not rows:
        return [], []
    m = [[Fraction(x) for x in row] for row in rows]
    ncols = ncols if ncols is not None else len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def kernel_basis(rows, ncols: int) -> list:
    """Basis of {x : M x = 0}, free columns in increasing index order.

    Each basis vector has a 1 at its free column.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def left_kernel_basis(rows) -> list:
    """Basis of {v : v^T M = 0} with free rows in increasing index order."""
    return kernel_basis(transpose(rows), len(rows))


def solve(rows, rhs):
    """One exact solution of M x = rhs, or None if inconsistent."""
    if not rows:
        return []
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug, len(rows[0]))
    ncols = len(rows[0])
    for row in red:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def in_column_space(rows, target) -> bool:
    """True iff target is an exact linear combination of the columns."""
    return solve(rows, target) is not None


# -- symbolic (polynomial-entry) matrices ------------------------------------


def _order_rows_cols(matrix, row_idx, col_idx):
    support_rows = []
    for i in row_idx:
        support_rows.append(sum(1 for j in col_idx if not matrix[i][j].is_zero()))
    return support_rows


def det_symbolic(matrix) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Expands by cofactors along the sparsest row or column at each level and
    memoizes submatrix determinants on (row subset, column subset).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ShapeError("determinant of a non-square matrix")
    ring = _common_ring(matrix)
    if n == 0:
        return ring.one()

    memo: dict = {}

    def rec(rows: tuple, cols: tuple) -> Polynomial:
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        # pick sparsest line to expand along
        best_row, best_row_cnt = None, None
        for ri, i in enumerate(rows):
            cnt = sum(1 for j in cols if not matrix[i][j].is_zero())
            if best_row_cnt is None or cnt < best_row_cnt:
                best_row, best_row_cnt = ri, cnt
        best_col, best_col_cnt = None, None
        for cj, j in enumerate(cols):
            cnt = sum(1 for i in rows if not matrix[i][j].is_zero())
            if best_col_cnt is None or cnt < best_col_cnt:
                best_col, best_col_cnt = cj, cnt
        total = ring.zero()
        if best_row_cnt <= best_col_cnt:
            ri, i = best_row, rows[best_row]
            sub_rows = rows[:ri] + rows[ri + 1:]
            for cj, j in enumerate(cols):
                e = matrix[i][j]
                if e.is_zero():
                    continue
                minor = rec(sub_rows, cols[:cj] + cols[cj + 1:])
                term = e * minor
                total = total + (term if (ri + cj) % 2 == 0 else -term)
        else:
            cj, j = best_col, cols[best_col]
            sub_cols = cols[:cj] + cols[cj + 1:]
            for ri, i in enumerate(rows):
                e = matrix[i][j]
                if e.is_zero():
                    continue
                minor = rec(rows[:ri] + rows[ri + 1:], sub_cols)
                term = e * minor
                total = total + (term if (ri + cj) % 2 == 0 else -term)
        memo[key] = total
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def _common_ring(matrix) -> Ring:
    for row in matrix:
        for e in row:
            if isinstance(e, Polynomial):
                return e.ring
    raise ValueError("matrix has no polynomial entries")


def generic_rank(support_rows: list, support_cols_count: int) -> int:
    """Maximum matching size of the bipartite support (generic rank).

    ``support_rows[i]`` is an iterable of column indices with nonzero entry.
    """
    match_col = [-1] * support_cols_count

    def augment(i, seen):
        for j in support_rows[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_col[j] == -1 or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    size = 0
    for i in range(len(support_rows)):
        if augment(i, set()):
            size += 1
    return size


def has_generic_rank(matrix, rows, cols, k) -> bool:
    """True iff the submatrix support admits a k-matching."""
    supp = [[cj for cj, j in enumerate(cols) if not matrix[i][j].is_zero()] for i in rows]
    return generic_rank(supp, len(cols)) >= k


def minors(matrix, k: int, skip_zero_support=True):
    """All k x k minors with their index sets, colexicographic in (rows, cols).

    Returns a list of ((row_tuple, col_tuple), Polynomial).  Minors whose
    support cannot admit a k-matching are identically zero and reported as
    such without expansion when ``skip_zero_support``.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    if k > nrows or k > ncols:
        raise ShapeError(f"{k}x{k} minors of a {nrows}x{ncols} matrix")
    ring = _common_ring(matrix)
    out = []
    colex = lambda subset: tuple(reversed(subset))
    row_sets = sorted(combinations(range(nrows), k), key=colex)
    col_sets = sorted(combinations(range(ncols), k), key=colex)
    for cols in col_sets:
        for rows in row_sets:
            if skip_zero_support and not has_generic_rank(matrix, rows, cols, k):
                out.append(((rows, cols), ring.zero()))
                continue
            sub = [[matrix[i][j] for j in cols] for i in rows]
            out.append(((rows, cols), det_symbolic(sub)))
    return out


def poly_exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact quotient a/b of polynomials; raises if division is not exact."""
    from .orders import DEGREVLEX, mono_div, mono_divides

    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    q = ring.zero()
    rem = a
    blm, blc = b.leading_term(DEGREVLEX)
    while not rem.is_zero():
        rlm, rlc = rem.leading_term(DEGREVLEX)
        if not mono_divides(blm, rlm):
            raise ArithmeticError("polynomial division is not exact")
        t = ring.monomial(mono_div(rlm, blm), rlc / blc)
        q = q + t
        rem = rem - b * t
    return q


def poly_matrix_rank(rows: list, cap=None) -> int:
    """Rank over the rational function field of a small polynomial matrix.

    Searches for a nonzero r x r minor, largest r first; ``cap`` bounds the
    search.  Intended for the small kernel/flag matrices of this package.
    """
    from itertools import combinations as _comb

    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    top = min(nrows, ncols) if cap is None else min(nrows, ncols, cap)
    for r in range(top, 0, -1):
        for ri in _comb(range(nrows), r):
            if not has_generic_rank(rows, ri, tuple(range(ncols)), r):
                continue
            for ci in _comb(range(ncols), r):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if not det_symbolic(sub).is_zero():
                    return r
    return 0
