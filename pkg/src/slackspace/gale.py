"""Generalized Gale transforms and the dual Grassmannian correspondence.

A Gale transform of a slack-variety point S is a full-rank v x (v-d-1)
matrix B with B^T S = 0.  Gale transforms are matrices (no normalization of
the vectors); the kernel basis is deterministic via reduced echelon form
with free rows in increasing index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import AbstractCone, FacetBasisChoice, facet_extensions
from .errors import RankError
from .grassmann import PluckerVector, grv, plucker, sort_sign
from .linalg import left_kernel_basis, rank, transpose
from .slack import NumericSlackMatrix


@dataclass
class GaleConfiguration:
    """Rows are the Gale vectors b_1..b_v in dimension v-d-1."""

    cone: AbstractCone
    B: list  # v rows, each of length v-d-1

    @property
    def shape(self):
        return (len(self.B), len(self.B[0]) if self.B and self.B[0] else 0)

    def is_empty(self) -> bool:
        return self.shape[1] == 0

    def vector_sum(self) -> list:
        _, k = self.shape
        return [sum(row[j] for row in self.B) for j in range(k)] if k else []


def gale_transform(S: NumericSlackMatrix) -> GaleConfiguration:
    """Deterministic left-kernel basis of the slack matrix, as columns of B."""
    cone = S.cone
    d1 = cone.d + 1
    r = rank(S.entries)
    if r != d1:
        raise RankError(f"slack matrix has rank {r}, expected {d1}")
    kernel = left_kernel_basis(S.entries)  # each vector: length v
    B = transpose(kernel) if kernel else [[] for _ in range(cone.v)]
    return GaleConfiguration(cone=cone, B=B)


def is_polytopal_gale(G: GaleConfiguration) -> bool:
    """True iff the Gale vectors sum to zero (all-ones in the column space
    of the source slack matrix)."""
    return all(s == 0 for s in G.vector_sum())


def dual_plucker(p: PluckerVector) -> PluckerVector:
    """Coordinates on complements with the shuffle permutation sign."""
    v = p.v
    full = tuple(range(1, v + 1))
    coords = {}
    for J in p.subsets():
        comp = tuple(i for i in full if i not in J)
        sign, _ = sort_sign(J + comp)
        coords[comp] = sign * p.coord(J)
    return PluckerVector(v - p.d_plus_1, v, coords)


def gale_plucker(G: GaleConfiguration) -> PluckerVector:
    """Pluecker vector of the Gale configuration (point of the dual side)."""
    if G.is_empty():
        raise RankError("empty Gale configuration has no Pluecker vector")
    return plucker(G.B)


def slack_from_gale(
    G: GaleConfiguration,
    bases: FacetBasisChoice = None,
) -> NumericSlackMatrix:
    """Fill a slack matrix from Gale data without reconstructing a subspace:
    grv of the dual Pluecker vector of the configuration."""
    cone = G.cone
    if G.is_empty():
        # simplex: identity-pattern slack matrix reproduced directly
        rows = [
            [Fraction(0) if cone.incident(i + 1, j) else Fraction(1) for j in range(cone.f)]
            for i in range(cone.v)
        ]
        return NumericSlackMatrix(cone=cone, entries=rows)
    k = G.shape[1]
    if rank(G.B) != k:
        raise RankError(f"Gale matrix has rank < {k}")
    q = dual_plucker(plucker(G.B))
    return grv(q, cone, bases)


def dual_gr_membership(p_dual: PluckerVector, cone: AbstractCone,
                       bases: FacetBasisChoice = None) -> bool:
    """Zero/nonzero pattern test for the dual Grassmannian of the cone."""
    if (p_dual.d_plus_1, p_dual.v) != (cone.v - cone.d - 1, cone.v):
        return False
    extensions, contained = facet_extensions(cone, bases)
    full = tuple(range(1, cone.v + 1))
    for J in contained:
        comp = tuple(i for i in full if i not in J)
        if p_dual.coord(comp) != 0:
            return False
    for J in extensions:
        comp = tuple(i for i in full if i not in J)
        if p_dual.coord(comp) == 0:
            return False
    return True


def gale_of_configuration_membership(G: GaleConfiguration,
                                     bases: FacetBasisChoice = None) -> bool:
    return dual_gr_membership(gale_plucker(G), G.cone, bases)
