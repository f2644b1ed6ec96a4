"""Abstract cones/polytopes as labeled vertex-facet incidences.

Vertices are labeled 1..v (JSON uses 1-based labels); facets are stored in
the given order and addressed by 0-based position.  A *flag* is an ordered
tuple of d+1 facets and d+1 vertices where vertex i lies on facets 1..i-1
and off facet i, so the corresponding slack submatrix is triangular with a
symbolically nonzero diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidBasisError, NotFlagConnectedError


@dataclass(frozen=True)
class AbstractCone:
    """Combinatorial type: dimension d (cone dimension d+1), v labeled
    extreme rays, facets as vertex subsets."""

    d: int
    v: int
    facets: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(frozenset(f) for f in self.facets))

    @property
    def f(self) -> int:
        return len(self.facets)

    def incident(self, vertex: int, facet_index: int) -> bool:
        return vertex in self.facets[facet_index]

    def vertex_facets(self, vertex: int) -> list:
        return [j for j, F in enumerate(self.facets) if vertex in F]

    def support(self) -> list:
        """Nonzero positions of the slack matrix: (row, col) 0-based."""
        return [
            (i, j)
            for i in range(self.v)
            for j in range(self.f)
            if (i + 1) not in self.facets[j]
        ]

    def is_simplicial_facet(self, facet_index: int) -> bool:
        return len(self.facets[facet_index]) == self.d

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "v": self.v,
            "facets": [sorted(F) for F in self.facets],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AbstractCone":
        return cls(
            d=data["d"],
            v=data["v"],
            facets=tuple(tuple(F) for F in data["facets"]),
            label=data.get("label", ""),
        )


@dataclass(frozen=True)
class Flag:
    """Ordered facet positions and vertex labels with triangular incidence."""

    facets: tuple  # d+1 facet positions (0-based)
    vertices: tuple  # d+1 vertex labels (1-based)


@dataclass
class FacetBasisChoice:
    """Per facet: an ordered d-subset of its vertices, ascending."""

    bases: dict = field(default_factory=dict)  # facet position -> tuple of vertices

    def basis(self, facet_index: int) -> tuple:
        return self.bases[facet_index]


@dataclass
class Diagnostics:
    problems: list = field(default_factory=list)

    def ok(self) -> bool:
        return not self.problems

    def add(self, kind: str, detail: str):
        self.problems.append({"kind": kind, "detail": detail})


def validate(cone: AbstractCone) -> Diagnostics:
    """Structural admissibility checks (not a realizability test)."""
    diag = Diagnostics()
    if cone.d < 1:
        diag.add("dimension", f"d must be positive, got {cone.d}")
    if cone.v < cone.d + 1:
        diag.add("vertex-count", f"need at least d+1={cone.d+1} vertices, got {cone.v}")
    for j, F in enumerate(cone.facets):
        if len(F) < cone.d:
            diag.add("facet-size", f"facet {j} has {len(F)} < d={cone.d} vertices")
        bad = [x for x in F if not (1 <= x <= cone.v)]
        if bad:
            diag.add("vertex-range", f"facet {j} contains out-of-range labels {bad}")
    for j, F in enumerate(cone.facets):
        for k, G in enumerate(cone.facets):
            if j != k and F < G:
                diag.add("antichain", f"facet {j} is strictly contained in facet {k}")
    covered = set().union(*cone.facets) if cone.facets else set()
    missing = [i for i in range(1, cone.v + 1) if i not in covered]
    if missing:
        diag.add("coverage", f"vertices {missing} lie on no facet")
    return diag


def flag_in(cone: AbstractCone, facet_subset=None) -> Flag:
    """Lexicographically least flag, optionally restricted to given facets.

    Search is over ordered facet tuples in lex order; for a feasible facet
    tuple each vertex slot takes its least candidate independently.
    """
    pool = sorted(facet_subset) if facet_subset is not None else list(range(cone.f))
    need = cone.d + 1
    all_vertices = frozenset(range(1, cone.v + 1))

    def extend(chosen: list, current: frozenset):
        if len(chosen) == need:
            return tuple(chosen)
        for j in pool:
            if j in chosen:
                continue
            if not (current - cone.facets[j]):
                continue
            got = extend(chosen + [j], current & cone.facets[j])
            if got is not None:
                return got
        return None

    found = extend([], all_vertices)
    if found is None:
        raise NotFlagConnectedError(
            f"no flag exists within facets {pool} of cone {cone.label or '?'}"
        )
    vertices = []
    current = all_vertices
    for j in found:
        vertices.append(min(current - cone.facets[j]))
        current &= cone.facets[j]
    return Flag(facets=found, vertices=tuple(vertices))


def find_flag(cone: AbstractCone) -> Flag:
    return flag_in(cone)


def has_flag(cone: AbstractCone, facet_subset=None) -> bool:
    try:
        flag_in(cone, facet_subset)
        return True
    except NotFlagConnectedError:
        return False


def choose_facet_bases(cone: AbstractCone, override: dict = None) -> FacetBasisChoice:
    """Default basis is the lex-least d-subset of each facet; overrides are
    checked for shape but independence is only verifiable numerically."""
    override = override or {}
    bases = {}
    for j, F in enumerate(cone.facets):
        if j in override:
            J = tuple(sorted(override[j]))
            if len(J) != cone.d or not set(J) <= F:
                raise InvalidBasisError(
                    f"override {J} for facet {j} is not a {cone.d}-subset of {sorted(F)}"
                )
            bases[j] = J
        else:
            bases[j] = tuple(sorted(F)[: cone.d])
    return FacetBasisChoice(bases=bases)


def facet_extensions(cone: AbstractCone, bases: FacetBasisChoice = None):
    """(extensions, contained): the (d+1)-subsets J_F + one off-facet vertex,
    and the (d+1)-subsets inside some facet."""
    bases = bases or choose_facet_bases(cone)
    extensions = set()
    for j, F in enumerate(cone.facets):
        J = bases.basis(j)
        for i in range(1, cone.v + 1):
            if i not in F:
                extensions.add(tuple(sorted(J + (i,))))
    contained = set()
    for F in cone.facets:
        if len(F) >= cone.d + 1:
            for sub in combinations(sorted(F), cone.d + 1):
                contained.add(tuple(sub))
    return extensions, contained


def is_valid_reduction(cone: AbstractCone, facet_subset) -> bool:
    """True iff the subset contains a flag and all excluded facets are
    simplicial (exactly d vertices)."""
    facet_subset = sorted(set(facet_subset))
    if not facet_subset:
        return False
    outside = [j for j in range(cone.f) if j not in facet_subset]
    if any(len(cone.facets[j]) != cone.d for j in outside):
        return False
    return has_flag(cone, facet_subset)


def violated_reduction_condition(cone: AbstractCone, facet_subset) -> str:
    """Name the first violated reduction condition, or empty string."""
    facet_subset = sorted(set(facet_subset))
    if not facet_subset:
        return "empty facet subset"
    outside = [j for j in range(cone.f) if j not in facet_subset]
    bad = [j for j in outside if len(cone.facets[j]) != cone.d]
    if bad:
        return f"excluded facets {bad} are not simplicial"
    if not has_flag(cone, facet_subset):
        return "facet subset contains no flag"
    return ""


def super_reduction_rows(
    cone: AbstractCone,
    facet_subset,
    retain=None,
) -> tuple:
    """Rows to drop from the reduced matrix, and the rows retained.

    A row is removable when it has at most d zeros, those zero columns have
    full generic rank within the remaining rows, and the remaining rows
    still contain a flag and have generic rank d+1.  Default is greedy
    removal by increasing row index; ``retain`` pins an explicit retained
    set instead (validated against the same conditions).
    """
    facet_subset = sorted(set(facet_subset))
    zero_cols = {
        i: [j for j in facet_subset if cone.incident(i + 1, j)] for i in range(cone.v)
    }

    def valid_state(remaining: list, removed: list) -> bool:
        if len(remaining) < cone.d + 1:
            return False
        sub_vertices = [i + 1 for i in remaining]
        if not _pattern_has_flag(cone, sub_vertices, facet_subset):
            return False
        if _generic_rank_rows(cone, remaining, facet_subset) < cone.d + 1:
            return False
        for r in removed:
            cols = zero_cols[r]
            if len(cols) > cone.d:
                return False
            if _generic_rank_cols(cone, remaining, cols) < len(cols):
                return False
        return True

    if retain is not None:
        remaining = sorted({r - 1 for r in retain})
        removed = [i for i in range(cone.v) if i not in remaining]
        if not valid_state(remaining, removed):
            raise NotFlagConnectedError(
                f"retained rows {sorted(retain)} do not admit a valid super-reduction"
            )
        return [i + 1 for i in removed], [i + 1 for i in remaining]

    removed: list = []
    remaining = list(range(cone.v))
    for i in range(cone.v):
        if len(zero_cols[i]) > cone.d:
            continue
        trial_remaining = [r for r in remaining if r != i]
        if valid_state(trial_remaining, removed + [i]):
            remaining = trial_remaining
            removed.append(i)
    return [i + 1 for i in removed], [i + 1 for i in remaining]


def _pattern_has_flag(cone: AbstractCone, vertices, facet_subset) -> bool:
    """Flag search restricted to given vertex labels and facet positions."""
    need = cone.d + 1
    vset = frozenset(vertices)

    def extend(chosen, current):
        if len(chosen) == need:
            return True
        for j in facet_subset:
            if j in chosen:
                continue
            if not (current - cone.facets[j]):
                continue
            if extend(chosen + [j], current & cone.facets[j]):
                return True
        return False

    return extend([], vset)


def _generic_rank_rows(cone: AbstractCone, rows, cols) -> int:
    from .linalg import generic_rank

    supp = [
        [cj for cj, j in enumerate(cols) if not cone.incident(i + 1, j)] for i in rows
    ]
    return generic_rank(supp, len(cols))


def _generic_rank_cols(cone: AbstractCone, rows, cols) -> int:
    return _generic_rank_rows(cone, rows, cols) if cols else 0
