"""
Projective state spaces PG(N-1, q), dual bases and the PG(3,2) incidence structure.
"""
import logging
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from string import ascii_lowercase
from typing import Dict, List, Sequence, Tuple

from fields.services import FieldSpec, field_for_order

logger = logging.getLogger(__name__)

Vec = Tuple[int, ...]

# Conventional label order for the one-particle spaces, as field element indices.
# GF(4) indices: 2 = ω, 3 = ω².  GF(5) indices: 3 = -2, 4 = -1.
NAMED_STATES = {
    2: (("a", (1, 0)), ("b", (0, 1)), ("c", (1, 1))),
    3: (("a", (1, 0)), ("b", (0, 1)), ("c", (2, 1)), ("d", (1, 1))),
    4: (("a", (1, 0)), ("b", (0, 1)), ("c", (2, 1)), ("d", (3, 1)), ("e", (1, 1))),
    5: (("a", (1, 0)), ("b", (0, 1)), ("c", (2, 1)), ("d", (4, 1)), ("e", (3, 1)), ("f", (1, 1))),
}

# PG(3,2): the nine product states followed by the singlet, triplet and doublet.
PG32_CATALOG = (
    ("aa", (1, 0, 0, 0)), ("ab", (0, 1, 0, 0)), ("ac", (1, 1, 0, 0)),
    ("ba", (0, 0, 1, 0)), ("bb", (0, 0, 0, 1)), ("bc", (0, 0, 1, 1)),
    ("ca", (1, 0, 1, 0)), ("cb", (0, 1, 0, 1)), ("cc", (1, 1, 1, 1)),
    ("S", (0, 1, 1, 0)),
    ("(ab)", (1, 0, 0, 1)), ("(bc)", (1, 1, 1, 0)), ("(ca)", (0, 1, 1, 1)),
    ("(abc)", (1, 1, 0, 1)), ("(acb)", (1, 0, 1, 1)),
)

DUAL_MARK = "̄"


class GeometryError(ValueError):
    """Raised for dimension mismatches and unsupported (q, N) combinations."""


class UnknownLabel(KeyError):
    """Raised when a state, dual or observable label does not exist."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown label"


@dataclass(frozen=True)
class ProjPoint:
    label: str
    rep: Vec
    orbit: Tuple[Vec, ...]


@dataclass(frozen=True)
class DualPoint:
    label: str
    rep: Vec
    state_label: str


@dataclass(frozen=True)
class IncidenceLine:
    labels: Tuple[str, str, str]

    def __contains__(self, label):
        return label in self.labels


@dataclass(frozen=True)
class Plane:
    functional: Vec
    labels: Tuple[str, ...]


@dataclass(frozen=True)
class GridReport:
    grid_lines: Tuple[IncidenceLine, ...]
    rows: Tuple[IncidenceLine, ...]
    columns: Tuple[IncidenceLine, ...]
    is_grid: bool
    decompositions: Dict[str, Tuple[Tuple[str, str, str], ...]]
    all_transversal: bool
    max_grid_lines_per_plane: int

    @property
    def non_planar(self) -> bool:
        return self.max_grid_lines_per_plane < 3


def canonicalize(field: FieldSpec, vec: Sequence[int]) -> Vec:
    """
    Scale a nonzero vector so that its last nonzero coordinate is 1.
    """
    for x in reversed(vec):
        if x:
            return field.scale(field.inv(x), vec)
    raise GeometryError("The zero vector is not a projective point")


def coordinate_label(field: FieldSpec, vec: Sequence[int]) -> str:
    return "[" + ",".join(field.name(x) for x in vec) + "]"


def _canonical_reps(field: FieldSpec, N: int) -> List[Vec]:
    reps = []
    for vec in product(field.elements, repeat=N):
        nonzero = [x for x in vec if x]
        if nonzero and nonzero[-1] == 1:
            reps.append(vec)
    return reps


def _make_point(field: FieldSpec, label: str, rep: Vec) -> ProjPoint:
    return ProjPoint(label=label, rep=rep, orbit=tuple(field.scale(k, rep) for k in field.nonzero))


def enumerate_states(field: FieldSpec, N: int) -> List[ProjPoint]:
    """
    All (q^N - 1)/(q - 1) projective points of GF(q)^N, labeled.

    The named catalogs fix labels and order for N = 2, q <= 5 and for
    N = 4, q = 2; elsewhere points come in lexicographic order of their
    canonical representatives, lettered for N = 2 and coordinate-labeled
    otherwise.
    """
    if N < 2:
        raise GeometryError(f"N = {N}: a state space needs at least two levels")

    reps = _canonical_reps(field, N)
    if N == 2 and field.q in NAMED_STATES:
        catalog = NAMED_STATES[field.q]
    elif N == 4 and field.q == 2:
        catalog = PG32_CATALOG
    elif N == 2 and len(reps) <= len(ascii_lowercase):
        catalog = tuple(zip(ascii_lowercase, reps))
    else:
        catalog = tuple((coordinate_label(field, rep), rep) for rep in reps)

    if sorted(rep for _, rep in catalog) != sorted(reps):
        raise GeometryError(f"Label catalog for GF({field.q})^{N} does not cover PG({N - 1},{field.q})")
    return [_make_point(field, label, rep) for label, rep in catalog]


def derive_dual_basis(field: FieldSpec, states: Sequence[ProjPoint]) -> List[DualPoint]:
    """
    For each state r = [x, y] the dual r̄ = [y, -x], which annihilates r and
    no other projective point.
    """
    duals = []
    for state in states:
        if len(state.rep) != 2:
            raise GeometryError("Dual bases are defined for two-level states only")
        x, y = state.rep
        duals.append(DualPoint(label=state.label + DUAL_MARK, rep=(y, field.neg(x)), state_label=state.label))
    return duals


def bracket(field: FieldSpec, dual: Sequence[int], state: Sequence[int]) -> int:
    """Field-valued pairing ⟨dual|state⟩."""
    if len(dual) != len(state):
        raise GeometryError(f"Cannot pair a {len(dual)}-component dual with a {len(state)}-component state")
    return field.dot(dual, state)


def action_table(field: FieldSpec, duals: Sequence[DualPoint], states: Sequence[ProjPoint]) -> List[List[int]]:
    """Matrix of brackets ⟨r̄|s⟩, rows indexed by duals."""
    return [[bracket(field, d.rep, s.rep) for s in states] for d in duals]


@dataclass(frozen=True)
class ProjectiveSpace:
    """
    A labeled PG(N-1, q) with label and coordinate lookups.
    """
    field: FieldSpec
    N: int
    points: Tuple[ProjPoint, ...]
    _by_label: Dict[str, int] = dc_field(init=False, repr=False, compare=False)
    _by_rep: Dict[Vec, int] = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_by_label', {p.label: i for i, p in enumerate(self.points)})
        object.__setattr__(self, '_by_rep', {p.rep: i for i, p in enumerate(self.points)})

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def labels(self) -> List[str]:
        return [p.label for p in self.points]

    def index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise UnknownLabel(f"No state '{label}' in PG({self.N - 1},{self.q})") from None

    def point(self, label: str) -> ProjPoint:
        return self.points[self.index(label)]

    def locate(self, vec: Sequence[int]) -> ProjPoint:
        """The labeled point a nonzero vector represents."""
        return self.points[self._by_rep[canonicalize(self.field, vec)]]

    @property
    def duals(self) -> List[DualPoint]:
        return derive_dual_basis(self.field, self.points)


@lru_cache(maxsize=None)
def projective_space(q: int, N: int = 2) -> ProjectiveSpace:
    field = field_for_order(q)
    space = ProjectiveSpace(field=field, N=N, points=tuple(enumerate_states(field, N)))
    logger.info(f"Enumerated {len(space.points)} states of PG({N - 1},{q})")
    return space


def _require_pg32(space: ProjectiveSpace):
    if space.q != 2 or space.N != 4:
        raise GeometryError(f"Incidence structure is only tabulated for PG(3,2), not PG({space.N - 1},{space.q})")


def _vector_sum(field: FieldSpec, vecs) -> Vec:
    total = (0,) * len(vecs[0])
    for v in vecs:
        total = tuple(field.add(a, b) for a, b in zip(total, v))
    return total


def enumerate_lines(space: ProjectiveSpace) -> List[IncidenceLine]:
    """All triples of PG(3,2) points whose representatives add up to zero."""
    _require_pg32(space)
    lines = []
    for triple in combinations(space.points, 3):
        if not any(_vector_sum(space.field, [p.rep for p in triple])):
            lines.append(IncidenceLine(tuple(p.label for p in triple)))
    return lines


def enumerate_planes(space: ProjectiveSpace, lines: Sequence[IncidenceLine]) -> Tuple[List[Plane], Dict[IncidenceLine, int]]:
    """
    Planes of PG(3,2) as kernels of the nonzero functionals, with the number
    of planes through each line.
    """
    _require_pg32(space)
    planes = []
    for functional in _canonical_reps(space.field, space.N):
        members = tuple(p.label for p in space.points if bracket(space.field, functional, p.rep) == 0)
        planes.append(Plane(functional=functional, labels=members))
    memberships = {
        line: sum(1 for plane in planes if set(line.labels) <= set(plane.labels))
        for line in lines
    }
    return planes, memberships


def is_product_label(label: str) -> bool:
    return len(label) == 2 and label.isalpha()


def product_grid_check(space: ProjectiveSpace, lines: Sequence[IncidenceLine]) -> GridReport:
    """
    Check that the nine product states form a 3×3 grid of six lines and
    decompose every entangled state into grid points.
    """
    _require_pg32(space)
    products = [p for p in space.points if is_product_label(p.label)]
    letters = sorted({p.label[0] for p in products})

    grid_lines = tuple(line for line in lines if all(is_product_label(lbl) for lbl in line.labels))
    rows = tuple(l for l in grid_lines if len({lbl[0] for lbl in l.labels}) == 1)
    columns = tuple(l for l in grid_lines if len({lbl[1] for lbl in l.labels}) == 1)
    is_grid = (
        len(grid_lines) == 6
        and len(rows) == len(letters) == len(columns)
        and set(rows) | set(columns) == set(grid_lines)
    )

    decompositions = {}
    all_transversal = True
    for target in space.points:
        if is_product_label(target.label):
            continue
        found = []
        for triple in combinations(products, 3):
            if _vector_sum(space.field, [p.rep for p in triple]) != target.rep:
                continue
            labels = tuple(p.label for p in triple)
            if len({lbl[0] for lbl in labels}) == 3 and len({lbl[1] for lbl in labels}) == 3:
                found.append(labels)
        decompositions[target.label] = tuple(found)
        all_transversal = all_transversal and bool(found)

    planes, _ = enumerate_planes(space, lines)
    max_per_plane = max(
        sum(1 for line in grid_lines if set(line.labels) <= set(plane.labels))
        for plane in planes
    )
    report = GridReport(
        grid_lines=grid_lines,
        rows=rows,
        columns=columns,
        is_grid=is_grid,
        decompositions=decompositions,
        all_transversal=all_transversal,
        max_grid_lines_per_plane=max_per_plane,
    )
    if not (report.is_grid and report.all_transversal):
        raise GeometryError("Product states of PG(3,2) do not form the expected grid")
    return report


def states_report(q: int, N: int = 2) -> dict:
    """Body of the ``states`` report."""
    space = projective_space(q, N)
    field = space.field
    body = {
        'q': q,
        'n_levels': N,
        'state_count': len(space.points),
        'rows': [
            {'label': p.label, 'coords': [field.name(x) for x in p.rep], 'orbit_size': len(p.orbit)}
            for p in space.points
        ],
    }
    if N == 2:
        duals = space.duals
        table = action_table(field, duals, space.points)
        body['duals'] = [{'label': d.label, 'coords': [field.name(x) for x in d.rep]} for d in duals]
        body['action'] = [
            {'dual': d.label, 'values': [field.name(v) for v in row]}
            for d, row in zip(duals, table)
        ]
    return body


def geometry_report(q: int) -> dict:
    """Body of the ``geometry`` report (PG(3,2) only)."""
    space = projective_space(q, 4)
    lines = enumerate_lines(space)
    planes, memberships = enumerate_planes(space, lines)
    grid = product_grid_check(space, lines)
    lines_per_point = {lbl: sum(1 for line in lines if lbl in line) for lbl in space.labels}
    points_per_plane = {len(plane.labels) for plane in planes}
    return {
        'q': q,
        'point_count': len(space.points),
        'line_count': len(lines),
        'lines_per_point': sorted(set(lines_per_point.values())),
        'plane_count': len(planes),
        'points_per_plane': sorted(points_per_plane),
        'planes_per_line': sorted(set(memberships.values())),
        'grid': {
            'grid_lines': [list(l.labels) for l in grid.grid_lines],
            'is_grid': grid.is_grid,
            'all_transversal': grid.all_transversal,
            'non_planar': grid.non_planar,
            'max_grid_lines_per_plane': grid.max_grid_lines_per_plane,
        },
        'rows': [
            {'state': label, 'decompositions': [" + ".join(d) for d in decs]}
            for label, decs in grid.decompositions.items()
        ],
    }
