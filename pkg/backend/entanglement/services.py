"""
Two-particle states of GF(q)^2 ⊗ GF(q)^2.

Coordinates are particle-1-major: index 2i + j holds the amplitude of
basis vector i of particle 1 times basis vector j of particle 2, so a state
reshapes to the 2×2 matrix Ψ with rows indexed by particle 1.
"""
import logging
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from sympy.combinatorics import Permutation

from fields.services import FieldSpec
from geometry.services import (
    GeometryError, ProjectiveSpace, ProjPoint, UnknownLabel, Vec, canonicalize, coordinate_label,
    projective_space,
)
from symmetry.services import Matrix, mat_det, mat_mul, mat_transpose, pgl_group

logger = logging.getLogger(__name__)

SINGLET_FORMS = (("ab", "ba"), ("bc", "cb"), ("ca", "ac"), ("aa", "bb", "cc"))


@dataclass(frozen=True)
class TwoState:
    label: str
    coords: Vec
    entangled: bool

    def matrix(self) -> Matrix:
        return to_matrix(self.coords)


@dataclass(frozen=True)
class MultipletCatalog:
    product: Tuple[TwoState, ...]
    singlet: TwoState
    triplet: Tuple[TwoState, ...]
    doublet: Tuple[TwoState, ...]


def to_matrix(coords: Sequence[int]) -> Matrix:
    return ((coords[0], coords[1]), (coords[2], coords[3]))


def from_matrix(m: Matrix) -> Vec:
    return (m[0][0], m[0][1], m[1][0], m[1][1])


def kron(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(field.mul(a, b) for a in u for b in v)


def is_entangled(field: FieldSpec, coords: Sequence[int]) -> bool:
    """A two-particle vector is entangled iff its 2×2 reshape is invertible."""
    return mat_det(field, to_matrix(coords)) != 0


def is_product_by_search(one: ProjectiveSpace, coords: Sequence[int]) -> bool:
    """Exhaustive check for a factorization s1 ⊗ s2 up to scale."""
    target = canonicalize(one.field, coords)
    return any(
        canonicalize(one.field, kron(one.field, s1.rep, s2.rep)) == target
        for s1, s2 in product(one.points, repeat=2)
    )


@dataclass(frozen=True)
class TwoStateSpace:
    """
    All projective two-particle states: products labeled 'rs' first, then the
    entangled states.
    """
    one: ProjectiveSpace
    states: Tuple[TwoState, ...]
    _by_label: Dict[str, int] = dc_field(init=False, repr=False, compare=False)
    _by_rep: Dict[Vec, int] = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_by_label', {s.label: i for i, s in enumerate(self.states)})
        object.__setattr__(self, '_by_rep', {s.coords: i for i, s in enumerate(self.states)})

    @property
    def field(self) -> FieldSpec:
        return self.one.field

    @property
    def q(self) -> int:
        return self.one.q

    @property
    def entangled(self) -> List[TwoState]:
        return [s for s in self.states if s.entangled]

    @property
    def products(self) -> List[TwoState]:
        return [s for s in self.states if not s.entangled]

    def index(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise UnknownLabel(f"No two-particle state '{label}' for q = {self.q}") from None

    def state(self, label: str) -> TwoState:
        return self.states[self.index(label)]

    def locate(self, vec: Sequence[int]) -> TwoState:
        return self.states[self._by_rep[canonicalize(self.field, vec)]]


def tensor(field: FieldSpec, s1: ProjPoint, s2: ProjPoint) -> Vec:
    """Kronecker product of two one-particle states, canonicalized."""
    return canonicalize(field, kron(field, s1.rep, s2.rep))


def enumerate_two_states(q: int) -> List[TwoState]:
    one = projective_space(q, 2)
    field = one.field
    if q == 2:
        return [TwoState(p.label, p.rep, is_entangled(field, p.rep)) for p in projective_space(2, 4).points]

    products = [
        TwoState(s1.label + s2.label, tensor(field, s1, s2), False)
        for s1, s2 in product(one.points, repeat=2)
    ]
    taken = {s.coords for s in products}
    entangled = [
        TwoState(coordinate_label(field, p.rep), p.rep, True)
        for p in projective_space(q, 4).points
        if p.rep not in taken
    ]
    for state in entangled:
        if not is_entangled(field, state.coords):
            raise GeometryError(f"{state.label} is neither a listed product nor entangled")
    return products + entangled


@lru_cache(maxsize=None)
def two_state_space(q: int) -> TwoStateSpace:
    space = TwoStateSpace(one=projective_space(q, 2), states=tuple(enumerate_two_states(q)))
    logger.info(f"{len(space.entangled)} of {len(space.states)} two-particle states are entangled for q = {q}")
    return space


def _transform(space: TwoStateSpace, state: TwoState, left: Matrix, right: Matrix) -> TwoState:
    field = space.field
    psi = mat_mul(field, mat_mul(field, left, state.matrix()), mat_transpose(right))
    return space.locate(from_matrix(psi))


def local_action(q: int, perm: Permutation, which_particle: int, state: TwoState) -> TwoState:
    """
    Apply a label permutation's basis transformation to one particle:
    Ψ ↦ MΨ on particle 1, Ψ ↦ ΨMᵀ on particle 2.
    """
    if which_particle not in (1, 2):
        raise GeometryError(f"Particle must be 1 or 2, not {which_particle}")
    space = two_state_space(q)
    m = pgl_group(q).witness(perm)
    identity = ((1, 0), (0, 1))
    if which_particle == 1:
        return _transform(space, state, m, identity)
    return _transform(space, state, identity, m)


def diagonal_action(q: int, perm: Permutation, state: TwoState) -> TwoState:
    """The same basis transformation on both particles: Ψ ↦ MΨMᵀ."""
    space = two_state_space(q)
    m = pgl_group(q).witness(perm)
    return _transform(space, state, m, m)


def orbits(q: int, action: str = 'diagonal') -> List[Tuple[str, ...]]:
    """
    Orbits of the entangled states under the diagonal action or under the
    one-sided local actions, in order of first appearance.
    """
    if action not in ('diagonal', 'local'):
        raise GeometryError(f"Unknown action '{action}'")
    space = two_state_space(q)
    group = pgl_group(q)
    identity = ((1, 0), (0, 1))
    if action == 'diagonal':
        moves = [(e.matrix, e.matrix) for e in group.elements]
    else:
        moves = [(e.matrix, identity) for e in group.elements] + [(identity, e.matrix) for e in group.elements]

    seen, result = set(), []
    for start in space.entangled:
        if start.label in seen:
            continue
        orbit, frontier = {start.label}, [start]
        while frontier:
            current = frontier.pop()
            for left, right in moves:
                image = _transform(space, current, left, right)
                if image.label not in orbit:
                    orbit.add(image.label)
                    frontier.append(image)
        seen |= orbit
        result.append(tuple(sorted(orbit, key=space.index)))
    return result


def build_multiplets(q: int = 2) -> MultipletCatalog:
    """The singlet, triplet and doublet of the q = 2 entangled states."""
    if q != 2:
        raise GeometryError(f"Multiplets are catalogued for q = 2 only, not q = {q}")
    space = two_state_space(2)
    catalog = MultipletCatalog(
        product=tuple(space.products),
        singlet=space.state("S"),
        triplet=tuple(space.state(lbl) for lbl in ("(ab)", "(bc)", "(ca)")),
        doublet=tuple(space.state(lbl) for lbl in ("(abc)", "(acb)")),
    )
    sizes = sorted(len(orbit) for orbit in orbits(2, 'diagonal'))
    if sizes != [1, 2, 3]:
        raise GeometryError(f"Diagonal orbit sizes {sizes} do not split into singlet, doublet and triplet")
    return catalog


def alternate_singlet_forms(q: int = 2) -> List[dict]:
    """Check the sums of product states that equal the singlet."""
    if q != 2:
        raise GeometryError(f"Singlet decompositions are catalogued for q = 2 only, not q = {q}")
    space = two_state_space(2)
    field = space.field
    singlet = space.state("S")
    forms = []
    for terms in SINGLET_FORMS:
        total = (0, 0, 0, 0)
        for label in terms:
            total = tuple(field.add(a, b) for a, b in zip(total, space.state(label).coords))
        forms.append({'terms': " + ".join(terms), 'equals_singlet': total == singlet.coords})
    return forms


def is_swap_symmetric(state: TwoState) -> bool:
    return state.matrix() == mat_transpose(state.matrix())


def two_states_report(q: int) -> dict:
    """Body of the ``two-states`` report."""
    space = two_state_space(q)
    field = space.field
    body = {
        'q': q,
        'state_count': len(space.states),
        'product_count': len(space.products),
        'entangled_count': len(space.entangled),
        'diagonal_orbit_sizes': [len(o) for o in orbits(q, 'diagonal')],
        'local_orbit_sizes': [len(o) for o in orbits(q, 'local')],
        'states': [
            {'label': s.label, 'coords': [field.name(x) for x in s.coords], 'entangled': s.entangled}
            for s in space.states
        ],
    }
    if q == 2:
        catalog = build_multiplets(2)
        body['multiplets'] = {
            'singlet': [catalog.singlet.label],
            'triplet': [s.label for s in catalog.triplet],
            'doublet': [s.label for s in catalog.doublet],
        }
        body['singlet_forms'] = alternate_singlet_forms(2)
        body['singlet_swap_symmetric'] = is_swap_symmetric(catalog.singlet)
    return body
