"""
PGL(2, q) as a permutation group of the q + 1 one-particle states.

Permutations are sympy ``Permutation`` objects acting on state indices in the
label order of ``geometry.services.projective_space(q)``. Products follow
function composition: ``compose(g, h)`` applies h first.
"""
import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, List, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup
from sympy.utilities.iterables import partitions

from fields.services import FieldSpec
from geometry.services import projective_space

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

# Cycle types of S6 in census row order.
S6_CENSUS_ORDER = (
    (6,), (5, 1), (4, 1, 1), (4, 2), (3, 3), (3, 2, 1),
    (2, 2, 2), (2, 2, 1, 1), (3, 1, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1),
)

# Isomorphism type of PGL(2, q) for the small fields.
EXPECTED_IDENTIFICATION = {2: ('S', 3), 3: ('S', 4), 4: ('A', 5), 5: ('S', 5)}


class GroupError(ValueError):
    """Raised when a group fails a structural check or N is unsupported."""


class UnrealizablePermutation(GroupError):
    """Raised for a label permutation no basis transformation induces."""


@dataclass(frozen=True)
class GroupElt:
    matrix: Matrix
    perm: Permutation
    order: int
    cycle_type: Tuple[int, ...]
    parity: int


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    class_data: Tuple[Tuple[int, int], ...]
    parity_split: Tuple[int, int]
    cycle_census: Dict[Tuple[int, ...], int]

    @property
    def class_count(self) -> int:
        return len(self.class_data)


# Matrix helpers over a FieldSpec

def mat_det(field: FieldSpec, m: Matrix) -> int:
    (a, b), (c, d) = m
    return field.sub(field.mul(a, d), field.mul(b, c))


def mat_vec(field: FieldSpec, m: Matrix, v: Sequence[int]) -> Tuple[int, int]:
    return tuple(field.dot(row, v) for row in m)


def mat_mul(field: FieldSpec, m: Matrix, n: Matrix) -> Matrix:
    cols = tuple(zip(*n))
    return tuple(tuple(field.dot(row, col) for col in cols) for row in m)


def mat_transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_inverse(field: FieldSpec, m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    k = field.inv(mat_det(field, m))
    return (
        (field.mul(k, d), field.mul(k, field.neg(b))),
        (field.mul(k, field.neg(c)), field.mul(k, a)),
    )


def canonical_matrix(field: FieldSpec, m: Matrix) -> Matrix:
    """Scale m so that its first nonzero entry in row-major order is 1."""
    lead = next((x for row in m for x in row if x), None)
    if lead is None:
        raise GroupError("The zero matrix is not a group element")
    k = field.inv(lead)
    return tuple(tuple(field.mul(k, x) for x in row) for row in m)


def cycle_type(perm: Permutation) -> Tuple[int, ...]:
    """Cycle lengths of perm in descending order, fixed points included."""
    return tuple(sorted(
        (length for length, count in perm.cycle_structure.items() for _ in range(count)),
        reverse=True,
    ))


def compose(g: Permutation, h: Permutation) -> Permutation:
    """g ∘ h: apply h, then g."""
    return Permutation([g.array_form[i] for i in h.array_form])


def cycle_notation(perm: Permutation, labels: Sequence[str]) -> str:
    """'(ab)(cd)' style notation on state labels; 'e' for the identity."""
    cycles = perm.cyclic_form
    if not cycles:
        return "e"
    return "".join("(" + "".join(labels[i] for i in cycle) + ")" for cycle in cycles)


def parse_cycles(text: str, labels: Sequence[str]) -> Permutation:
    """
    Parse '(ab)', '(abc)(de)', 'e' or '()' over single-letter state labels.
    """
    text = text.strip()
    index = {label: i for i, label in enumerate(labels)}
    if text in ("", "e", "()"):
        return Permutation(list(range(len(labels))))
    if not re.fullmatch(r"(\([a-z]+\))+", text):
        raise UnrealizablePermutation(f"Cannot read '{text}' as a cycle product")
    cycles = []
    for cycle in re.findall(r"\(([a-z]+)\)", text):
        try:
            cycles.append([index[ch] for ch in cycle])
        except KeyError as exc:
            raise UnrealizablePermutation(f"'{text}' names a state not in {list(labels)}") from exc
        if len(set(cycle)) != len(cycle):
            raise UnrealizablePermutation(f"Cycle ({cycle}) repeats a label")
    perm = Permutation(list(range(len(labels))))
    for cycle in cycles:
        perm = compose(perm, Permutation([cycle], size=len(labels)))
    return perm


class ProjectiveLinearGroup:
    """
    PGL(2, q) enumerated as canonical matrices with their state permutations.
    """

    def __init__(self, q: int, N: int = 2):
        if N != 2:
            raise GroupError(f"PGL({N},q) is not enumerated; only N = 2 is supported")
        self.space = projective_space(q, N)
        self.field = self.space.field
        self.q = q
        self.elements = self._enumerate()
        self._by_perm = {elt.perm: elt for elt in self.elements}
        if len(self._by_perm) != len(self.elements):
            raise GroupError(f"The action of PGL(2,{q}) on PG(1,{q}) is not faithful")
        logger.info(f"Enumerated {len(self.elements)} elements of PGL(2,{q})")

    def _enumerate(self) -> List[GroupElt]:
        field = self.field
        elements = []
        for a, b, c, d in product(field.elements, repeat=4):
            m = ((a, b), (c, d))
            if mat_det(field, m) == 0 or canonical_matrix(field, m) != m:
                continue
            elements.append(self.element(m))
        return elements

    def element(self, m: Matrix) -> GroupElt:
        field = self.field
        if mat_det(field, m) == 0:
            raise GroupError(f"Matrix {m} is singular")
        m = canonical_matrix(field, m)
        perm = Permutation([self.space.index(self.space.locate(mat_vec(field, m, p.rep)).label)
                            for p in self.space.points])
        return GroupElt(
            matrix=m,
            perm=perm,
            order=perm.order(),
            cycle_type=cycle_type(perm),
            parity=perm.signature(),
        )

    @property
    def labels(self) -> List[str]:
        return self.space.labels

    def witness(self, perm: Permutation) -> Matrix:
        """A basis-transformation matrix inducing perm, or UnrealizablePermutation."""
        try:
            return self._by_perm[perm].matrix
        except KeyError:
            raise UnrealizablePermutation(
                f"{cycle_notation(perm, self.labels)} is not induced by any basis transformation of GF({self.q})^2"
            ) from None

    def parse(self, text: str) -> Permutation:
        return parse_cycles(text, self.labels)


@lru_cache(maxsize=None)
def pgl_group(q: int) -> ProjectiveLinearGroup:
    return ProjectiveLinearGroup(q)


def enumerate_pgl(q: int, N: int = 2) -> List[GroupElt]:
    if N != 2:
        raise GroupError(f"PGL({N},q) is not enumerated; only N = 2 is supported")
    return pgl_group(q).elements


def realizable_label_permutations(q: int) -> Dict[Permutation, Matrix]:
    """Every label permutation a basis transformation induces, with one witness each."""
    return {elt.perm: elt.matrix for elt in pgl_group(q).elements}


def _expected_order(kind: str, n: int) -> int:
    return factorial(n) if kind == 'S' else factorial(n) // 2


def permutation_image(elts: Sequence[GroupElt], q: int) -> dict:
    """
    Locate the image of PGL(2, q) inside S_{q+1}: full symmetric, alternating
    or a proper subgroup.
    """
    degree = q + 1
    even = sum(1 for e in elts if e.parity == 1)
    odd = len(elts) - even
    if len(elts) == factorial(degree):
        identification = f"S{degree}"
    elif odd == 0 and len(elts) == factorial(degree) // 2:
        identification = f"A{degree}"
    else:
        identification = f"proper subgroup of S{degree}"
    return {
        'degree': degree,
        'order': len(elts),
        'even': even,
        'odd': odd,
        'identification': identification,
    }


def _check_closure(perms: Sequence[Permutation]):
    arrays = {tuple(p.array_form) for p in perms}
    for g in arrays:
        for h in arrays:
            if tuple(g[i] for i in h) not in arrays:
                raise GroupError("Element set is not closed under composition")


def conjugacy_classes(perms: Sequence[Permutation]) -> List[List[Permutation]]:
    """Brute-force conjugacy classes, in order of first appearance."""
    _check_closure(perms)
    arrays = [tuple(p.array_form) for p in perms]
    inverses = {}
    for g in arrays:
        inv = [0] * len(g)
        for i, x in enumerate(g):
            inv[x] = i
        inverses[g] = tuple(inv)

    seen, classes = set(), []
    for x in arrays:
        if x in seen:
            continue
        cls = {tuple(g[x[inverses[g][i]]] for i in range(len(x))) for g in arrays}
        seen |= cls
        classes.append(sorted((Permutation(list(c)) for c in cls), key=lambda p: p.array_form))
    return classes


def fingerprint(perms: Sequence[Permutation]) -> GroupFingerprint:
    classes = conjugacy_classes(perms)
    census = Counter(cycle_type(p) for p in perms)
    even = sum(1 for p in perms if p.signature() == 1)
    return GroupFingerprint(
        order=len(perms),
        class_data=tuple(sorted((cls[0].order(), len(cls)) for cls in classes)),
        parity_split=(even, len(perms) - even),
        cycle_census=dict(census),
    )


def fingerprint_match(g1: GroupFingerprint, g2: GroupFingerprint) -> bool:
    """Order and (element order, class size) multisets agree."""
    return g1.order == g2.order and g1.class_data == g2.class_data


@lru_cache(maxsize=None)
def reference_group(kind: str, n: int) -> Tuple[Permutation, ...]:
    """S_n ('S') or A_n ('A') as raw permutations of n points."""
    group = SymmetricGroup(n) if kind == 'S' else AlternatingGroup(n)
    perms = tuple(sorted(group.generate(), key=lambda p: p.array_form))
    if len(perms) != _expected_order(kind, n):
        raise GroupError(f"Reference group {kind}{n} has {len(perms)} elements")
    return perms


def class_size_in_symmetric_group(shape: Sequence[int]) -> int:
    n = sum(shape)
    denominator = 1
    for length, count in Counter(shape).items():
        denominator *= length ** count * factorial(count)
    return factorial(n) // denominator


def cycle_census_rows(elts: Sequence[GroupElt], q: int) -> List[dict]:
    """
    Number of group elements per cycle type of S_{q+1}. Degree 6 uses the
    census row order; other degrees list partitions in descending order.
    """
    degree = q + 1
    census = Counter(e.cycle_type for e in elts)
    if degree == 6:
        shapes = S6_CENSUS_ORDER
    else:
        shapes = [
            tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True))
            for part in partitions(degree)
        ]
        shapes = sorted(shapes, reverse=True)
    return [
        {
            'cycle_type': "(" + ",".join(str(k) for k in shape) + ")",
            'class_size': class_size_in_symmetric_group(shape),
            'count': census.get(shape, 0),
        }
        for shape in shapes
    ]


def group_report(q: int) -> dict:
    """Body of the ``group`` report."""
    group = pgl_group(q)
    elts = group.elements
    perms = [e.perm for e in elts]
    fp = fingerprint(perms)
    body = {
        'q': q,
        'order': len(elts),
        'expected_order': q * (q * q - 1),
        'image': permutation_image(elts, q),
        'class_count': fp.class_count,
        'classes': [{'element_order': o, 'size': s} for o, s in fp.class_data],
        'parity_split': list(fp.parity_split),
    }
    if q in EXPECTED_IDENTIFICATION:
        kind, n = EXPECTED_IDENTIFICATION[q]
        body['isomorphic_to'] = f"{kind}{n}"
        body['fingerprint_match'] = fingerprint_match(fp, fingerprint(reference_group(kind, n)))
    if q == 5:
        even_half = [p for p in perms if p.signature() == 1]
        body['even_half_matches_A5'] = fingerprint_match(fingerprint(even_half), fingerprint(reference_group('A', 5)))
    body['rows'] = cycle_census_rows(elts, q)
    return body


def s6_census_report(q: int) -> dict:
    """Body of the ``s6-census`` report: the S6 cycle-type census of PGL(2,5)."""
    if q != 5:
        raise GroupError(f"The S6 census needs six states (q = 5), not q = {q}")
    elts = pgl_group(q).elements
    rows = cycle_census_rows(elts, q)
    return {
        'q': q,
        'total': sum(row['count'] for row in rows),
        'class_count': fingerprint([e.perm for e in elts]).class_count,
        'rows': rows,
    }
