"""
Galois field construction and table arithmetic.

Fields are tabulated once and then used through dense element indices:
index 0 is the additive identity, index 1 the multiplicative identity and, for
q = p^n, index i encodes the polynomial whose base-p digits are the
coefficients of i (galois' integer representation). For GF(4) built on
x^2 + x + 1 this makes 2 = ω and 3 = ω² = ω + 1.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import galois
import numpy as np
from django.conf import settings

logger = logging.getLogger(__name__)

# A field element is an index into the tables of its FieldSpec.
Felt = int

# Conventional display names for the small fields.
DISPLAY_NAMES = {
    2: ("0", "1"),
    3: ("0", "1", "-1"),
    4: ("0", "1", "ω", "ω²"),
    5: ("0", "1", "2", "-2", "-1"),
}


class FieldError(ValueError):
    """Raised for fields that cannot or may not be built."""


class FieldDivisionError(FieldError, ZeroDivisionError):
    """Raised when dividing by (or inverting) the zero element."""


@dataclass(frozen=True)
class FieldSpec:
    """
    A fully tabulated GF(p^n). Immutable; share freely across threads.
    """
    p: int
    n: int
    q: int
    irreducible: Tuple[int, ...]
    add_table: Tuple[Tuple[int, ...], ...]
    mul_table: Tuple[Tuple[int, ...], ...]
    neg_table: Tuple[int, ...]
    inv_table: Tuple[int, ...]
    repr_names: Tuple[str, ...]
    generator: int

    @property
    def zero(self) -> Felt:
        return 0

    @property
    def one(self) -> Felt:
        return 1

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: Felt, b: Felt) -> Felt:
        return self.add_table[a][b]

    def neg(self, a: Felt) -> Felt:
        return self.neg_table[a]

    def sub(self, a: Felt, b: Felt) -> Felt:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: Felt, b: Felt) -> Felt:
        return self.mul_table[a][b]

    def inv(self, a: Felt) -> Felt:
        if a == 0:
            raise FieldDivisionError(f"The zero element of GF({self.q}) has no inverse")
        return self.inv_table[a]

    def div(self, a: Felt, b: Felt) -> Felt:
        return self.mul_table[a][self.inv(b)]

    def abs_value(self, k: Felt) -> int:
        return abs_value(k)

    def name(self, a: Felt) -> str:
        return self.repr_names[a]

    def dot(self, u: Sequence[Felt], v: Sequence[Felt]) -> Felt:
        """Field-valued dot product of two equal-length coordinate lists."""
        total = 0
        for a, b in zip(u, v):
            total = self.add_table[total][self.mul_table[a][b]]
        return total

    def scale(self, k: Felt, v: Sequence[Felt]) -> Tuple[Felt, ...]:
        return tuple(self.mul_table[k][x] for x in v)

    def multiplicative_order(self, a: Felt) -> int:
        if a == 0:
            raise FieldDivisionError("The zero element has no multiplicative order")
        order, power = 1, a
        while power != 1:
            power = self.mul_table[power][a]
            order += 1
        return order

    @property
    def add_array(self) -> np.ndarray:
        return np.array(self.add_table, dtype=np.int64)

    @property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul_table, dtype=np.int64)


def abs_value(k: Felt) -> int:
    """
    The absolute value map into the reals: 0 for the zero element, 1 otherwise.
    """
    return 0 if k == 0 else 1


class FieldBuilder:
    """
    Builds FieldSpec tables, enforcing the configured order cap.
    """

    def __init__(self):
        self.max_order = getattr(settings, 'GQM_MAX_FIELD_ORDER', 16)

    def build(self, p: int, n: int = 1, irreducible: Optional[Sequence[int]] = None) -> FieldSpec:
        if not galois.is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if n < 1:
            raise FieldError(f"n = {n} must be a positive integer")
        q = p ** n
        if q > self.max_order:
            raise FieldError(
                f"GF({p}^{n}) has order {q}, above the configured table limit {self.max_order}"
            )

        poly = self._irreducible_poly(p, n, irreducible)
        gf = galois.GF(p) if n == 1 else galois.GF(q, irreducible_poly=poly)

        x = gf.elements
        add_table = _as_table(x[:, np.newaxis] + x[np.newaxis, :])
        mul_table = _as_table(x[:, np.newaxis] * x[np.newaxis, :])
        neg_table = tuple(int(v) for v in (-x).view(np.ndarray))
        inv_table = (0,) + tuple(int(v) for v in (x[1:] ** -1).view(np.ndarray))
        generator = int(gf.primitive_element)

        spec = FieldSpec(
            p=p,
            n=n,
            q=q,
            irreducible=tuple(int(c) for c in poly.coeffs.view(np.ndarray)),
            add_table=add_table,
            mul_table=mul_table,
            neg_table=neg_table,
            inv_table=inv_table,
            repr_names=_display_names(q, mul_table, generator),
            generator=generator,
        )
        logger.info(f"Built GF({q}) on irreducible {list(spec.irreducible)}")
        return spec

    def _irreducible_poly(self, p, n, irreducible):
        base = galois.GF(p)
        if irreducible is None:
            if n == 1:
                return galois.Poly([1, 0], field=base)
            return galois.irreducible_poly(p, n, method="min")

        coeffs = [int(c) for c in irreducible]
        if any(c < 0 or c >= p for c in coeffs):
            raise FieldError(f"Coefficients {coeffs} are not elements of GF({p})")
        poly = galois.Poly(coeffs, field=base)
        if poly.degree != n or coeffs[0] != 1:
            raise FieldError(f"{poly} is not a monic polynomial of degree {n}")
        if not poly.is_irreducible():
            raise FieldError(f"{poly} is reducible over GF({p})")
        return poly


def _as_table(array) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in array.view(np.ndarray))


def _display_names(q, mul_table, generator):
    if q in DISPLAY_NAMES:
        return DISPLAY_NAMES[q]
    names = ["0"] * q
    power = 1
    for k in range(q - 1):
        names[power] = "1" if k == 0 else f"g^{k}"
        power = mul_table[power][generator]
    return tuple(names)


@lru_cache(maxsize=None)
def _cached_field(p, n, irreducible):
    return FieldBuilder().build(p, n, irreducible)


def build_field(p: int, n: int = 1, irreducible: Optional[Sequence[int]] = None) -> FieldSpec:
    """
    Build (or fetch the cached) GF(p^n). Identical inputs give identical tables.
    """
    key = tuple(irreducible) if irreducible is not None else None
    return _cached_field(p, n, key)


def field_for_order(q: int) -> FieldSpec:
    """GF(q) on its default irreducible polynomial."""
    if not galois.is_prime_power(q):
        raise FieldError(f"q = {q} is not a prime power")
    primes, exponents = galois.factors(q)
    return build_field(int(primes[0]), int(exponents[0]))


def field_table_report(field: FieldSpec) -> dict:
    """Body of the ``field-table`` report."""
    return {
        'p': field.p,
        'n': field.n,
        'q': field.q,
        'irreducible': list(field.irreducible),
        'add': [list(row) for row in field.add_table],
        'mul': [list(row) for row in field.mul_table],
        'names': list(field.repr_names),
        'generator': field.name(field.generator),
        'multiplicative_orders': {field.name(a): field.multiplicative_order(a) for a in field.nonzero},
    }
