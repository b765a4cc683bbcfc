"""
Product observables, joint outcome probabilities and the CHSH search.
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from entanglement.services import TwoState, two_state_space
from fields.services import abs_value
from geometry.services import GeometryError
from spin.services import Observable, spin_system

logger = logging.getLogger(__name__)

OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

# Every correlator of the model is a multiple of 1/12 (denominators 1, 2, 3, 4).
CORRELATOR_SCALE = 12


@dataclass(frozen=True)
class ProductObservable:
    first: Observable
    second: Observable

    @property
    def display(self) -> str:
        if self.first.alias and self.second.alias:
            return f"{self.first.alias}1{self.second.alias}2"
        return f"{self.first.name}_1 {self.second.name}_2"


@dataclass(frozen=True)
class JointDistribution:
    p: Dict[Tuple[int, int], Fraction]

    @property
    def correlation(self) -> Fraction:
        return sum((x * y * prob for (x, y), prob in self.p.items()), Fraction(0))

    def as_row(self) -> dict:
        return {
            'p_pp': self.p[(1, 1)],
            'p_pm': self.p[(1, -1)],
            'p_mp': self.p[(-1, 1)],
            'p_mm': self.p[(-1, -1)],
            'expectation': self.correlation,
        }


@dataclass(frozen=True)
class ChshResult:
    settings: Tuple[Observable, Observable, Observable, Observable]
    state: TwoState
    value: Fraction


@dataclass
class ChshSearch:
    """Merged outcome of an exhaustive CHSH search."""
    max_scaled: int = -1
    achievers: List[ChshResult] = dc_field(default_factory=list)
    achiever_count: int = 0
    # |value| scaled by CORRELATOR_SCALE -> number of settings
    histogram: Counter = dc_field(default_factory=Counter)
    settings_count: int = 0
    state_count: int = 0

    @property
    def max_abs(self) -> Fraction:
        return Fraction(self.max_scaled, CORRELATOR_SCALE)


class CorrelationService:
    """
    Joint probabilities of product observables on the two-particle states of GF(q).
    """

    def __init__(self, q: int):
        self.q = q
        self.system = spin_system(q)
        self.space = two_state_space(q)
        self.field = self.space.field

    def _product_bracket(self, x_label: str, y_label: str, state: TwoState) -> int:
        f = self.field
        x = self.system.duals[x_label].rep
        y = self.system.duals[y_label].rep
        total = 0
        for i, j in product(range(2), repeat=2):
            term = f.mul(f.mul(x[i], y[j]), state.coords[2 * i + j])
            total = f.add(total, term)
        return total

    def joint_probabilities(self, po: ProductObservable, state: TwoState) -> JointDistribution:
        labels = {1: (po.first.plus, po.second.plus), -1: (po.first.minus, po.second.minus)}
        weights = {
            (x, y): abs_value(self._product_bracket(labels[x][0], labels[y][1], state))
            for x, y in OUTCOMES
        }
        total = sum(weights.values())
        return JointDistribution({outcome: Fraction(w, total) for outcome, w in weights.items()})

    def correlation(self, po: ProductObservable, state: TwoState) -> Fraction:
        return self.joint_probabilities(po, state).correlation

    def chsh_value(self, a1: Observable, a2: Observable, b1: Observable, b2: Observable, state: TwoState) -> Fraction:
        """⟨A1B1⟩ + ⟨A1B2⟩ + ⟨A2B1⟩ - ⟨A2B2⟩ with A on particle 1 and B on particle 2."""
        c = self.correlation
        return (
            c(ProductObservable(a1, b1), state)
            + c(ProductObservable(a1, b2), state)
            + c(ProductObservable(a2, b1), state)
            - c(ProductObservable(a2, b2), state)
        )

    def correlator_matrix(self, observables: Sequence[Observable], state: TwoState) -> np.ndarray:
        """12·⟨O_i ⊗ O_j⟩ as exact integers."""
        m = len(observables)
        matrix = np.zeros((m, m), dtype=np.int64)
        for i, j in product(range(m), repeat=2):
            value = self.correlation(ProductObservable(observables[i], observables[j]), state) * CORRELATOR_SCALE
            if value.denominator != 1:
                raise GeometryError(f"Correlator {value / CORRELATOR_SCALE} is not a multiple of 1/12")
            matrix[i, j] = value.numerator
        return matrix


def table_observables(q: int) -> List[Observable]:
    """Observable order of the two-particle table: X, Y, Z for q = 2."""
    system = spin_system(q)
    if q == 2:
        return [system.observable(name) for name in ("X", "Y", "Z")]
    return list(system.canonical)


def joint_probabilities(q: int, po: ProductObservable, state: TwoState) -> JointDistribution:
    return CorrelationService(q).joint_probabilities(po, state)


def correlation(q: int, po: ProductObservable, state: TwoState) -> Fraction:
    return CorrelationService(q).correlation(po, state)


def chsh_value(q: int, a1, a2, b1, b2, state: TwoState) -> Fraction:
    return CorrelationService(q).chsh_value(a1, a2, b1, b2, state)


def two_particle_table(q: int = 2) -> List[dict]:
    """Joint probabilities and correlation of every product observable on every entangled state."""
    service = CorrelationService(q)
    observables = table_observables(q)
    rows = []
    for first, second in product(observables, repeat=2):
        po = ProductObservable(first, second)
        for state in service.space.entangled:
            rows.append({'observable': po.display, 'state': state.label,
                         **service.joint_probabilities(po, state).as_row()})
    return rows


class ChshSearcher:
    """
    Exhaustive CHSH search over ordered settings (A1, A2, B1, B2) and a set of states.

    States are searched independently (one worker task each) and merged in state
    order, so results do not depend on the worker count.
    """

    def __init__(self, q: int, include_product: bool = False, prune: bool = True, threads: Optional[int] = None):
        self.q = q
        self.service = CorrelationService(q)
        self.include_product = include_product
        self.prune = prune
        self.threads = threads or getattr(settings, 'GQM_DEFAULT_THREADS', 1)
        self.limit = getattr(settings, 'GQM_CHSH_ACHIEVER_LIMIT', 2000)
        system = self.service.system
        self.observables = list(system.canonical if prune else system.observables)

    @property
    def states(self) -> List[TwoState]:
        space = self.service.space
        return list(space.states) if self.include_product else space.entangled

    def _search_state(self, state: TwoState) -> ChshSearch:
        c = self.service.correlator_matrix(self.observables, state)
        m = len(self.observables)
        result = ChshSearch(settings_count=m ** 4, state_count=1)
        for a1 in range(m):
            # values[a2, b1, b2] for this A1
            values = (
                c[a1, None, :, None] + c[a1, None, None, :]
                + c[:, :, None] - c[:, None, :]
            )
            keys, counts = np.unique(np.abs(values), return_counts=True)
            result.histogram.update({int(k): int(n) for k, n in zip(keys, counts)})
            best = int(np.abs(values).max())
            if best < result.max_scaled:
                continue
            if best > result.max_scaled:
                result.max_scaled, result.achievers, result.achiever_count = best, [], 0
            hits = np.argwhere(np.abs(values) == best)
            result.achiever_count += len(hits)
            for a2, b1, b2 in hits[: max(0, self.limit - len(result.achievers))]:
                obs = self.observables
                result.achievers.append(ChshResult(
                    settings=(obs[a1], obs[a2], obs[b1], obs[b2]),
                    state=state,
                    value=Fraction(int(values[a2, b1, b2]), CORRELATOR_SCALE),
                ))
        return result

    def _merge(self, left: ChshSearch, right: ChshSearch) -> ChshSearch:
        merged = ChshSearch(
            histogram=left.histogram + right.histogram,
            settings_count=left.settings_count + right.settings_count,
            state_count=left.state_count + right.state_count,
        )
        if left.max_scaled > right.max_scaled:
            best = [left]
        elif right.max_scaled > left.max_scaled:
            best = [right]
        else:
            best = [left, right]
        merged.max_scaled = best[0].max_scaled
        for part in best:
            merged.achiever_count += part.achiever_count
            merged.achievers.extend(part.achievers[: self.limit - len(merged.achievers)])
        return merged

    def run(self) -> ChshSearch:
        states = self.states
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            parts = list(pool.map(self._search_state, states))
        result = reduce(self._merge, parts, ChshSearch())
        logger.info(
            f"CHSH search q={self.q}: {result.state_count} states, "
            f"{result.settings_count} settings, max |value| {result.max_abs}"
        )
        return result


def chsh_maximize(q: int, include_product: bool = False, prune: bool = True, threads: Optional[int] = None) -> ChshSearch:
    return ChshSearcher(q, include_product=include_product, prune=prune, threads=threads).run()


def chsh_report(q: int, include_product: bool = False, prune: bool = True, threads: Optional[int] = None) -> dict:
    """Body of the ``chsh`` report."""
    result = chsh_maximize(q, include_product=include_product, prune=prune, threads=threads)
    return {
        'q': q,
        'scope': 'all' if include_product else 'entangled',
        'pruned': prune,
        'max_abs': result.max_abs,
        'achiever_count': result.achiever_count,
        'achievers': [
            {
                'A1': r.settings[0].display, 'A2': r.settings[1].display,
                'B1': r.settings[2].display, 'B2': r.settings[3].display,
                'state': r.state.label, 'value': r.value,
            }
            for r in result.achievers
        ],
        'histogram': [
            {'value': Fraction(k, CORRELATOR_SCALE), 'count': n}
            for k, n in sorted(result.histogram.items())
        ],
        'settings_count': result.settings_count,
        'state_count': result.state_count,
    }


def corr_table_report(q: int = 2) -> dict:
    """Body of the ``corr-table`` report."""
    return {'rows': two_particle_table(q)}
