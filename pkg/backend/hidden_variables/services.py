"""
Local deterministic hidden-variable analysis of two-particle states.

An assignment fixes a value ±1 for every selected observable on each particle.
It survives when no product observable it determines lands on an outcome of
zero quantum probability. Every zero-probability outcome (O1 = x, O2 = y) is a
2-clause "not (O1 = x and O2 = y)", so surviving assignments are the models of a
2-SAT instance; its implication graph is also the implication chart.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import ceil, log2
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from correlations.services import OUTCOMES, CorrelationService, ProductObservable
from entanglement.services import TwoState, two_state_space
from geometry.services import GeometryError
from spin.services import Observable, spin_system

logger = logging.getLogger(__name__)

# scipy marks unreachable nodes in predecessor arrays with this value
NO_PREDECESSOR = -9999


@dataclass(frozen=True)
class ForbiddenOutcome:
    product_observable: ProductObservable
    outcome: Tuple[int, int]

    @property
    def display(self) -> str:
        x, y = self.outcome
        return f"{self.product_observable.display};{_sign(x)}{_sign(y)}"


@dataclass(frozen=True)
class Assignment:
    values: Dict[Tuple[int, str], int]

    def value(self, particle: int, obs: Observable) -> int:
        return self.values[(particle, obs.display)]


def _sign(x: int) -> str:
    return "+" if x > 0 else "-"


def variable_name(particle: int, obs: Observable) -> str:
    """'X1' for the q = 2 aliases, 'A_ab_1' otherwise."""
    if obs.alias:
        return f"{obs.alias}{particle}"
    return f"{obs.name}_{particle}"


def literal_name(particle: int, obs: Observable, value: int) -> str:
    return f"{variable_name(particle, obs)}={'+1' if value > 0 else '-1'}"


class HiddenVariableChecker:
    """
    Zero-probability constraints of one state over a chosen observable set.

    Variables are (particle, observable) pairs, particle 1 first. Literal 2v
    stands for variable v = +1 and 2v + 1 for v = -1.
    """

    def __init__(self, q: int, state: TwoState, observables: Optional[Sequence[Observable]] = None):
        self.q = q
        self.state = state
        system = spin_system(q)
        self.observables = list(observables) if observables is not None else list(system.canonical)
        if not self.observables:
            raise GeometryError("The observable set is empty")
        self.service = CorrelationService(q)
        self.variables = [(p, obs) for p in (1, 2) for obs in self.observables]
        self.limit = getattr(settings, 'GQM_HV_SURVIVOR_LIMIT', 4096)
        self._distributions = {
            (o1, o2): self.service.joint_probabilities(ProductObservable(o1, o2), state)
            for o1, o2 in product(self.observables, repeat=2)
        }
        self.forbidden = self._forbidden_set()
        # clauses[v]: list of (value_v, other variable, value_other) forbidden together
        self.clauses = self._clauses()

    @property
    def assignment_count(self) -> int:
        return 2 ** len(self.variables)

    def _var(self, particle: int, obs: Observable) -> int:
        return (particle - 1) * len(self.observables) + self.observables.index(obs)

    def _forbidden_set(self) -> List[ForbiddenOutcome]:
        return [
            ForbiddenOutcome(ProductObservable(o1, o2), outcome)
            for (o1, o2), dist in self._distributions.items()
            for outcome in OUTCOMES
            if dist.p[outcome] == 0
        ]

    def _clauses(self) -> Dict[int, List[Tuple[int, int, int]]]:
        clauses = {v: [] for v in range(len(self.variables))}
        for f in self.forbidden:
            v1 = self._var(1, f.product_observable.first)
            v2 = self._var(2, f.product_observable.second)
            x, y = f.outcome
            clauses[v1].append((x, v2, y))
            clauses[v2].append((y, v1, x))
        return clauses

    # implication graph

    @staticmethod
    def _literal(v: int, value: int) -> int:
        return 2 * v + (0 if value > 0 else 1)

    def implication_edges(self) -> List[Tuple[int, int]]:
        """O1 = x forces O2 = -y, and O2 = y forces O1 = -x, for each forbidden (x, y)."""
        edges = []
        for f in self.forbidden:
            v1 = self._var(1, f.product_observable.first)
            v2 = self._var(2, f.product_observable.second)
            x, y = f.outcome
            edges.append((self._literal(v1, x), self._literal(v2, -y)))
            edges.append((self._literal(v2, y), self._literal(v1, -x)))
        return edges

    def implication_graph(self, units: Sequence[int] = ()) -> csr_matrix:
        """Implication graph; each unit literal L adds the edge not-L => L."""
        size = 2 * len(self.variables)
        edges = self.implication_edges() + [(lit ^ 1, lit) for lit in units]
        if not edges:
            return csr_matrix((size, size), dtype=np.int8)
        rows, cols = zip(*edges)
        graph = csr_matrix((np.ones(len(edges), dtype=np.int8), (rows, cols)), shape=(size, size))
        graph.sum_duplicates()
        return graph

    def literal_display(self, literal: int) -> str:
        particle, obs = self.variables[literal // 2]
        return literal_name(particle, obs, 1 if literal % 2 == 0 else -1)

    def is_satisfiable(self, units: Sequence[int] = ()) -> bool:
        _, labels = connected_components(self.implication_graph(units), directed=True, connection='strong')
        return all(labels[2 * v] != labels[2 * v + 1] for v in range(len(self.variables)))

    def _path(self, graph, start: int, goal: int) -> Optional[List[int]]:
        _, predecessors = breadth_first_order(graph, start, directed=True, return_predecessors=True)
        if goal != start and predecessors[goal] == NO_PREDECESSOR:
            return None
        path = [goal]
        while path[-1] != start:
            path.append(int(predecessors[path[-1]]))
        return path[::-1]

    def contradiction(self) -> Optional[List[str]]:
        """
        A cycle v = +1 ⇒ … ⇒ v = -1 ⇒ … ⇒ v = +1 through the first variable that
        admits one, as literal strings; None when the constraints are satisfiable.
        """
        graph = self.implication_graph()
        for v in range(len(self.variables)):
            plus, minus = self._literal(v, 1), self._literal(v, -1)
            there = self._path(graph, plus, minus)
            back = self._path(graph, minus, plus)
            if there and back:
                return [self.literal_display(lit) for lit in there + back[1:]]
        return None

    # enumeration

    def _consistent(self, values: List[int], v: int, value: int) -> bool:
        for own, other, other_value in self.clauses[v]:
            if own == value and other < len(values) and values[other] == other_value:
                return False
        return True

    def _extend(self, prefix: List[int]) -> Tuple[List[Tuple[int, ...]], bool]:
        """Depth-first completion of prefix, +1 before -1, capped at the survivor limit."""
        found, stack = [], [list(prefix)]
        n = len(self.variables)
        for v, value in enumerate(prefix):
            if not self._consistent(prefix[:v], v, value):
                return [], False
        while stack:
            values = stack.pop()
            if len(values) == n:
                found.append(tuple(values))
                if len(found) > self.limit:
                    return found[: self.limit], True
                continue
            v = len(values)
            for value in (-1, 1):
                if self._consistent(values, v, value):
                    stack.append(values + [value])
        return found, False

    def _prefixes(self, threads: int) -> List[List[int]]:
        bits = min(len(self.variables), ceil(log2(threads))) if threads > 1 else 0
        return [[1 if b == 0 else -1 for b in pattern] for pattern in product((0, 1), repeat=bits)]

    def surviving_assignments(self, threads: Optional[int] = None) -> Tuple[List[Assignment], bool]:
        """
        Surviving assignments in bit-pattern order (variable 0 most significant,
        +1 as bit 0) and whether the list was cut at the survivor limit.
        """
        if not self.is_satisfiable():
            return [], False
        threads = threads or getattr(settings, 'GQM_DEFAULT_THREADS', 1)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(self._extend, self._prefixes(threads)))

        def merge(left, right):
            rows, truncated = left[0] + right[0], left[1] or right[1]
            if len(rows) > self.limit:
                return rows[: self.limit], True
            return rows, truncated

        rows, truncated = reduce(merge, parts, ([], False))
        return [self._assignment(values) for values in rows], truncated

    def _assignment(self, values: Sequence[int]) -> Assignment:
        return Assignment({(p, obs.display): x for (p, obs), x in zip(self.variables, values)})

    def realizes(self, assignment: Assignment, po: ProductObservable, outcome: Tuple[int, int]) -> bool:
        return (assignment.value(1, po.first), assignment.value(2, po.second)) == outcome

    def unreachable_outcomes(self) -> List[dict]:
        """
        Outcomes with nonzero quantum probability that no surviving assignment
        produces: the constraints plus O1 = x and O2 = y are unsatisfiable.
        """
        rows = []
        for (o1, o2), dist in self._distributions.items():
            po = ProductObservable(o1, o2)
            for outcome in OUTCOMES:
                if dist.p[outcome] == 0:
                    continue
                units = (self._literal(self._var(1, o1), outcome[0]), self._literal(self._var(2, o2), outcome[1]))
                if not self.is_satisfiable(units):
                    rows.append({
                        'observable': po.display,
                        'outcome': _sign(outcome[0]) + _sign(outcome[1]),
                        'probability': dist.p[outcome],
                    })
        return rows


def _resolve(q: int, state_label: str, observable_names: Optional[Sequence[str]]):
    state = two_state_space(q).state(state_label)
    system = spin_system(q)
    observables = [system.observable(name) for name in observable_names] if observable_names is not None else None
    return state, observables


def forbidden_set(q: int, state: TwoState, observables: Optional[Sequence[Observable]] = None) -> List[ForbiddenOutcome]:
    return HiddenVariableChecker(q, state, observables).forbidden


def surviving_assignments(q: int, state: TwoState, observables: Optional[Sequence[Observable]] = None,
                          threads: Optional[int] = None) -> List[Assignment]:
    survivors, _ = HiddenVariableChecker(q, state, observables).surviving_assignments(threads)
    return survivors


def implication_chart(q: int, state: TwoState, observables: Optional[Sequence[Observable]] = None) -> List[str]:
    checker = HiddenVariableChecker(q, state, observables)
    return [
        f"{checker.literal_display(a)} => {checker.literal_display(b)}"
        for a, b in checker.implication_edges()
    ]


def restricted_gap_check(q: int = 2, state_label: str = "S", observable_names: Sequence[str] = ("Y", "Z")) -> dict:
    """
    With a reduced observable set classical assignments exist, but some
    quantum-possible outcomes stay out of their reach.
    """
    if q != 2:
        raise GeometryError(f"The restricted check is set up for q = 2, not q = {q}")
    state, observables = _resolve(q, state_label, observable_names)
    checker = HiddenVariableChecker(q, state, observables)
    survivors, _ = checker.surviving_assignments()
    unreachable = checker.unreachable_outcomes()
    logger.info(f"{len(survivors)} survivors and {len(unreachable)} classically unreachable outcomes on {state_label}")
    return {
        'survivor_count': len(survivors),
        'unreachable': unreachable,
    }


def entangled_sweep(q: int, threads: Optional[int] = None) -> List[dict]:
    """Satisfiability of the zero-probability constraints on every entangled state, full observable set."""
    space = two_state_space(q)

    def check(state):
        return {'state': state.label, 'survivors_exist': HiddenVariableChecker(q, state).is_satisfiable()}

    with ThreadPoolExecutor(max_workers=threads or getattr(settings, 'GQM_DEFAULT_THREADS', 1)) as pool:
        return list(pool.map(check, space.entangled))


def hv_report(q: int, state_label: str, observable_names: Optional[Sequence[str]] = None,
              threads: Optional[int] = None) -> dict:
    """Body of the ``hv-check`` report."""
    state, observables = _resolve(q, state_label, observable_names)
    checker = HiddenVariableChecker(q, state, observables)
    survivors, truncated = checker.surviving_assignments(threads)
    return {
        'q': q,
        'state': state.label,
        'observables': [o.display for o in checker.observables],
        'assignment_count': checker.assignment_count,
        'forbidden': [
            {'observable': f.product_observable.display,
             'outcome': _sign(f.outcome[0]) + _sign(f.outcome[1])}
            for f in checker.forbidden
        ],
        'survivors': [
            {variable_name(p, obs): a.value(p, obs) for p, obs in checker.variables}
            for a in survivors
        ],
        'survivor_count': len(survivors),
        'truncated': truncated,
        'implications': implication_chart(q, state, checker.observables),
        'contradiction': checker.contradiction() or [],
        'unreachable': checker.unreachable_outcomes(),
        'verdict': 'survivors-exist' if survivors else 'no-hidden-variables',
    }
