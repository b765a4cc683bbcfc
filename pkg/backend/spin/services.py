"""
One-particle GQM(2, q): observables, the probability rule and relabeling.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics import Permutation

from fields.services import abs_value
from geometry.services import ProjectiveSpace, ProjPoint, UnknownLabel, bracket, projective_space
from symmetry.services import cycle_notation, pgl_group

logger = logging.getLogger(__name__)

# q = 2 aliases, in the order the one-particle table lists them.
SPIN_ALIASES = (("Z", ("a", "b")), ("X", ("b", "c")), ("Y", ("c", "a")))


@dataclass(frozen=True)
class Observable:
    """
    Ordered dual pair: outcome +1 on the dual of ``plus``, -1 on the dual of ``minus``.
    """
    plus: str
    minus: str
    alias: Optional[str] = None

    @property
    def name(self) -> str:
        return f"A_{self.plus}{self.minus}"

    @property
    def display(self) -> str:
        return self.alias or self.name

    def negate(self) -> 'Observable':
        return Observable(plus=self.minus, minus=self.plus, alias=_negated_alias(self.alias))


def _negated_alias(alias):
    if alias is None:
        return None
    return alias[1:] if alias.startswith("-") else f"-{alias}"


@dataclass(frozen=True)
class OutcomeDistribution:
    p_plus: Fraction
    p_minus: Fraction

    @property
    def expectation(self) -> Fraction:
        return self.p_plus - self.p_minus


class SpinSystem:
    """
    The observables of GQM(2, q) over a labeled PG(1, q).
    """

    def __init__(self, q: int):
        self.q = q
        self.space: ProjectiveSpace = projective_space(q, 2)
        self.field = self.space.field
        self.duals = {d.state_label: d for d in self.space.duals}
        self.observables = self._ordered_observables()
        self.canonical = self._canonical_observables()
        self._by_pair = {(o.plus, o.minus): o for o in self.observables}
        self._by_name = {}
        for o in self.observables:
            self._by_name[o.name] = o
            if o.alias:
                self._by_name[o.alias] = o

    def _alias(self, plus, minus):
        if self.q != 2:
            return None
        for alias, pair in SPIN_ALIASES:
            if pair == (plus, minus):
                return alias
            if pair == (minus, plus):
                return f"-{alias}"
        return None

    def _ordered_observables(self) -> List[Observable]:
        labels = self.space.labels
        return [
            Observable(plus=r, minus=s, alias=self._alias(r, s))
            for r in labels for s in labels if r != s
        ]

    def _canonical_observables(self) -> List[Observable]:
        if self.q == 2:
            return [Observable(plus=r, minus=s, alias=alias) for alias, (r, s) in SPIN_ALIASES]
        labels = self.space.labels
        return [o for o in self.observables if labels.index(o.plus) < labels.index(o.minus)]

    def observable(self, name: str) -> Observable:
        """Look up 'A_ab', or 'X' / '-X' style aliases for q = 2."""
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownLabel(f"No observable '{name}' in GQM(2,{self.q})") from None

    def observable_for(self, plus: str, minus: str) -> Observable:
        return self._by_pair[(plus, minus)]

    def is_canonical(self, obs: Observable) -> bool:
        return (obs.plus, obs.minus) in {(o.plus, o.minus) for o in self.canonical}

    def signed(self, obs: Observable) -> Tuple[int, Observable]:
        """Write obs as ±(canonical observable)."""
        if self.is_canonical(obs):
            return 1, self.observable_for(obs.plus, obs.minus)
        return -1, self.observable_for(obs.minus, obs.plus)

    def outcome_probabilities(self, obs: Observable, state: ProjPoint) -> OutcomeDistribution:
        plus = abs_value(bracket(self.field, self.duals[obs.plus].rep, state.rep))
        minus = abs_value(bracket(self.field, self.duals[obs.minus].rep, state.rep))
        total = plus + minus
        return OutcomeDistribution(p_plus=Fraction(plus, total), p_minus=Fraction(minus, total))

    def expectation(self, obs: Observable, state: ProjPoint) -> Fraction:
        return self.outcome_probabilities(obs, state).expectation


@lru_cache(maxsize=None)
def spin_system(q: int) -> SpinSystem:
    return SpinSystem(q)


def enumerate_observables(q: int) -> List[Observable]:
    return spin_system(q).observables


def outcome_probabilities(obs: Observable, state: ProjPoint, q: int) -> OutcomeDistribution:
    return spin_system(q).outcome_probabilities(obs, state)


def expectation(obs: Observable, state: ProjPoint, q: int) -> Fraction:
    return spin_system(q).expectation(obs, state)


def one_particle_table(q: int, signed: bool = False) -> List[dict]:
    """
    Outcome probabilities and expectation values of every observable on every
    state; canonical observables only unless ``signed``.
    """
    system = spin_system(q)
    rows = []
    for obs in (system.observables if signed else system.canonical):
        for state in system.space.points:
            dist = system.outcome_probabilities(obs, state)
            rows.append({
                'observable': obs.display,
                'state': state.label,
                'p_plus': dist.p_plus,
                'p_minus': dist.p_minus,
                'expectation': dist.expectation,
            })
    return rows


def eigenstate_report(q: int) -> List[dict]:
    """For each state, the canonical observables with a definite outcome on it."""
    system = spin_system(q)
    rows = []
    for state in system.space.points:
        definite = [
            obs.display for obs in system.canonical
            if abs(system.expectation(obs, state)) == 1
        ]
        rows.append({'state': state.label, 'observables': definite})
    return rows


def relabel_action(q: int, perm: Permutation, obs: Observable) -> Tuple[int, Observable]:
    """
    Transport obs by a realizable label permutation; returns the sign and the
    canonical observable, e.g. (ab)Z = -Z.
    """
    system = spin_system(q)
    pgl_group(q).witness(perm)
    labels = system.space.labels
    image = perm.array_form
    moved = Observable(
        plus=labels[image[labels.index(obs.plus)]],
        minus=labels[image[labels.index(obs.minus)]],
    )
    return system.signed(moved)


def signed_display(sign: int, obs: Observable) -> str:
    return f"{'+' if sign > 0 else '-'}{obs.display}"


def relabel_table(q: int) -> List[dict]:
    """g·A for every realizable permutation g and canonical observable A."""
    system = spin_system(q)
    group = pgl_group(q)
    rows = []
    for elt in group.elements:
        for obs in system.canonical:
            sign, image = relabel_action(q, elt.perm, obs)
            rows.append({
                'permutation': cycle_notation(elt.perm, group.labels),
                'observable': obs.display,
                'image': signed_display(sign, image),
            })
    return rows


def prob_table_report(q: int, signed: bool = False) -> Dict[str, list]:
    """Body of the ``prob-table`` report."""
    return {
        'rows': one_particle_table(q, signed=signed),
        'eigenstates': eigenstate_report(q),
    }
