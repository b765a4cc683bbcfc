from fractions import Fraction
from itertools import product

from django.test import SimpleTestCase, override_settings

from entanglement.services import two_state_space
from geometry.services import GeometryError, UnknownLabel
from spin.services import spin_system

from .services import (
    HiddenVariableChecker, entangled_sweep, forbidden_set, hv_report, implication_chart,
    restricted_gap_check, surviving_assignments,
)


class HiddenVariableTestMixin:

    def setUp(self):
        self.system = spin_system(2)
        self.space = two_state_space(2)
        self.singlet = self.space.state("S")
        self.xyz = [self.system.observable(n) for n in ("X", "Y", "Z")]
        self.yz = [self.system.observable(n) for n in ("Y", "Z")]


class ForbiddenSetTests(HiddenVariableTestMixin, SimpleTestCase):

    def test_singlet_zeros(self):
        forbidden = {f.display for f in forbidden_set(2, self.singlet, self.xyz)}
        self.assertIn("X1X2;++", forbidden)
        self.assertIn("X1Z2;+-", forbidden)
        self.assertNotIn("X1X2;+-", forbidden)

    def test_empty_observable_set(self):
        with self.assertRaises(GeometryError):
            HiddenVariableChecker(2, self.singlet, [])
        with self.assertRaises(GeometryError):
            hv_report(2, "S", [])

    def test_forbidden_outcomes_have_zero_probability(self):
        checker = HiddenVariableChecker(2, self.singlet, self.xyz)
        for f in checker.forbidden:
            dist = checker.service.joint_probabilities(f.product_observable, self.singlet)
            self.assertEqual(dist.p[f.outcome], 0)


class SurvivorTests(HiddenVariableTestMixin, SimpleTestCase):

    def test_no_assignment_survives_on_singlet(self):
        checker = HiddenVariableChecker(2, self.singlet, self.xyz)
        self.assertEqual(checker.assignment_count, 64)
        self.assertFalse(checker.is_satisfiable())
        self.assertEqual(surviving_assignments(2, self.singlet, self.xyz), [])

    def test_restricted_set_has_survivors(self):
        survivors = surviving_assignments(2, self.singlet, self.yz)
        self.assertEqual(len(survivors), 2)
        y, z = self.yz
        for a in survivors:
            self.assertNotEqual((a.value(1, y), a.value(2, z)), (1, -1))
            self.assertNotEqual((a.value(1, z), a.value(2, y)), (-1, 1))

    def test_product_states_have_survivors(self):
        for q in (2, 3):
            space = two_state_space(q)
            for state in space.products:
                self.assertTrue(HiddenVariableChecker(q, state).is_satisfiable(), f"q={q} {state.label}")

    def test_enumeration_matches_brute_force(self):
        for label in ("aa", "bc", "S"):
            state = self.space.state(label)
            checker = HiddenVariableChecker(2, state, self.xyz)
            brute = []
            for values in product((1, -1), repeat=6):
                ok = all(
                    (values[checker._var(1, f.product_observable.first)],
                     values[checker._var(2, f.product_observable.second)]) != f.outcome
                    for f in checker.forbidden
                )
                if ok:
                    brute.append(values)
            survivors, truncated = checker.surviving_assignments()
            self.assertFalse(truncated)
            got = [tuple(a.value(p, obs) for p, obs in checker.variables) for a in survivors]
            self.assertEqual(got, brute)

    def test_entangled_sweep(self):
        for q in (2, 3, 4, 5):
            self.assertFalse(any(row['survivors_exist'] for row in entangled_sweep(q)), f"q={q}")

    @override_settings(GQM_HV_SURVIVOR_LIMIT=5)
    def test_survivor_limit(self):
        checker = HiddenVariableChecker(3, two_state_space(3).state("aa"))
        survivors, truncated = checker.surviving_assignments()
        self.assertEqual(len(survivors), 5)
        self.assertTrue(truncated)

    def test_threads_do_not_change_survivors(self):
        state = two_state_space(3).state("ab")
        self.assertEqual(hv_report(3, state.label, threads=1), hv_report(3, state.label, threads=4))


class ImplicationChartTests(HiddenVariableTestMixin, SimpleTestCase):

    def test_narrated_edges(self):
        chart = implication_chart(2, self.singlet, self.xyz)
        self.assertIn("X1=+1 => Z2=+1", chart)
        self.assertIn("Z2=+1 => Y1=+1", chart)
        self.assertIn("X1=+1 => X2=-1", chart)

    def test_contradiction_cycle(self):
        cycle = HiddenVariableChecker(2, self.singlet, self.xyz).contradiction()
        self.assertEqual(cycle[0], "X1=+1")
        self.assertEqual(cycle[-1], "X1=+1")
        self.assertIn("X1=-1", cycle)

    def test_no_contradiction_with_restricted_set(self):
        self.assertIsNone(HiddenVariableChecker(2, self.singlet, self.yz).contradiction())


class RestrictedGapTests(SimpleTestCase):

    def test_gap(self):
        report = restricted_gap_check()
        self.assertEqual(report['survivor_count'], 2)
        unreachable = {(row['observable'], row['outcome']): row['probability'] for row in report['unreachable']}
        self.assertEqual(unreachable[("Y1Z2", "+-")], Fraction(1, 3))
        self.assertEqual(unreachable[("Z1Y2", "-+")], Fraction(1, 3))


class ReportTests(SimpleTestCase):

    def test_singlet_report(self):
        body = hv_report(2, "S", ["X", "Y", "Z"])
        self.assertEqual(body['verdict'], 'no-hidden-variables')
        self.assertEqual(body['assignment_count'], 64)
        self.assertEqual(body['survivor_count'], 0)
        self.assertTrue(body['contradiction'])

    def test_restricted_report(self):
        body = hv_report(2, "S", ["Y", "Z"])
        self.assertEqual(body['verdict'], 'survivors-exist')
        self.assertEqual(body['survivors'][0], {'Y1': 1, 'Z1': -1, 'Y2': -1, 'Z2': 1})

    def test_unknown_state(self):
        with self.assertRaises(UnknownLabel):
            hv_report(2, "T")
