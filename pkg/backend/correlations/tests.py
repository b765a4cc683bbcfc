from fractions import Fraction
from itertools import product

from django.test import SimpleTestCase, override_settings

from entanglement.services import two_state_space
from spin.services import spin_system
from symmetry.services import pgl_group

from .services import (
    CorrelationService, ProductObservable, chsh_maximize, chsh_report, two_particle_table,
)

F = Fraction
ENTANGLED = ("S", "(ab)", "(bc)", "(ca)", "(abc)", "(acb)")

# Per product observable, the (++, +-, -+, --) probabilities and correlation on each entangled state.
CORRELATION_TABLE = {
    "X1X2": ["0 1/2 1/2 0 -1", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "1/3 0 1/3 1/3 1/3", "1/3 1/3 0 1/3 1/3"],
    "X1Y2": ["1/3 1/3 0 1/3 1/3", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "0 1/2 1/2 0 -1", "1/3 0 1/3 1/3 1/3"],
    "X1Z2": ["1/3 0 1/3 1/3 1/3", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "1/3 1/3 0 1/3 1/3", "0 1/2 1/2 0 -1"],
    "Y1X2": ["1/3 0 1/3 1/3 1/3", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "1/3 1/3 0 1/3 1/3", "0 1/2 1/2 0 -1"],
    "Y1Y2": ["0 1/2 1/2 0 -1", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "1/3 0 1/3 1/3 1/3", "1/3 1/3 0 1/3 1/3"],
    "Y1Z2": ["1/3 1/3 0 1/3 1/3", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "0 1/2 1/2 0 -1", "1/3 0 1/3 1/3 1/3"],
    "Z1X2": ["1/3 1/3 0 1/3 1/3", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "0 1/2 1/2 0 -1", "1/3 0 1/3 1/3 1/3"],
    "Z1Y2": ["1/3 0 1/3 1/3 1/3", "1/3 1/3 1/3 0 -1/3", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 0 1/3 1/3", "0 1/2 1/2 0 -1"],
    "Z1Z2": ["0 1/2 1/2 0 -1", "1/2 0 0 1/2 1", "0 1/3 1/3 1/3 -1/3", "1/3 1/3 1/3 0 -1/3", "1/3 0 1/3 1/3 1/3", "1/3 1/3 0 1/3 1/3"],
}


class CorrelationTestMixin:

    def setUp(self):
        self.service = CorrelationService(2)
        self.system = spin_system(2)
        self.space = two_state_space(2)

    def obs(self, name):
        return self.system.observable(name)

    def po(self, first, second):
        return ProductObservable(self.obs(first), self.obs(second))


class JointProbabilityTests(CorrelationTestMixin, SimpleTestCase):

    def test_correlation_table(self):
        rows = two_particle_table(2)
        self.assertEqual(len(rows), 54)
        expected = [
            (name, state, *[F(v) for v in values.split()])
            for name, columns in CORRELATION_TABLE.items()
            for state, values in zip(ENTANGLED, columns)
        ]
        got = [
            (r['observable'], r['state'], r['p_pp'], r['p_pm'], r['p_mp'], r['p_mm'], r['expectation'])
            for r in rows
        ]
        self.assertEqual(got, expected)

    def test_reference_entries(self):
        dist = self.service.joint_probabilities(self.po("X", "X"), self.space.state("S"))
        self.assertEqual([dist.p[o] for o in ((1, 1), (1, -1), (-1, 1), (-1, -1))], [0, F(1, 2), F(1, 2), 0])
        self.assertEqual(self.service.correlation(self.po("Y", "Z"), self.space.state("S")), F(1, 3))
        self.assertEqual(self.service.correlation(self.po("X", "X"), self.space.state("(bc)")), 1)

    def test_normalization(self):
        for q in (2, 3):
            service = CorrelationService(q)
            for first, second in product(service.system.observables, repeat=2):
                for state in service.space.states:
                    dist = service.joint_probabilities(ProductObservable(first, second), state)
                    self.assertEqual(sum(dist.p.values()), 1)

    def test_factorization_on_product_states(self):
        for q in (2, 3):
            service = CorrelationService(q)
            one = service.space.one
            for s1, s2 in product(one.points, repeat=2):
                state = service.space.state(s1.label + s2.label)
                for first, second in product(service.system.canonical, repeat=2):
                    joint = service.joint_probabilities(ProductObservable(first, second), state)
                    d1 = service.system.outcome_probabilities(first, s1)
                    d2 = service.system.outcome_probabilities(second, s2)
                    marginal = {1: (d1.p_plus, d2.p_plus), -1: (d1.p_minus, d2.p_minus)}
                    for x, y in joint.p:
                        self.assertEqual(joint.p[(x, y)], marginal[x][0] * marginal[y][1])
                    self.assertEqual(joint.correlation, d1.expectation * d2.expectation)

    def test_rotation_transports_table_entries(self):
        # (ab) on particle 1 maps S to (ab) and Y to X
        left = self.service.joint_probabilities(self.po("Y", "X"), self.space.state("S"))
        right = self.service.joint_probabilities(self.po("X", "X"), self.space.state("(ab)"))
        self.assertEqual(left.p[(1, 1)], right.p[(-1, 1)])

    def test_local_rotation_covariance(self):
        from entanglement.services import local_action
        from spin.services import relabel_action
        group = pgl_group(2)
        for elt in group.elements:
            for state in self.space.entangled:
                moved_state = local_action(2, elt.perm, 1, state)
                for first, second in product(self.system.canonical, repeat=2):
                    sign, moved = relabel_action(2, elt.perm, first)
                    before = self.service.joint_probabilities(ProductObservable(first, second), state)
                    after = self.service.joint_probabilities(ProductObservable(moved, second), moved_state)
                    for x, y in before.p:
                        self.assertEqual(after.p[(sign * x, y)], before.p[(x, y)])


class ChshTests(CorrelationTestMixin, SimpleTestCase):

    def test_reference_values(self):
        s = self.space.state("S")
        self.assertEqual(self.service.chsh_value(self.obs("X"), self.obs("Z"), self.obs("Y"), self.obs("Z"), s), 2)
        self.assertEqual(self.service.chsh_value(self.obs("X"), self.obs("Y"), self.obs("Y"), self.obs("X"), s), -2)
        self.assertEqual(self.service.chsh_value(self.obs("X"), self.obs("X"), self.obs("X"), self.obs("X"), s), -2)

    def test_symmetry_identities(self):
        observables = self.system.observables
        s = self.space.state("(abc)")
        value = self.service.chsh_value
        for a1, a2, b1, b2 in product(observables[:4], repeat=4):
            v = value(a1, a2, b1, b2, s)
            self.assertEqual(v, value(a1, a2.negate(), b2, b1, s))
            self.assertEqual(v, -value(a1.negate(), a2, b2, b1, s))

    def test_gf2_bound(self):
        result = chsh_maximize(2)
        self.assertEqual(result.max_abs, 2)
        self.assertEqual({F(k, 12) for k in result.histogram}, {F(2), F(2, 3)})
        settings = {
            (tuple(o.display for o in r.settings), r.state.label, r.value) for r in result.achievers
        }
        self.assertIn((("X", "Y", "Y", "X"), "S", F(-2)), settings)
        self.assertIn((("X", "Z", "Y", "Z"), "S", F(2)), settings)

    def test_histogram_counts_magnitudes(self):
        for q in (2, 3):
            result = chsh_maximize(q)
            self.assertTrue(all(k >= 0 for k in result.histogram))
            self.assertEqual(sum(result.histogram.values()), result.settings_count)
            self.assertEqual(max(result.histogram), result.max_scaled)
        body = chsh_report(3)
        self.assertTrue(all(row["value"] >= 0 for row in body["histogram"]))

    def test_gf2_product_states(self):
        result = chsh_maximize(2, include_product=True)
        self.assertEqual(result.max_abs, 2)
        self.assertEqual(result.state_count, 15)

    def test_pruning_keeps_maximum(self):
        for q in (2, 3):
            pruned = chsh_maximize(q, prune=True)
            full = chsh_maximize(q, prune=False)
            self.assertEqual(pruned.max_abs, full.max_abs)
            self.assertEqual(full.settings_count, ((q + 1) * q) ** 4 * len(two_state_space(q).entangled))

    def test_thread_count_does_not_change_result(self):
        single = chsh_report(3, threads=1)
        several = chsh_report(3, threads=4)
        self.assertEqual(single, several)

    @override_settings(GQM_CHSH_ACHIEVER_LIMIT=5)
    def test_achiever_limit(self):
        result = chsh_maximize(2, prune=False)
        self.assertEqual(len(result.achievers), 5)
        self.assertGreater(result.achiever_count, 5)
        self.assertEqual(result.achievers[0].state.label, "S")
