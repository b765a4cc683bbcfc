from fractions import Fraction

from django.test import SimpleTestCase

from geometry.services import UnknownLabel
from symmetry.services import UnrealizablePermutation, pgl_group

from .services import (
    Observable, eigenstate_report, enumerate_observables, one_particle_table, relabel_action,
    relabel_table, signed_display, spin_system,
)

F = Fraction

# (observable, state, P(+), P(-), expectation)
ONE_PARTICLE_TABLE = [
    ("Z", "a", F(0), F(1), F(-1)), ("Z", "b", F(1), F(0), F(1)), ("Z", "c", F(1, 2), F(1, 2), F(0)),
    ("X", "a", F(1, 2), F(1, 2), F(0)), ("X", "b", F(0), F(1), F(-1)), ("X", "c", F(1), F(0), F(1)),
    ("Y", "a", F(1), F(0), F(1)), ("Y", "b", F(1, 2), F(1, 2), F(0)), ("Y", "c", F(0), F(1), F(-1)),
]


class ObservableTests(SimpleTestCase):

    def test_counts(self):
        for q in (2, 3, 4, 5):
            system = spin_system(q)
            self.assertEqual(len(system.observables), (q + 1) * q)
            self.assertEqual(len(system.canonical), (q + 1) * q // 2)
        self.assertEqual(len(enumerate_observables(4)), 20)

    def test_aliases(self):
        system = spin_system(2)
        self.assertEqual(system.observable("Z").name, "A_ab")
        self.assertEqual(system.observable("X").name, "A_bc")
        self.assertEqual(system.observable("Y").name, "A_ca")
        self.assertEqual(system.observable("-X").name, "A_cb")
        self.assertEqual([o.display for o in system.canonical], ["Z", "X", "Y"])

    def test_no_aliases_beyond_gf2(self):
        system = spin_system(3)
        self.assertTrue(all(o.alias is None for o in system.observables))
        self.assertEqual(system.canonical[0].name, "A_ab")

    def test_negation_swaps_labels(self):
        z = spin_system(2).observable("Z")
        self.assertEqual(z.negate(), Observable(plus="b", minus="a", alias="-Z"))
        self.assertEqual(z.negate().negate(), z)

    def test_unknown_observable(self):
        with self.assertRaises(UnknownLabel):
            spin_system(2).observable("W")


class ProbabilityTests(SimpleTestCase):

    def test_one_particle_table(self):
        rows = one_particle_table(2)
        got = [(r['observable'], r['state'], r['p_plus'], r['p_minus'], r['expectation']) for r in rows]
        self.assertEqual(got, ONE_PARTICLE_TABLE)

    def test_gf3_equal_split(self):
        system = spin_system(3)
        dist = system.outcome_probabilities(system.observable("A_cd"), system.space.point("a"))
        self.assertEqual((dist.p_plus, dist.p_minus), (F(1, 2), F(1, 2)))

    def test_normalization(self):
        for q in (3, 4, 5):
            rows = one_particle_table(q, signed=True)
            self.assertEqual(len(rows), (q + 1) * q * (q + 1))
            for row in rows:
                self.assertEqual(row['p_plus'] + row['p_minus'], 1)

    def test_eigenstate_behaviour(self):
        for q in (2, 3, 4, 5):
            system = spin_system(q)
            for r in system.space.points:
                for s in system.space.labels:
                    if s == r.label:
                        continue
                    self.assertEqual(system.expectation(system.observable_for(r.label, s), r), -1)
                    self.assertEqual(system.expectation(system.observable_for(s, r.label), r), 1)

    def test_eigenstate_report(self):
        for row in eigenstate_report(2):
            self.assertEqual(len(row['observables']), 2)
        self.assertEqual(eigenstate_report(2)[0]['observables'], ["Z", "Y"])
        for row in eigenstate_report(5):
            self.assertEqual(len(row['observables']), 5)

    def test_rescaling_invariance(self):
        system = spin_system(5)
        for obs in system.observables:
            for state in system.space.points:
                expected = system.outcome_probabilities(obs, state)
                for scaled in state.orbit:
                    moved = state.__class__(label=state.label, rep=scaled, orbit=state.orbit)
                    self.assertEqual(system.outcome_probabilities(obs, moved), expected)


# Signed image g·A of each canonical observable under the non-identity relabelings of GF(2) states.
S3_RELABELINGS = {
    "(ab)": {"X": "-Y", "Y": "-X", "Z": "-Z"},
    "(bc)": {"X": "-X", "Y": "-Z", "Z": "-Y"},
    "(ca)": {"X": "-Z", "Y": "-Y", "Z": "-X"},
    "(abc)": {"X": "+Y", "Y": "+Z", "Z": "+X"},
    "(acb)": {"X": "+Z", "Y": "+X", "Z": "+Y"},
}


class RelabelTests(SimpleTestCase):

    def setUp(self):
        self.system = spin_system(2)
        self.group = pgl_group(2)

    def test_transposition_flips_z(self):
        sign, obs = relabel_action(2, self.group.parse("(ab)"), self.system.observable("Z"))
        self.assertEqual((sign, obs.display), (-1, "Z"))

    def test_three_cycle_maps_x_to_y(self):
        sign, obs = relabel_action(2, self.group.parse("(abc)"), self.system.observable("X"))
        self.assertEqual((sign, obs.display), (1, "Y"))

    def test_identity(self):
        sign, obs = relabel_action(2, self.group.parse("e"), self.system.observable("X"))
        self.assertEqual((sign, obs.display), (1, "X"))

    def test_unrealizable(self):
        group4 = pgl_group(4)
        with self.assertRaises(UnrealizablePermutation):
            relabel_action(4, group4.parse("(ab)"), spin_system(4).canonical[0])

    def test_s3_relabelings(self):
        for cycles, images in S3_RELABELINGS.items():
            for name, image in images.items():
                sign, obs = relabel_action(2, self.group.parse(cycles), self.system.observable(name))
                self.assertEqual(signed_display(sign, obs), image, f"{cycles}{name}")

    def test_relabel_table_matches_s3_list(self):
        table = {
            (self.group.parse(row["permutation"]), row["observable"]): row["image"]
            for row in relabel_table(2)
        }
        expected = {
            (self.group.parse(cycles), name): image
            for cycles, images in S3_RELABELINGS.items()
            for name, image in images.items()
        }
        expected.update({(self.group.parse("e"), name): f"+{name}" for name in ("X", "Y", "Z")})
        self.assertEqual(table, expected)

    def test_relabel_table_size(self):
        self.assertEqual(len(relabel_table(2)), 6 * 3)
        self.assertIn({'permutation': "(ab)", 'observable': "Z", 'image': "-Z"}, relabel_table(2))

    def test_rotation_covariance(self):
        for q in (2, 3, 4):
            system = spin_system(q)
            labels = system.space.labels
            for elt in pgl_group(q).elements:
                image = elt.perm.array_form
                for obs in system.canonical:
                    sign, moved = relabel_action(q, elt.perm, obs)
                    for state in system.space.points:
                        before = system.outcome_probabilities(obs, state)
                        after = system.outcome_probabilities(moved, system.space.points[image[labels.index(state.label)]])
                        if sign < 0:
                            after = after.__class__(p_plus=after.p_minus, p_minus=after.p_plus)
                        self.assertEqual(after, before)
