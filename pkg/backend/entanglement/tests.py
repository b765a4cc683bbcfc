from itertools import product
from unittest.mock import patch

from django.test import SimpleTestCase

from geometry.services import GeometryError, UnknownLabel, projective_space
from symmetry.services import UnrealizablePermutation, pgl_group

from .services import (
    alternate_singlet_forms, build_multiplets, diagonal_action, is_entangled, is_product_by_search,
    is_swap_symmetric, local_action, orbits, tensor, two_state_space, two_states_report,
)


class TensorTests(SimpleTestCase):

    def test_products(self):
        one = projective_space(2)
        field = one.field
        self.assertEqual(tensor(field, one.point("a"), one.point("b")), (0, 1, 0, 0))
        self.assertEqual(tensor(field, one.point("c"), one.point("c")), (1, 1, 1, 1))

    def test_phases_do_not_matter(self):
        one = projective_space(5)
        field = one.field
        s1, s2 = one.point("c"), one.point("e")
        expected = tensor(field, s1, s2)
        for scaled in s1.orbit:
            moved = s1.__class__(label=s1.label, rep=scaled, orbit=s1.orbit)
            self.assertEqual(tensor(field, moved, s2), expected)

    def test_products_are_never_entangled(self):
        for q in (2, 3, 4, 5):
            one = projective_space(q)
            for s1, s2 in product(one.points, repeat=2):
                self.assertFalse(is_entangled(one.field, tensor(one.field, s1, s2)))


class EntanglementTests(SimpleTestCase):

    def test_gf2_catalog(self):
        space = two_state_space(2)
        self.assertEqual(len(space.states), 15)
        self.assertEqual(len(space.products), 9)
        self.assertEqual(len(space.entangled), 6)
        self.assertTrue(space.state("S").entangled)
        self.assertFalse(space.state("aa").entangled)

    def test_determinant_agrees_with_search(self):
        for q in (2, 3):
            space = two_state_space(q)
            for state in space.states:
                self.assertEqual(state.entangled, not is_product_by_search(space.one, state.coords))

    def test_gf3_counts(self):
        space = two_state_space(3)
        self.assertEqual(len(space.states), 40)
        self.assertEqual(len(space.products), 16)
        self.assertEqual(len(space.entangled), 24)
        self.assertEqual(space.state("cd").coords, (2, 2, 1, 1))

    def test_unknown_state(self):
        with self.assertRaises(UnknownLabel):
            two_state_space(2).state("(abcd)")


class MultipletTests(SimpleTestCase):

    def test_catalog(self):
        catalog = build_multiplets(2)
        self.assertEqual(catalog.singlet.coords, (0, 1, 1, 0))
        self.assertEqual([s.coords for s in catalog.triplet], [(1, 0, 0, 1), (1, 1, 1, 0), (0, 1, 1, 1)])
        self.assertEqual([s.coords for s in catalog.doublet], [(1, 1, 0, 1), (1, 0, 1, 1)])
        self.assertEqual(len(catalog.product), 9)

    def test_diagonal_orbits(self):
        self.assertEqual(orbits(2, 'diagonal'), [("S",), ("(ab)", "(bc)", "(ca)"), ("(abc)", "(acb)")])

    def test_singlet_forms(self):
        self.assertTrue(all(form['equals_singlet'] for form in alternate_singlet_forms(2)))
        self.assertTrue(is_swap_symmetric(two_state_space(2).state("S")))

    def test_multiplets_need_gf2(self):
        with self.assertRaises(GeometryError):
            build_multiplets(3)

    def test_wrong_orbit_split_raises(self):
        split = [("S", "(ab)"), ("(bc)", "(ca)"), ("(abc)", "(acb)")]
        with patch("entanglement.services.orbits", return_value=split):
            with self.assertRaises(GeometryError):
                build_multiplets(2)


class ActionTests(SimpleTestCase):

    def setUp(self):
        self.space = two_state_space(2)
        self.group = pgl_group(2)

    def act(self, cycles, particle, label):
        return local_action(2, self.group.parse(cycles), particle, self.space.state(label)).label

    def test_reference_local_actions(self):
        self.assertEqual(self.act("(ab)", 1, "S"), "(ab)")
        self.assertEqual(self.act("(abc)", 1, "S"), "(acb)")
        self.assertEqual(self.act("(acb)", 1, "S"), "(abc)")
        self.assertEqual(self.act("(abc)", 2, "S"), "(abc)")
        self.assertEqual(self.act("(ab)", 1, "(bc)"), "(acb)")

    def test_singlet_is_diagonal_invariant(self):
        for elt in self.group.elements:
            self.assertEqual(diagonal_action(2, elt.perm, self.space.state("S")).label, "S")

    def test_all_entangled_states_equivalent(self):
        self.assertEqual(len(orbits(2, 'local')), 1)
        self.assertEqual(len(orbits(3, 'local')), 1)

    def test_local_actions_preserve_entanglement(self):
        for q in (2, 3):
            space = two_state_space(q)
            for elt in pgl_group(q).elements:
                for state in space.states:
                    for particle in (1, 2):
                        moved = local_action(q, elt.perm, particle, state)
                        self.assertEqual(moved.entangled, state.entangled)

    def test_bad_particle(self):
        with self.assertRaises(GeometryError):
            local_action(2, self.group.parse("e"), 3, self.space.state("S"))

    def test_unrealizable(self):
        group4 = pgl_group(4)
        with self.assertRaises(UnrealizablePermutation):
            local_action(4, group4.parse("(ab)"), 1, two_state_space(4).entangled[0])


class ReportTests(SimpleTestCase):

    def test_two_states_report(self):
        body = two_states_report(2)
        self.assertEqual(body['entangled_count'], 6)
        self.assertEqual(body['diagonal_orbit_sizes'], [1, 3, 2])
        self.assertEqual(body['local_orbit_sizes'], [6])
        self.assertEqual(body['states'][9], {'label': "S", 'coords': ["0", "1", "1", "0"], 'entangled': True})
