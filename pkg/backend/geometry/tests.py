from itertools import product

from django.test import SimpleTestCase

from fields.services import abs_value, field_for_order

from .services import (
    GeometryError, UnknownLabel, bracket, canonicalize, derive_dual_basis, enumerate_lines,
    enumerate_planes, enumerate_states, geometry_report, product_grid_check, projective_space,
    states_report,
)


class StateEnumerationTests(SimpleTestCase):

    def test_gf2_states(self):
        states = enumerate_states(field_for_order(2), 2)
        self.assertEqual([(s.label, s.rep) for s in states], [("a", (1, 0)), ("b", (0, 1)), ("c", (1, 1))])

    def test_gf5_states(self):
        space = projective_space(5)
        self.assertEqual(len(space.points), 6)
        self.assertEqual(space.point("c").rep, (2, 1))
        # -2 is index 3 in GF(5)
        self.assertEqual(space.point("e").rep, (3, 1))

    def test_state_counts(self):
        for q, expected in ((2, 3), (3, 4), (4, 5), (5, 6), (7, 8)):
            self.assertEqual(len(projective_space(q).points), expected)
        self.assertEqual(len(projective_space(2, 4).points), 15)
        self.assertEqual(len(projective_space(3, 4).points), 40)
        self.assertEqual(len(projective_space(3, 3).points), 13)

    def test_canonical_rep_last_nonzero_is_one(self):
        for q in (2, 3, 4, 5):
            for N in (2, 3):
                for point in projective_space(q, N).points:
                    nonzero = [x for x in point.rep if x]
                    self.assertEqual(nonzero[-1], 1)
                    self.assertEqual(len(point.orbit), q - 1)

    def test_generic_labels(self):
        self.assertEqual(projective_space(7).labels[:3], ["a", "b", "c"])
        self.assertEqual(projective_space(3, 4).labels[0], "[0,0,0,1]")

    def test_locate_rescaled_vector(self):
        space = projective_space(5)
        self.assertEqual(space.locate((4, 2)).label, "c")

    def test_unknown_label(self):
        with self.assertRaises(UnknownLabel):
            projective_space(2).point("z")

    def test_single_level_rejected(self):
        with self.assertRaises(GeometryError):
            enumerate_states(field_for_order(2), 1)

    def test_zero_vector_has_no_canonical_form(self):
        with self.assertRaises(GeometryError):
            canonicalize(field_for_order(3), (0, 0))


class DualBasisTests(SimpleTestCase):

    def test_gf2_duals(self):
        space = projective_space(2)
        self.assertEqual([d.rep for d in space.duals], [(0, 1), (1, 0), (1, 1)])

    def test_reference_brackets(self):
        gf3 = projective_space(3)
        c_bar = gf3.duals[gf3.index("c")]
        self.assertEqual(gf3.field.name(bracket(gf3.field, c_bar.rep, gf3.point("d").rep)), "-1")

        gf4 = projective_space(4)
        b_bar = gf4.duals[gf4.index("b")]
        self.assertEqual(gf4.field.name(bracket(gf4.field, b_bar.rep, gf4.point("c").rep)), "ω")

        gf5 = projective_space(5)
        c_bar = gf5.duals[gf5.index("c")]
        self.assertEqual(gf5.field.name(bracket(gf5.field, c_bar.rep, gf5.point("b").rep)), "-2")

    def test_pairing_is_one_minus_delta(self):
        for q in (2, 3, 4, 5, 7):
            space = projective_space(q)
            for dual, state in product(space.duals, space.points):
                value = abs_value(bracket(space.field, dual.rep, state.rep))
                self.assertEqual(value, 0 if dual.state_label == state.label else 1)

    def test_rescaling_keeps_absolute_brackets(self):
        for q in (3, 4, 5):
            space = projective_space(q)
            for dual, state in product(space.duals, space.points):
                expected = abs_value(bracket(space.field, dual.rep, state.rep))
                for scaled in state.orbit:
                    self.assertEqual(abs_value(bracket(space.field, dual.rep, scaled)), expected)

    def test_bracket_dimension_mismatch(self):
        with self.assertRaises(GeometryError):
            bracket(field_for_order(2), (1, 0), (1, 0, 0))

    def test_bracket_with_zero_vector(self):
        self.assertEqual(bracket(field_for_order(4), (2, 3), (0, 0)), 0)

    def test_duals_need_two_levels(self):
        with self.assertRaises(GeometryError):
            derive_dual_basis(field_for_order(2), projective_space(2, 4).points)


class IncidenceTests(SimpleTestCase):

    def setUp(self):
        self.space = projective_space(2, 4)
        self.lines = enumerate_lines(self.space)

    def test_line_counts(self):
        self.assertEqual(len(self.lines), 35)
        for label in self.space.labels:
            self.assertEqual(sum(1 for line in self.lines if label in line), 7)

    def test_lines_through_singlet(self):
        lines = {frozenset(line.labels) for line in self.lines}
        for triple in (("ab", "ba", "S"), ("aa", "S", "(bc)"), ("cc", "S", "(ab)")):
            self.assertIn(frozenset(triple), lines)
        self.assertNotIn(frozenset(("aa", "bb", "S")), lines)

    def test_singlet_diagonal_plane(self):
        planes, _ = enumerate_planes(self.space, self.lines)
        self.assertTrue(any({"aa", "bb", "cc", "S"} <= set(plane.labels) for plane in planes))

    def test_planes(self):
        planes, memberships = enumerate_planes(self.space, self.lines)
        self.assertEqual(len(planes), 15)
        self.assertTrue(all(len(plane.labels) == 7 for plane in planes))
        self.assertEqual(set(memberships.values()), {3})

    def test_product_grid(self):
        grid = product_grid_check(self.space, self.lines)
        self.assertEqual(len(grid.grid_lines), 6)
        self.assertTrue(grid.is_grid)
        self.assertIn(("aa", "ab", "ac"), [line.labels for line in grid.rows])
        self.assertIn(("aa", "bb", "cc"), grid.decompositions["S"])
        self.assertTrue(grid.all_transversal)
        self.assertTrue(grid.non_planar)
        self.assertEqual(grid.max_grid_lines_per_plane, 2)

    def test_broken_grid_raises(self):
        lines = [line for line in self.lines if set(line.labels) != {"aa", "ab", "ac"}]
        with self.assertRaises(GeometryError):
            product_grid_check(self.space, lines)

    def test_wrong_geometry(self):
        with self.assertRaises(GeometryError):
            enumerate_lines(projective_space(3, 4))


class ReportBodyTests(SimpleTestCase):

    def test_states_report(self):
        body = states_report(4)
        self.assertEqual(body['state_count'], 5)
        self.assertEqual(body['rows'][2]['coords'], ["ω", "1"])
        self.assertEqual(len(body['action']), 5)
        self.assertEqual(body['action'][0]['values'][0], "0")

    def test_geometry_report(self):
        body = geometry_report(2)
        self.assertEqual(body['line_count'], 35)
        self.assertEqual(body['lines_per_point'], [7])
        self.assertEqual(body['planes_per_line'], [3])
        self.assertEqual(len(body['rows']), 6)
