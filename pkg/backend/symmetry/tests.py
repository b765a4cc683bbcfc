from django.test import SimpleTestCase
from sympy.combinatorics import Permutation

from fields.services import abs_value
from geometry.services import bracket, canonicalize, projective_space

from .services import (
    GroupError, UnrealizablePermutation, canonical_matrix, conjugacy_classes, cycle_notation,
    enumerate_pgl, fingerprint, fingerprint_match, group_report, mat_inverse, mat_vec, pgl_group,
    permutation_image, realizable_label_permutations, reference_group, s6_census_report,
)

S6_CENSUS_COUNTS = [20, 24, 30, 0, 20, 0, 10, 15, 0, 0, 1]
S6_CLASS_SIZES = [120, 144, 90, 90, 40, 120, 15, 45, 40, 15, 1]


class EnumerationTests(SimpleTestCase):

    def test_orders(self):
        for q in (2, 3, 4, 5, 7):
            self.assertEqual(len(enumerate_pgl(q)), q * (q * q - 1))

    def test_only_two_levels(self):
        with self.assertRaises(GroupError):
            enumerate_pgl(2, N=3)

    def test_canonical_matrices_absorb_scalars(self):
        for q in (3, 4, 5):
            group = pgl_group(q)
            field = group.field
            for elt in group.elements:
                for k in field.nonzero:
                    scaled = tuple(tuple(field.mul(k, x) for x in row) for row in elt.matrix)
                    self.assertEqual(canonical_matrix(field, scaled), elt.matrix)
                    self.assertEqual(group.element(scaled).perm, elt.perm)

    def test_action_preserves_pairing(self):
        for q in (2, 3, 4, 5):
            group = pgl_group(q)
            field, space = group.field, group.space
            duals = space.duals
            for elt in group.elements:
                m_inv = mat_inverse(field, elt.matrix)
                for r, state in enumerate(space.points):
                    # r̄ M⁻¹ is the dual of the image state
                    moved_dual = tuple(field.dot(duals[r].rep, col) for col in zip(*m_inv))
                    image = elt.perm.array_form[r]
                    self.assertEqual(canonicalize(field, moved_dual), canonicalize(field, duals[image].rep))
                    for s in space.points:
                        moved = mat_vec(field, elt.matrix, s.rep)
                        self.assertEqual(
                            abs_value(bracket(field, moved_dual, moved)),
                            abs_value(bracket(field, duals[r].rep, s.rep)),
                        )


class ImageTests(SimpleTestCase):

    def test_images(self):
        expected = {2: "S3", 3: "S4", 4: "A5", 5: "proper subgroup of S6"}
        for q, name in expected.items():
            image = permutation_image(enumerate_pgl(q), q)
            self.assertEqual(image['identification'], name)
        self.assertEqual(permutation_image(enumerate_pgl(4), 4)['odd'], 0)

    def test_realizable_permutations(self):
        group3 = pgl_group(3)
        self.assertIn(group3.parse("(ab)"), realizable_label_permutations(3))
        self.assertEqual(group3.witness(group3.parse("(ab)")), ((0, 1), (1, 0)))

        group2 = pgl_group(2)
        self.assertIn(group2.parse("(abc)"), realizable_label_permutations(2))

        group4 = pgl_group(4)
        with self.assertRaises(UnrealizablePermutation):
            group4.witness(group4.parse("(ab)"))
        group4.witness(group4.parse("(ab)(cd)"))

    def test_cycle_notation_round_trip(self):
        group = pgl_group(5)
        for elt in group.elements:
            self.assertEqual(group.parse(cycle_notation(elt.perm, group.labels)), elt.perm)

    def test_parse_rejects_bad_text(self):
        group = pgl_group(2)
        with self.assertRaises(UnrealizablePermutation):
            group.parse("(az)")
        with self.assertRaises(UnrealizablePermutation):
            group.parse("ab")
        self.assertEqual(group.parse("e"), Permutation([0, 1, 2]))


class FingerprintTests(SimpleTestCase):

    def test_identifications(self):
        pairs = {2: ('S', 3), 3: ('S', 4), 4: ('A', 5), 5: ('S', 5)}
        for q, (kind, n) in pairs.items():
            pgl = fingerprint([e.perm for e in enumerate_pgl(q)])
            self.assertTrue(fingerprint_match(pgl, fingerprint(reference_group(kind, n))), f"q={q}")

    def test_pgl23_is_not_a4(self):
        pgl = fingerprint([e.perm for e in enumerate_pgl(3)])
        self.assertFalse(fingerprint_match(pgl, fingerprint(reference_group('A', 4))))

    def test_pgl25_classes(self):
        fp = fingerprint([e.perm for e in enumerate_pgl(5)])
        self.assertEqual(fp.class_count, 7)
        self.assertEqual(sum(size for _, size in fp.class_data), 120)
        self.assertEqual(fp.parity_split, (60, 60))

    def test_identity_is_a_singleton_class(self):
        perms = [e.perm for e in enumerate_pgl(4)]
        classes = conjugacy_classes(perms)
        identity = [cls for cls in classes if cls[0].is_Identity]
        self.assertEqual(len(identity), 1)
        self.assertEqual(len(identity[0]), 1)

    def test_closure_failure(self):
        with self.assertRaises(GroupError):
            conjugacy_classes([Permutation([0, 1, 2]), Permutation([1, 2, 0])])

    def test_even_half_matches_a5(self):
        body = group_report(5)
        self.assertTrue(body['even_half_matches_A5'])
        self.assertTrue(body['fingerprint_match'])


class CensusTests(SimpleTestCase):

    def test_s6_census_column(self):
        body = s6_census_report(5)
        self.assertEqual([row['count'] for row in body['rows']], S6_CENSUS_COUNTS)
        self.assertEqual([row['class_size'] for row in body['rows']], S6_CLASS_SIZES)
        self.assertEqual(body['rows'][0]['cycle_type'], "(6)")
        self.assertEqual(body['total'], 120)
        self.assertEqual(body['class_count'], 7)

    def test_census_needs_q5(self):
        with self.assertRaises(GroupError):
            s6_census_report(3)

    def test_generic_census_covers_group(self):
        body = group_report(3)
        self.assertEqual(sum(row['count'] for row in body['rows']), 24)
        self.assertEqual(sum(row['class_size'] for row in body['rows']), 24)
        self.assertEqual(body['rows'][0]['cycle_type'], "(4)")
