from itertools import product

from django.test import SimpleTestCase, override_settings

from .services import (
    FieldBuilder, FieldDivisionError, FieldError, abs_value, build_field, field_for_order,
    field_table_report,
)

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)


class FieldConstructionTests(SimpleTestCase):

    def test_gf2_addition(self):
        gf2 = build_field(2, 1)
        self.assertEqual(gf2.add(1, 1), 0)
        self.assertEqual(gf2.mul(1, 1), 1)

    def test_gf4_omega_tables(self):
        gf4 = build_field(2, 2)
        omega, omega2 = 2, 3
        self.assertEqual(gf4.irreducible, (1, 1, 1))
        self.assertEqual(gf4.mul(omega, omega2), 1)
        self.assertEqual(gf4.add(omega, omega2), 1)
        self.assertEqual(gf4.mul(omega, omega), omega2)
        self.assertEqual(gf4.add(omega, 1), omega2)
        self.assertEqual(gf4.repr_names, ("0", "1", "ω", "ω²"))

    def test_gf5_inverse(self):
        gf5 = build_field(5, 1)
        self.assertEqual(gf5.mul(2, 3), 1)
        self.assertEqual(gf5.inv(2), 3)
        self.assertEqual(gf5.mul(4, 4), 1)
        self.assertEqual(gf5.name(3), "-2")

    def test_gf3_addition(self):
        gf3 = build_field(3, 1)
        self.assertEqual(gf3.add(2, 2), 1)
        self.assertEqual(gf3.name(2), "-1")

    def test_prime_fields_are_integers_mod_p(self):
        for p in (2, 3, 5, 7):
            field = build_field(p)
            for a, b in product(range(p), repeat=2):
                self.assertEqual(field.add(a, b), (a + b) % p)
                self.assertEqual(field.mul(a, b), (a * b) % p)

    def test_build_is_deterministic(self):
        first = FieldBuilder().build(3, 2)
        second = FieldBuilder().build(3, 2)
        self.assertEqual(first, second)
        self.assertIs(build_field(2, 2), build_field(2, 2))

    def test_explicit_irreducible(self):
        gf8 = build_field(2, 3, irreducible=[1, 0, 1, 1])
        self.assertEqual(gf8.irreducible, (1, 0, 1, 1))
        self.assertEqual(gf8.q, 8)

    def test_field_for_order(self):
        self.assertEqual(field_for_order(9).p, 3)
        self.assertEqual(field_for_order(9).n, 2)
        with self.assertRaises(FieldError):
            field_for_order(6)

    def test_generic_names_use_generator_powers(self):
        gf7 = build_field(7)
        self.assertEqual(gf7.name(0), "0")
        self.assertEqual(gf7.name(1), "1")
        self.assertEqual(gf7.name(gf7.generator), "g^1")

    def test_table_report(self):
        body = field_table_report(build_field(2, 2))
        self.assertEqual(body['irreducible'], [1, 1, 1])
        self.assertEqual(body['names'], ["0", "1", "ω", "ω²"])
        self.assertEqual(body['mul'][2][3], 1)
        self.assertEqual(body['multiplicative_orders'], {"1": 1, "ω": 3, "ω²": 3})
        gf5 = field_table_report(build_field(5))
        self.assertEqual(gf5['generator'], "2")
        self.assertEqual(gf5['multiplicative_orders'], {"1": 1, "2": 4, "-2": 4, "-1": 2})


class FieldAxiomTests(SimpleTestCase):

    def test_axioms_exhaustive(self):
        for q in SUPPORTED_ORDERS:
            field = field_for_order(q)
            elems = field.elements
            for a in elems:
                self.assertEqual(field.add(a, 0), a)
                self.assertEqual(field.mul(a, 1), a)
                self.assertEqual(field.add(a, field.neg(a)), 0)
                if a:
                    self.assertEqual(field.mul(a, field.inv(a)), 1)
            for a, b in product(elems, repeat=2):
                self.assertEqual(field.add(a, b), field.add(b, a), f"q={q}")
                self.assertEqual(field.mul(a, b), field.mul(b, a), f"q={q}")
            for a, b, c in product(elems, repeat=3):
                self.assertEqual(field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
                self.assertEqual(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
                self.assertEqual(
                    field.mul(a, field.add(b, c)),
                    field.add(field.mul(a, b), field.mul(a, c)),
                )

    def test_multiplicative_group_is_cyclic(self):
        for q in SUPPORTED_ORDERS:
            field = field_for_order(q)
            self.assertEqual(field.multiplicative_order(field.generator), q - 1)
            powers, power = set(), 1
            for _ in range(q - 1):
                powers.add(power)
                power = field.mul(power, field.generator)
            self.assertEqual(powers, set(field.nonzero))

    def test_abs_value(self):
        gf4 = build_field(2, 2)
        self.assertEqual(abs_value(0), 0)
        self.assertEqual(abs_value(1), 1)
        self.assertEqual(gf4.abs_value(2), 1)

    def test_abs_value_is_multiplicative(self):
        for q in SUPPORTED_ORDERS:
            field = field_for_order(q)
            for a, b in product(field.elements, repeat=2):
                self.assertEqual(abs_value(field.mul(a, b)), abs_value(a) * abs_value(b))


class FieldErrorTests(SimpleTestCase):

    def test_non_prime(self):
        with self.assertRaises(FieldError):
            build_field(4, 1)

    def test_reducible_polynomial(self):
        # x^2 + 1 = (x + 1)^2 over GF(2)
        with self.assertRaises(FieldError):
            build_field(2, 2, irreducible=[1, 0, 1])

    def test_wrong_degree_polynomial(self):
        with self.assertRaises(FieldError):
            build_field(2, 2, irreducible=[1, 1, 0, 1])

    def test_order_cap(self):
        with self.assertRaises(FieldError):
            build_field(17)

    @override_settings(GQM_MAX_FIELD_ORDER=4)
    def test_order_cap_from_settings(self):
        with self.assertRaises(FieldError):
            FieldBuilder().build(5)

    def test_division_by_zero(self):
        gf3 = build_field(3)
        with self.assertRaises(FieldDivisionError):
            gf3.div(1, 0)
        with self.assertRaises(ZeroDivisionError):
            gf3.inv(0)
