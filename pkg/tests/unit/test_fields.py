"""Unit tests for finite fields and abelian group characters."""

import math

import numpy as np
import pytest

from src.core.exceptions import FieldError
from src.fields import (
    canonical_irreducible,
    char_eval,
    character_sums,
    ff_arith,
    ff_create,
    ff_norm,
    field_of_order,
    group_elements,
    is_irreducible,
    is_prime,
    prime_power,
    quad_char,
)


class TestPrimes:
    """Test primality and prime-power detection."""

    def test_is_prime(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_prime_power(self):
        assert prime_power(13) == (13, 1)
        assert prime_power(16) == (2, 4)
        assert prime_power(25) == (5, 2)
        assert prime_power(12) is None
        assert prime_power(1) is None

    def test_irreducibility(self):
        assert is_irreducible((1, 1, 0, 0, 1), 2)  # x^4 + x + 1
        assert is_irreducible((1, 0, 1), 3)  # x^2 + 1 has no root mod 3
        assert not is_irreducible((1, 0, 1), 2)  # (x + 1)^2
        assert not is_irreducible((1, 2, 1), 3)  # (x + 1)^2

    def test_canonical_modulus_is_least(self):
        assert canonical_irreducible(2, 4) == (1, 1, 0, 0, 1)
        assert canonical_irreducible(13, 1) == (0, 1)


class TestFieldCreation:
    """Test ff_create and field_of_order."""

    def test_prime_field(self):
        field = ff_create(13)
        assert field.q == 13
        assert field.k == 1

    def test_extension_fields(self):
        assert ff_create(2, 4, (1, 1, 0, 0, 1)).q == 16
        assert ff_create(3, 2, (1, 0, 1)).q == 9

    def test_reducible_modulus_rejected(self):
        with pytest.raises(FieldError):
            ff_create(3, 2, (1, 2, 1))

    def test_non_monic_modulus_rejected(self):
        with pytest.raises(FieldError):
            ff_create(3, 2, (1, 0, 2))

    def test_non_prime_characteristic_rejected(self):
        with pytest.raises(FieldError):
            ff_create(4, 1)

    def test_creation_is_cached(self):
        assert ff_create(5, 2) is ff_create(5, 2)

    def test_field_of_order(self):
        assert field_of_order(9).p == 3
        with pytest.raises(FieldError):
            field_of_order(12)


class TestArithmetic:
    """Test element arithmetic against hand-computed values."""

    def test_gf16_product_without_reduction(self):
        field = ff_create(2, 4, (1, 1, 0, 0, 1))
        assert field([1, 1]) * field([0, 1]) == field([0, 1, 1])

    def test_gf16_reduction(self):
        field = ff_create(2, 4, (1, 1, 0, 0, 1))
        x = field([0, 1])
        # x^4 = x + 1
        assert x**4 == field([1, 1])

    def test_inverse_mod_13(self):
        field = ff_create(13)
        assert field(2).inverse() == field(7)
        assert ff_arith(field(2), None, "inv") == field(7)

    def test_inverse_of_zero(self):
        with pytest.raises(FieldError):
            ff_create(13).zero.inverse()

    def test_group_order_gf9(self):
        field = ff_create(3, 2, (1, 0, 1))
        for x in field.elements()[1:]:
            assert x**8 == field.one

    def test_generator_is_primitive(self):
        field = ff_create(3, 2)
        g = field.generator
        powers = {(g**i).value for i in range(8)}
        assert len(powers) == 8

    def test_ff_arith_operations(self):
        field = ff_create(7)
        a, b = field(3), field(5)
        assert ff_arith(a, b, "add") == field(1)
        assert ff_arith(a, b, "sub") == field(5)
        assert ff_arith(a, b, "mul") == field(1)
        assert ff_arith(a, 3, "pow") == field(6)
        with pytest.raises(FieldError):
            ff_arith(a, b, "mod")

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldError):
            ff_create(5)(1) + ff_create(7)(1)

    def test_elements_are_immutable(self):
        x = ff_create(5)(2)
        with pytest.raises(AttributeError):
            x.value = 3

    def test_tables_agree_with_elements(self):
        field = ff_create(3, 2)
        for a in range(9):
            for b in range(9):
                assert field.addition_table[a, b] == (field(a) + field(b)).value
                assert field.multiplication_table[a, b] == (field(a) * field(b)).value


class TestCharacters:
    """Test the quadratic character and the norm map."""

    def test_quad_char_gf13(self):
        field = ff_create(13)
        assert quad_char(field, field(3)) == 1
        assert quad_char(field, field(0)) == 0
        assert quad_char(field, field(2)) == -1
        squares = {x for x in range(1, 13) if quad_char(field, field(x)) == 1}
        assert squares == {1, 3, 4, 9, 10, 12}

    def test_quad_char_undefined_in_characteristic_two(self):
        field = ff_create(2, 3)
        with pytest.raises(FieldError):
            quad_char(field, field.one)

    def test_quad_char_table_matches(self):
        field = ff_create(5, 2)
        table = field.quad_char_table()
        assert all(table[x.value] == quad_char(field, x) for x in field.elements())

    def test_norm(self):
        field = ff_create(3, 2)
        assert ff_norm(field, field.zero) == 0
        assert ff_norm(field, field.one) == 1
        assert ff_norm(field, field.generator) == 2

    def test_norm_is_multiplicative(self):
        field = ff_create(5, 2)
        p = field.p
        for a in field.elements()[1:6]:
            for b in field.elements()[1:6]:
                assert ff_norm(field, a * b) == ff_norm(field, a) * ff_norm(field, b) % p


class TestGroupCharacters:
    """Test characters of products of cyclic groups."""

    def test_trivial_character(self):
        assert char_eval([4, 6], [0, 0], [3, 5]) == 1

    def test_z4_sign(self):
        assert char_eval([4], [1], [2]) == -1

    def test_out_of_range(self):
        with pytest.raises(FieldError):
            char_eval([4], [4], [0])

    def test_group_elements_order(self):
        elements = group_elements([2, 3])
        assert elements.tolist() == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]

    def test_cycle_eigenvalues(self):
        sums = character_sums([5], [[1], [4]])
        expected = [2 * math.cos(2 * math.pi * j / 5) for j in range(5)]
        np.testing.assert_allclose(sums, expected, atol=1e-12)

    def test_hypercube_eigenvalues(self):
        basis = np.eye(4, dtype=int).tolist()
        sums = character_sums([2, 2, 2, 2], basis)
        assert sorted(set(np.round(sums).astype(int).tolist())) == [-4, -2, 0, 2, 4]
