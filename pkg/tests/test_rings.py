import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2tilings import (
    INTEGERS,
    POLYNOMIALS,
    ModularRing,
    RingMismatchError,
    StructuralError,
    UnsupportedOperationError,
    ValidationError,
    divexact,
    iter_terms,
    poly_eval,
)


def var(k):
    return POLYNOMIALS.variable(k)


def const(c):
    return POLYNOMIALS.value(c)


class TestIntegers:
    def test_basic_arithmetic(self):
        five = INTEGERS.value(5)
        three = INTEGERS.value(3)
        assert (five + three).payload == 8
        assert (five - three).payload == 2
        assert (five * three).payload == 15
        assert (-five).payload == -5

    def test_predicates(self):
        assert INTEGERS.zero().is_zero()
        assert INTEGERS.one().is_one()
        assert not INTEGERS.value(2).is_one()
        assert INTEGERS.value(7).constant_value() == 7

    def test_bigint(self):
        big = INTEGERS.value(10**40)
        assert (big * big).payload == 10**80

    def test_divexact(self):
        assert divexact(INTEGERS.value(6), INTEGERS.value(2)).payload == 3
        with pytest.raises(ArithmeticError):
            divexact(INTEGERS.value(7), INTEGERS.value(2))
        with pytest.raises(ZeroDivisionError):
            divexact(INTEGERS.value(7), INTEGERS.zero())

    def test_cross_ring_mix_rejected(self):
        with pytest.raises(RingMismatchError):
            INTEGERS.value(1) + ModularRing(5).value(1)


class TestModular:
    def test_canonical_residues(self):
        r = ModularRing(7)
        assert r.value(-3).payload == 4
        assert r.value(10).payload == 3
        assert (r.value(5) + r.value(4)).payload == 2
        assert (r.value(3) * r.value(5)).payload == 1
        assert (-r.value(2)).payload == 5

    def test_modulus_validation(self):
        with pytest.raises(ValidationError):
            ModularRing(1)
        with pytest.raises(ValidationError):
            ModularRing(0)

    def test_divexact_unsupported(self):
        r = ModularRing(6)
        with pytest.raises(UnsupportedOperationError):
            divexact(r.value(4), r.value(2))

    def test_str(self):
        assert str(ModularRing(36)) == "Z/36"
        assert str(INTEGERS) == "Z"
        assert str(POLYNOMIALS) == "Z[a]"

    @given(st.integers(2, 50), st.integers(-100, 100), st.integers(-100, 100))
    def test_matches_python_mod(self, n, x, y):
        r = ModularRing(n)
        assert (r.value(x) + r.value(y)).payload == (x + y) % n
        assert (r.value(x) * r.value(y)).payload == (x * y) % n
        assert (r.value(x) - r.value(y)).payload == (x - y) % n


class TestPolynomials:
    def test_structural_equality(self):
        a1, a2 = var(1), var(2)
        assert a1 + a2 == a2 + a1
        assert a1 * a2 == a2 * a1
        assert (a1 + a2) * (a1 - a2) == a1 * a1 - a2 * a2

    def test_string_form(self):
        a1, a2 = var(1), var(2)
        assert str((a1 + a2) * (a1 - a2)) == "a1^2 - a2^2"
        assert str(a1 * a2) == "a1*a2"
        assert str(POLYNOMIALS.monomial(-3, {1: 2, 2: 1})) == "-3*a1^2*a2"
        assert str(POLYNOMIALS.zero()) == "0"

    def test_grlex_leading_term(self):
        # degree first, then a1 > a2 > ... on ties
        a1, a2 = var(1), var(2)
        p = a2 * a2 + a1 + const(5)
        mono, coeff = next(iter_terms(p))
        assert mono == ((2, 2),) and coeff == 1
        q = a1 * a2 + a2 * a2
        mono, _ = next(iter_terms(q))
        assert mono == ((1, 1), (2, 1))

    def test_helpers(self):
        a3 = var(3)
        assert a3.single_variable() == 3
        assert (a3 + const(1)).single_variable() is None
        assert (a3 * a3).single_variable() is None
        assert const(9).constant_value() == 9
        assert a3.constant_value() is None
        assert (a3 + var(7)).variables() == (3, 7)

    def test_variable_index_validation(self):
        with pytest.raises(ValidationError):
            POLYNOMIALS.variable(0)

    def test_divexact(self):
        a1, a2 = var(1), var(2)
        assert divexact(a1 * a1 - a2 * a2, a1 - a2) == a1 + a2
        assert divexact(a1 * a2 * const(6), a2 * const(3)) == a1 * const(2)
        with pytest.raises(ArithmeticError):
            divexact(a1 + const(1), a2)

    def test_poly_eval(self):
        a1, a2 = var(1), var(2)
        p = (a1 + a2) * (a1 - a2)
        v = poly_eval(p, {"a1": 5, "a2": 3})
        assert v.spec is INTEGERS and v.payload == 16
        with pytest.raises(StructuralError):
            poly_eval(p, {"a1": 5})
        with pytest.raises(StructuralError):
            poly_eval(INTEGERS.value(3), {})

    @settings(max_examples=50)
    @given(st.lists(st.tuples(st.integers(1, 4), st.integers(-5, 5)), max_size=5),
           st.lists(st.tuples(st.integers(1, 4), st.integers(-5, 5)), max_size=5))
    def test_product_evaluates_correctly(self, left, right):
        def build(spec):
            p = POLYNOMIALS.zero()
            for idx, c in spec:
                p = p + POLYNOMIALS.variable(idx) * const(c)
            return p

        point = {f"a{k}": k + 2 for k in range(1, 5)}
        x, y = build(left), build(right)
        assert (poly_eval(x * y, point).payload
                == poly_eval(x, point).payload * poly_eval(y, point).payload)
        assert (poly_eval(x + y, point).payload
                == poly_eval(x, point).payload + poly_eval(y, point).payload)

    def test_cancellation_to_zero(self):
        a1 = var(1)
        assert (a1 - a1).is_zero()
        assert (a1 * const(0)).is_zero()
