"""Full products from the reduced data, mode brackets, and moving the
conformal vector."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from confsalg.scalars import Scalar, ZERO, ONE
from confsalg.algebra import (check_P_axioms, check_H_axioms,
                              is_physical_shape)
from confsalg.reconstruct import (dpoly, dpart, dp_add_into, dp_eq, binom_ff,
                                  reconstruct, check_C_axioms, mode_bracket,
                                  change_conformal_vector, NotN4Shape)
from confsalg import catalog


def S(n):
    return Scalar.from_int(n)


def test_dpoly_helpers():
    x = dpoly({"a": ONE}, 2)
    assert dpart(x, 2) == {"a": ONE}
    assert dpart(x, 0) == {}
    dp_add_into(x, dpoly({"a": -ONE}, 2))
    assert dp_eq(x, {})


def test_binom_ff_negative_upper_index():
    # falling factorial form, valid for negative m
    assert binom_ff(-1, 2) == Fraction(1)
    assert binom_ff(-2, 1) == Fraction(-2)
    assert binom_ff(3, 2) == Fraction(3)
    assert binom_ff(2, 3) == Fraction(0)


def test_virasoro_products():
    RA = reconstruct(catalog.build("Vir"))
    L = dpoly({"L": ONE})
    assert dp_eq(RA.full_product(L, L, 1), {0: {"L": S(2)}})
    # the 0 product is the derivative of L, in divided powers
    assert dp_eq(RA.full_product(L, L, 0), {1: {"L": ONE}})
    with pytest.raises(ValueError):
        RA.full_product(L, L, -1)


def test_products_extend_to_derivatives():
    RA = reconstruct(catalog.build("K2"))
    # L_(1) d^{(k)} a = (k + w) d^{(k)} a for a of weight w
    a = dpoly({"D1": ONE}, 2)
    got = RA.full_product(dpoly({"L": ONE}), a, 1)
    want = {2: {"D1": Scalar.from_fraction(Fraction(2) + Fraction(3, 2))}}
    assert dp_eq(got, want)


@pytest.mark.parametrize("name,dmax", [("Vir", 4), ("K2", 4), ("S2", 2)])
def test_reconstruction_axioms(name, dmax):
    rep = check_C_axioms(reconstruct(catalog.build(name)), 4, 4, dmax)
    assert rep.ok, rep.summary()


def test_virasoro_mode_algebra():
    RA = reconstruct(catalog.build("Vir"))
    L = {"L": ONE}
    for m in range(-5, 6):
        for n in range(-5, 6):
            br = mode_bracket(RA, L, m, L, n)
            want = {}
            if m != n:
                want[("L", m + n - 1)] = S(m - n)
            assert br == want


modes = st.integers(min_value=-4, max_value=4)
ids = st.sampled_from(["L", "D1", "Db1"])


@given(ids, modes, ids, modes)
@settings(max_examples=40, deadline=None)
def test_mode_bracket_antisymmetry(a, m, b, n):
    RA = reconstruct(catalog.build("K2"))
    pa, pb = RA.R.parity(a), RA.R.parity(b)
    lhs = mode_bracket(RA, {a: ONE}, m, {b: ONE}, n)
    rhs = mode_bracket(RA, {b: ONE}, n, {a: ONE}, m)
    sign = S(-1 if pa * pb == 0 else 1)
    for key in set(lhs) | set(rhs):
        assert lhs.get(key, ZERO) == sign * rhs.get(key, ZERO)


# -- change of conformal vector ---------------------------------------------


def test_change_rejects_wrong_shape():
    with pytest.raises(NotN4Shape):
        change_conformal_vector(catalog.build("K2"), ONE)


def test_change_at_zero_reproduces_the_base_profile():
    R0 = catalog.build("N4alpha", 0)
    R = change_conformal_vector(R0, ZERO)
    assert R.dim == R0.dim
    assert R.weight_dims() == R0.weight_dims()
    assert is_physical_shape(R)
    assert check_P_axioms(R, 2, 2).ok
    assert check_H_axioms(R).ok


def test_change_yields_a_simple_physical_algebra():
    from confsalg.algebra import is_simple
    R = catalog.build("N4")
    assert R.dim == 16
    assert R.weight_dims() == {Fraction(2): 1, Fraction(3, 2): 4,
                               Fraction(1): 7, Fraction(1, 2): 4}
    assert is_physical_shape(R)
    assert is_simple(R).simple
    assert check_P_axioms(R, 3, 3).ok
    assert check_H_axioms(R).ok
