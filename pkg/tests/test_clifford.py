"""Clifford normal ordering, the regular module decomposition and the
spinor representation."""
from itertools import product

from hypothesis import given, settings, strategies as st

from confsalg.scalars import Scalar, ZERO, ONE
from confsalg.clifford import (Clifford, CliffordQuotient, spinor_rep,
                               grassmann_monomials, OddGeneratorInEvenRep,
                               cx_mul, CX_ONE, CX_C)
import pytest


def test_defining_relations():
    cl = Clifford(2)
    for g in range(4):
        for h in range(4):
            x = cl.mul(cl.gen(g), cl.gen(h))
            y = cl.mul(cl.gen(h), cl.gen(g))
            anti = dict(x)
            for w, c in y.items():
                anti[w] = anti.get(w, ZERO) + c
            anti = {w: c for w, c in anti.items() if c}
            pairing = cl.gen_pairing(g, h)
            if pairing:
                assert anti == {(): Scalar.from_int(2 * pairing)}
            else:
                assert anti == {}


def test_odd_generator_squares_to_one():
    cl = Clifford(1, odd=True)
    e = cl.gen(2)
    assert cl.mul(e, e) == {(): ONE}


def test_dimension():
    assert Clifford(2).dim == 16
    assert Clifford(2, odd=True).dim == 32
    assert Clifford(3).dim == 64


words = st.lists(st.integers(min_value=0, max_value=3), min_size=0,
                 max_size=4)


@given(words, words, words)
@settings(max_examples=60, deadline=None)
def test_associativity(w1, w2, w3):
    cl = Clifford(2)

    def as_el(w):
        out = {(): ONE}
        for g in w:
            out = cl.mul(out, cl.gen(g))
        return out

    x, y, z = as_el(w1), as_el(w2), as_el(w3)
    assert cl.mul(cl.mul(x, y), z) == cl.mul(x, cl.mul(y, z))


@pytest.mark.parametrize("npairs", [1, 2, 3])
def test_regular_module_decomposition(npairs):
    cl = Clifford(npairs)
    mods = cl.module_decompose()
    assert len(mods) == 2 ** npairs
    total = 0
    for label, gen, sub in mods:
        assert sub.dim == 2 ** npairs
        total += sub.dim
        assert cl.is_irreducible(sub)
    assert total == cl.dim
    # pairwise independence: the direct sum fills the algebra
    from confsalg.linalg import Subspace
    alldims = Subspace(cl.dim)
    for _, _, sub in mods:
        for row in sub.rows:
            assert alldims.add(list(row))
    assert alldims.dim == cl.dim


def test_quotient_by_two_modules():
    cl = Clifford(2)
    gens = [cl.module_generator((0, 0)), cl.module_generator((1, 1))]
    q = CliffordQuotient(cl, gens)
    assert q.dim == 8
    x = q.reduce(cl.one())
    assert x
    # left multiplication stays inside the quotient coordinates
    y = q.lmul(cl.gen(0), x)
    for w in y:
        assert w in q.keep_words


def test_multidegree_split():
    cl = Clifford(2)
    q = CliffordQuotient(cl, [])
    el = cl.mul(cl.gen(0), cl.gen(3))
    comps = q.multidegree_components(el)
    assert set(comps) == {(1, -1)}


def test_spinor_rep_matches_clifford_product():
    cl = Clifford(2)
    monos = grassmann_monomials(2)
    f0 = {m: CX_ONE for m in monos[:1]}
    for g in range(4):
        for h in range(4):
            lhs = spinor_rep(cl, cl.mul(cl.gen(g), cl.gen(h)), f0)
            rhs = spinor_rep(cl, cl.gen(g), spinor_rep(cl, cl.gen(h), f0))
            assert lhs == rhs


def test_spinor_rep_rejects_odd_generator():
    cl = Clifford(1, odd=True)
    with pytest.raises(OddGeneratorInEvenRep):
        spinor_rep(cl, cl.gen(2), {frozenset(): CX_ONE})


def test_cx_square_of_c_is_two():
    assert cx_mul(CX_C, CX_C) == (Scalar.from_int(2), ZERO)
