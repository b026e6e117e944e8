"""Solver-side construction: wedge-form assembly, the Clifford-image
builders, the weight-1/2 extension and the finite case sweeps."""
from fractions import Fraction

import pytest

from confsalg.scalars import Scalar, ZERO, ONE, ALPHA
from confsalg.algebra import check_P_axioms, check_H_axioms, is_simple
from confsalg.construct import (assemble_wedge_form, wedge_lookup,
                                BuilderSpec, build_from_spec,
                                build_f_extension, iota_cl4_span,
                                InconsistentSpec, exclusion_sweep,
                                CK6_KERNEL, _wedge3_basis)

F1 = Fraction(1)


def S(n):
    return Scalar.from_int(n)


def test_wedge_form_two_pairs_symbolic():
    # generators ordered D1 Db1 D2 Db2; all forced values in terms of the
    # single off-diagonal parameter
    form = assemble_wedge_form(2, False, [[ZERO, ALPHA], [ALPHA, ZERO]])
    assert wedge_lookup(form, 1, 0, 1, 0) == ONE          # (Db1^D1, Db1^D1)
    assert wedge_lookup(form, 1, 0, 3, 2) == ALPHA        # (Db1^D1, Db2^D2)
    assert wedge_lookup(form, 0, 2, 1, 3) == -(ONE + ALPHA)
    assert wedge_lookup(form, 1, 2, 0, 3) == -(ONE - ALPHA)
    assert wedge_lookup(form, 0, 2, 0, 3) == ZERO
    # antisymmetry of the wedge arguments
    assert wedge_lookup(form, 0, 1, 2, 3) == \
        -wedge_lookup(form, 1, 0, 2, 3)


def test_wedge_form_odd_generator():
    form = assemble_wedge_form(1, True, [[ZERO]])
    # (Db1 ^ e3, D1 ^ e3) = -1
    assert wedge_lookup(form, 1, 2, 0, 2) == -ONE
    assert wedge_lookup(form, 0, 2, 1, 2) == -ONE
    assert wedge_lookup(form, 0, 2, 0, 2) == ZERO


@pytest.mark.parametrize("npairs,odd,kernel,dim", [
    (0, True, [], 2),
    (1, False, [], 4),
    (1, True, [], 8),
    (3, False, CK6_KERNEL, 32),
])
def test_builder_dimensions(npairs, odd, kernel, dim):
    alpha = [[ZERO] * npairs for _ in range(npairs)]
    spec = BuilderSpec.from_alpha(npairs, odd, alpha, kernel_words=kernel)
    R = build_from_spec(spec)
    assert R.dim == dim
    # independent count: dimension of the span of word classes
    classes, qdim = iota_cl4_span(spec)
    assert classes == qdim == dim


def test_builder_weight_splits_match_clifford_grading():
    spec = BuilderSpec.from_alpha(3, False, [[ZERO] * 3] * 3,
                                  kernel_words=CK6_KERNEL)
    R = build_from_spec(spec)
    dims = R.weight_dims()
    assert dims == {Fraction(2): 1, Fraction(3, 2): 6,
                    Fraction(1): 15, Fraction(1, 2): 10}


def test_builder_validates():
    # a full kernel collapses the quotient and must be rejected
    spec = BuilderSpec.from_alpha(1, False, [[ZERO]],
                                  kernel_words=[(0,), (1,)])
    with pytest.raises(InconsistentSpec):
        build_from_spec(spec)


def s2():
    m1 = S(-1)
    return build_from_spec(BuilderSpec.from_alpha(
        2, False, [[ZERO, m1], [m1, ZERO]], kernel_words=[(0, 0), (1, 1)]))


def w3_unit(t):
    w3 = _wedge3_basis(4)
    vec = [ZERO] * len(w3)
    vec[w3.index(t)] = ONE
    return vec


def test_f_extension_full_f():
    R = build_f_extension(s2(), [])
    assert R.dim == 16
    assert check_P_axioms(R, 3, 3).ok
    assert check_H_axioms(R).ok
    assert is_simple(R).simple


def test_f_extension_two_dim_radical():
    R = build_f_extension(s2(), [w3_unit((0, 1, 2)), w3_unit((0, 2, 3))])
    assert R.dim == 12
    assert R.weight_dims()[Fraction(1, 2)] == 2
    assert check_H_axioms(R).ok
    assert is_simple(R).simple


def test_f_extension_rejects_odd_dimensional_radical():
    with pytest.raises(InconsistentSpec):
        build_f_extension(s2(), [w3_unit((0, 1, 2))])


# -- case sweeps ------------------------------------------------------------


def test_sweep_odd_dimensions_unsat():
    for d in (5, 7):
        rep = exclusion_sweep(d)
        assert not rep.satisfiable
        assert rep.solutions == []
        assert any("2 and -2" in note for note in rep.notes)


def test_sweep_dim6_solutions():
    rep = exclusion_sweep(6)
    sols = {tuple(int(v) for v in s) for s in rep.solutions}
    assert sols == {(0, 0, 0), (-1, -1, -1), (-1, 1, 1), (1, -1, 1),
                    (1, 1, -1)}
    for s in rep.solutions:
        verdict = rep.verdicts[s]
        if all(v == 0 for v in s):
            assert "simple algebra of dimension 32" in verdict
        else:
            assert "zero algebra" in verdict


def test_sweep_dim8_solutions():
    rep = exclusion_sweep(8)
    sols = {tuple(int(v) for v in s) for s in rep.solutions}
    assert sols == {
        (0, 0, 0, 0, 0, 0),
        (1, 1, 1, -1, -1, -1), (1, 1, -1, -1, 1, 1),
        (1, -1, 1, 1, -1, 1), (1, -1, -1, 1, 1, -1),
        (-1, 1, -1, 1, -1, 1), (-1, 1, 1, 1, 1, -1),
        (-1, -1, 1, -1, 1, 1), (-1, -1, -1, -1, -1, -1)}
    assert all("zero algebra" in rep.verdicts[s] for s in rep.solutions)


def test_sweep_dim8_solutions_satisfy_the_constraints():
    # independent re-check of the branch solver on the full sweep output
    rep = exclusion_sweep(8)
    idx = {}
    names = rep.unknowns
    for s in rep.solutions:
        a = {}
        for nm, v in zip(names, s):
            i, j = int(nm[1]), int(nm[2])
            a[(i, j)] = a[(j, i)] = v
        for i in range(1, 5):
            for j in range(1, 5):
                for k in range(1, 5):
                    if len({i, j, k}) < 3:
                        continue
                    assert (a[(i, j)] + a[(j, k)]) * (a[(i, k)] + 1) == 0
                    assert (a[(i, j)] - a[(j, k)]) * (a[(i, k)] - 1) == 0
