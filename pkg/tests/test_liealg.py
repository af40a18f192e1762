"""Bracket table rows, Jacobi certification, and fault injection."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmu import Mat, Vec, bracket, build_boeckx_model, check_jacobi
from kmu.errors import DegenerateModelError, UnsupportedDimensionError
from kmu.liealg import model_with_structure

from helpers import model

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def term(m, coeff, index):
    return Fraction(coeff) * Vec.basis(m.dim, index)


# ---------------------------------------------------------------------------
# bracket table rows
# ---------------------------------------------------------------------------


def test_rows_for_alpha0_beta2():
    m = model(2, 0, 2)
    xi, X, Y = m.basis_vector(0), m.x, m.y
    assert bracket(m, xi, m.basis_vector(Y(1))) == term(m, 2, m.x(1))
    assert bracket(m, m.basis_vector(X(1)), m.basis_vector(Y(1))) == term(
        m, -2, X(2)
    ) + term(m, 2, 0)
    assert bracket(m, m.basis_vector(X(2)), m.basis_vector(Y(2))) == term(m, 2, 0)


def test_row_for_alpha1_beta3():
    m = model(2, 1, 3)
    got = bracket(m, m.basis_vector(m.x(2)), m.basis_vector(m.y(1)))
    assert got == term(m, 3, m.x(1)) + term(m, -1, m.y(2))


@pytest.mark.parametrize("alpha,beta", [(0, 2), (1, 3), (2, 3)])
def test_row_x3_y3(alpha, beta):
    m = model(3, alpha, beta)
    got = bracket(m, m.basis_vector(m.x(3)), m.basis_vector(m.y(3)))
    expected = (
        term(m, -beta, m.x(2)) + term(m, alpha, m.y(1)) + term(m, 2, 0)
    )
    assert got == expected


@pytest.mark.parametrize("n,alpha,beta", [(2, 0, 2), (3, 1, 3), (4, 2, 3)])
def test_x1_commutes_with_higher_y(n, alpha, beta):
    m = model(n, alpha, beta)
    for i in range(2, n + 1):
        assert bracket(m, m.basis_vector(m.x(1)), m.basis_vector(m.y(i))).is_zero()


def test_y1_y2_via_antisymmetry_oracle():
    # the table row gives [Y_2, Y_1] = beta Y_1; antisymmetry gives the
    # expected value of [Y_1, Y_2]
    m = model(3, 1, 3)
    row = bracket(m, m.basis_vector(m.y(2)), m.basis_vector(m.y(1)))
    assert row == term(m, 3, m.y(1))
    assert bracket(m, m.basis_vector(m.y(1)), m.basis_vector(m.y(2))) == -row


def test_unlisted_pairs_vanish():
    m = model(3, 1, 3)
    assert bracket(m, m.basis_vector(m.x(2)), m.basis_vector(m.x(3))).is_zero()
    assert bracket(m, m.basis_vector(m.y(1)), m.basis_vector(m.y(3))).is_zero()
    assert bracket(m, m.basis_vector(m.x(3)), m.basis_vector(m.y(2))).is_zero()


def test_structure_table_antisymmetric_closure():
    m = model(3, 2, 3)
    for i in range(m.dim):
        assert m.structure[i][i].is_zero()
        for j in range(m.dim):
            assert m.structure[i][j] == -m.structure[j][i]


# ---------------------------------------------------------------------------
# bilinear extension
# ---------------------------------------------------------------------------


def test_bracket_of_vector_with_itself_vanishes():
    m = model(2, 1, 2)
    u = Vec([1, 2, 3, 4, 5])
    assert bracket(m, u, u).is_zero()


@settings(max_examples=25)
@given(
    st.lists(small_rationals, min_size=5, max_size=5),
    st.lists(small_rationals, min_size=5, max_size=5),
)
def test_bracket_antisymmetric_on_random_vectors(us, vs):
    m = model(2, 1, 3)
    u, v = Vec(us), Vec(vs)
    assert bracket(m, u, v) == -bracket(m, v, u)


# ---------------------------------------------------------------------------
# Jacobi identity
# ---------------------------------------------------------------------------


def jacobiator(m, i, j, k):
    """Independent oracle: nested brackets of basis vectors."""
    ei, ej, ek = m.basis_vector(i), m.basis_vector(j), m.basis_vector(k)
    return (
        bracket(m, bracket(m, ei, ej), ek)
        + bracket(m, bracket(m, ej, ek), ei)
        + bracket(m, bracket(m, ek, ei), ej)
    )


@pytest.mark.parametrize("n,alpha,beta", [(2, 0, 2), (3, 1, 3)])
def test_jacobi_zero_by_direct_triple_loop(n, alpha, beta):
    m = model(n, alpha, beta)
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            for k in range(j + 1, m.dim):
                assert jacobiator(m, i, j, k).is_zero(), (i, j, k)
    report = check_jacobi(m)
    assert report.ok
    assert report.max_residual == 0
    assert report.violations == ()


def test_corrupted_constant_fails_jacobi_with_named_triple():
    m = model(2, 1, 3)
    structure = [list(row) for row in m.structure]
    # corrupt the [X_1, Y_1] row (indices 1 and 3 in the fixed order)
    bad = list(structure[1][3])
    bad[0] = bad[0] + 1
    structure[1][3] = Vec(bad)
    structure[3][1] = -Vec(bad)
    corrupted = model_with_structure(m, structure)
    report = check_jacobi(corrupted)
    assert not report.ok
    assert report.max_residual > 0
    assert any(1 in triple or 3 in triple for triple in report.violations)


# ---------------------------------------------------------------------------
# constructor preconditions
# ---------------------------------------------------------------------------


def test_n_below_two_unsupported():
    with pytest.raises(UnsupportedDimensionError):
        build_boeckx_model(1, 0, 2)


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 1), (3, -3)])
def test_degenerate_parameters_rejected(alpha, beta):
    with pytest.raises(DegenerateModelError):
        build_boeckx_model(2, alpha, beta)


def test_negative_alpha_rejected():
    with pytest.raises(DegenerateModelError):
        build_boeckx_model(2, -1, 3)


def test_dimension_and_metric():
    m = model(3, 1, 3)
    assert m.dim == 7
    assert m.metric == Mat.identity(7)
