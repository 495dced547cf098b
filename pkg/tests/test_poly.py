"""Polynomial monoids: dimension formulas, grading, centrality, variable merging."""

from math import comb

import pytest

from koszulcat.category import CategoryPresentation
from koszulcat.errors import IsoFailureError, PreconditionError
from koszulcat.field import QQ
from koszulcat.matrix import Matrix
from koszulcat.monoid import (
    is_central,
    is_commutative,
    regular_bimodule,
    scalar_monoid,
    validate_module,
    validate_monoid,
)
from koszulcat.poly import (
    element_from_name,
    merge_variables,
    mono_index,
    multi_indices,
    polynomial_monoid,
    variable_element,
)
from koszulcat.sample import dual_numbers, s3_group_algebra

CAT = CategoryPresentation.trivial(QQ)
U = CAT.unit


def test_multi_index_counts_and_order():
    assert multi_indices(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(multi_indices(3, 4)) == comb(3 + 4 - 1, 4)
    assert mono_index(2, 2)[(1, 1)] == 1


def test_univariate_dims():
    a = polynomial_monoid(scalar_monoid(CAT), 1, 3)
    assert [a.carrier.dim(U, d) for d in range(4)] == [1, 1, 1, 1]
    assert a.carrier.truncated


def test_bivariate_dims_stars_and_bars():
    a = polynomial_monoid(scalar_monoid(CAT), 2, 2)
    assert [a.carrier.dim(U, d) for d in range(3)] == [1, 2, 3]


def test_dual_number_coefficients_dims():
    a = polynomial_monoid(dual_numbers(QQ), 1, 2)
    assert [a.carrier.dim(U, d) for d in range(3)] == [2, 2, 2]


def test_graded_piece_dimension_formula():
    base = dual_numbers(QQ)
    for n in (1, 2, 3):
        a = polynomial_monoid(base, n, 3)
        for d in range(4):
            assert a.carrier.dim(U, d) == 2 * comb(n + d - 1, d)


def test_polynomial_monoid_validates_degreewise():
    assert validate_monoid(polynomial_monoid(scalar_monoid(CAT), 2, 3)).ok
    assert validate_monoid(polynomial_monoid(dual_numbers(QQ), 1, 2)).ok
    assert validate_module(regular_bimodule(polynomial_monoid(scalar_monoid(CAT), 2, 2))).ok


def test_degree_zero_slice_is_the_base():
    base = dual_numbers(QQ)
    a = polynomial_monoid(base, 2, 3)
    assert a.pairing_cell(U, 0, U, 0) == base.pairing_cell(U, 0, U, 0)
    assert a.unit == base.unit
    assert a.carrier.names(U, 0) == base.carrier.names(U, 0)


def test_zero_variables_returns_base():
    base = dual_numbers(QQ)
    assert polynomial_monoid(base, 0, 5) is base


def test_variable_elements_are_degree_one_and_central():
    a = polynomial_monoid(scalar_monoid(CAT), 2, 3)
    t1 = variable_element(a, 1)
    assert t1.degree == 1 and t1.obj == U
    assert is_central(a, t1)
    with pytest.raises(PreconditionError):
        variable_element(a, 3)


def test_variables_central_over_noncommutative_base():
    a = polynomial_monoid(s3_group_algebra(QQ), 1, 2)
    t = variable_element(a, 1)
    assert is_central(a, t)
    assert not is_commutative(a)


def test_commutativity_propagates():
    assert is_commutative(polynomial_monoid(dual_numbers(QQ), 2, 2))


def test_monomial_names():
    a = polynomial_monoid(scalar_monoid(CAT), 2, 2, var_names=("x", "y"))
    assert a.carrier.names(U, 1) == ("x", "y")
    assert a.carrier.names(U, 2) == ("x^2", "x*y", "y^2")
    e = element_from_name(a, "x")
    assert e.degree == 1


def test_polynomial_construction_is_functorial():
    # a monoid morphism f: dual numbers -> Q (xbar -> 0) extends degreewise
    # and commutes with the pairings of the polynomial monoids
    base_a = dual_numbers(QQ)
    base_b = scalar_monoid(CAT)
    f0 = Matrix.from_rows(QQ, [[1, 0]])  # one -> one, xbar -> 0
    n, cap = 2, 2
    pa = polynomial_monoid(base_a, n, cap)
    pb = polynomial_monoid(base_b, n, cap)
    f = {d: Matrix.identity(QQ, len(multi_indices(n, d))).kron(f0) for d in range(cap + 1)}
    assert f[0].apply(pa.unit) == tuple(pb.unit)
    for d1 in range(cap + 1):
        for d2 in range(cap + 1 - d1):
            lhs = f[d1 + d2] * pa.pairing_cell(U, d1, U, d2)
            rhs = pb.pairing_cell(U, d1, U, d2) * f[d1].kron(f[d2])
            assert lhs == rhs


# -- merge_variables -------------------------------------------------------------


def _q_witness():
    return {U: Matrix.identity(QQ, 1)}


def test_merge_bivariate_dims():
    q = scalar_monoid(CAT)
    c = polynomial_monoid(q, 1, 3, var_names=("u",))
    d = polynomial_monoid(q, 1, 3, var_names=("v",))
    res = merge_variables(c, d, q, _q_witness())
    assert res.monoid.poly_info.var_names == ("u", "v")
    assert [res.monoid.carrier.dim(U, k) for k in range(4)] == [1, 2, 3, 4]
    assert res.unit_preserved
    assert res.hom_checked and res.hom_ok
    for (x, deg), mat in res.phi.items():
        assert mat.nrows == mat.ncols == res.monoid.carrier.dim(x, deg)


def test_merge_zero_variables_returns_equivalent_monoid():
    q = scalar_monoid(CAT)
    c = polynomial_monoid(q, 2, 2)
    res = merge_variables(c, q, q, _q_witness())
    assert res.monoid.carrier.dims == c.carrier.dims
    assert res.monoid.pairing == c.pairing


def test_merge_rejects_bad_witness():
    q = scalar_monoid(CAT)
    c = polynomial_monoid(q, 1, 2)
    d = polynomial_monoid(q, 1, 2, var_names=("v",))
    with pytest.raises(IsoFailureError):
        merge_variables(c, d, q, {U: Matrix.zeros(QQ, 1, 1)})
