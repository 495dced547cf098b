"""Tensor idempotence, enveloping monoids, bimodule resolutions, Hochschild groups."""

from math import comb

import pytest

from koszulcat.category import CategoryPresentation
from koszulcat.errors import PreconditionError
from koszulcat.field import QQ
from koszulcat.hochschild import (
    build_enveloping,
    certify_tensor_idempotent,
    change_of_variables_certificate,
    hochschild_cohomology,
    koszul_bimodule_resolution,
)
from koszulcat.monoid import identity_monoid, regular_bimodule, scalar_monoid
from koszulcat.sample import c2_convolution_category, dual_numbers, s3_group_algebra

CAT = CategoryPresentation.trivial(QQ)
U = CAT.unit


def test_scalar_monoid_is_tensor_idempotent_direct():
    cert = certify_tensor_idempotent(scalar_monoid(CAT))
    assert cert.passed and cert.mode == "direct"
    assert cert.quotient_ok  # both roads agree here


def test_identity_monoid_idempotent_both_modes():
    cat = c2_convolution_category(QQ)
    cert = certify_tensor_idempotent(identity_monoid(cat))
    assert cert.passed
    assert cert.direct_ok and cert.quotient_ok
    assert cert.mode == "direct"


def test_dual_numbers_not_idempotent():
    cert = certify_tensor_idempotent(dual_numbers(QQ))
    assert not cert.passed
    assert "dim 4" in cert.detail and "target 2" in cert.detail


def test_idempotence_requires_commutativity():
    with pytest.raises(PreconditionError):
        certify_tensor_idempotent(s3_group_algebra(QQ))


# -- enveloping -------------------------------------------------------------------


def test_enveloping_kernel_dims_one_variable():
    e = build_enveloping(scalar_monoid(CAT), 1, 3)
    assert e.passed
    # bivariate degree d has d+1 monomials collapsing onto a single target
    for d in range(4):
        assert e.ideal[(U, d)].dim == d
        assert e.c.carrier.dim(U, d) == d + 1
        assert e.a_n.carrier.dim(U, d) == 1


def test_enveloping_two_variables_cap_two():
    e = build_enveloping(scalar_monoid(CAT), 2, 2)
    assert e.passed
    for d in range(3):
        assert e.ideal[(U, d)].dim == \
            e.c.carrier.dim(U, d) - e.a_n.carrier.dim(U, d)
    assert all(a.degree == 1 for a in e.alphas)


def test_enveloping_requires_certificate():
    with pytest.raises(PreconditionError):
        build_enveloping(dual_numbers(QQ), 1, 2)


def test_change_of_variables_mechanism():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    assert change_of_variables_certificate(e)


# -- bimodule resolution -----------------------------------------------------------


def test_bimodule_resolution_one_variable():
    e = build_enveloping(scalar_monoid(CAT), 1, 4)
    res = koszul_bimodule_resolution(e)
    assert res.passed
    # augmented shape: A_n <- C <- C, with binomial(1, p) copies
    assert [len(t.dims) for t in res.complex.terms] == [5, 5, 5]
    names = {c.name for c in res.report.certificates}
    assert "contracting-homotopy" in names and "differences-regular-sequence" in names


def test_bimodule_resolution_two_variables():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    res = koszul_bimodule_resolution(e)
    assert res.passed
    assert len(res.complex.terms) == 4  # A_n, C, C^2, C


def test_resolution_term_ranks_are_binomial():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    res = koszul_bimodule_resolution(e)
    for p in range(3):
        term = res.complex.terms[p + 1]
        assert term.dim(U, 0) == comb(2, p) * 1


# -- Hochschild cohomology -----------------------------------------------------------


def test_hh_zero_and_one_for_one_variable():
    e = build_enveloping(scalar_monoid(CAT), 1, 4)
    m = regular_bimodule(e.a_n)
    for p in (0, 1):
        rep = hochschild_cohomology(e, m, p)
        assert rep.all_passed
        dims = {en.degree: en.dim for en in rep.entries}
        assert all(dims[d] == 1 for d in range(4))  # C(1,p) * one monomial per degree


def test_hh_dimension_formula_two_variables():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    m = regular_bimodule(e.a_n)
    for p in range(3):
        rep = hochschild_cohomology(e, m, p)
        dims = {en.degree: en.dim for en in rep.entries}
        for d in range(3):
            assert dims[d] == comb(2, p) * comb(2 + d - 1, d)


def test_hh_phi_certificate_present():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    rep = hochschild_cohomology(e, regular_bimodule(e.a_n), 1)
    cert = next(c for c in rep.certificates if c.name == "cochain-differential-zero")
    assert cert.passed


def test_hh_vanishes_above_n():
    e = build_enveloping(scalar_monoid(CAT), 2, 3)
    m = regular_bimodule(e.a_n)
    for p in (3, 4):
        rep = hochschild_cohomology(e, m, p)
        assert all(en.dim == 0 for en in rep.entries)
        assert any(c.name == "vanishes-above-n" for c in rep.certificates)


def test_hh_negative_degree_rejected():
    e = build_enveloping(scalar_monoid(CAT), 1, 2)
    with pytest.raises(PreconditionError):
        hochschild_cohomology(e, regular_bimodule(e.a_n), -1)


def test_full_pipeline_over_finite_backend():
    # the identity monoid of the two-object convolution category is tensor
    # idempotent, and the whole enveloping machinery runs over it unchanged
    cat = c2_convolution_category(QQ)
    ident = identity_monoid(cat)
    e = build_enveloping(ident, 1, 3)
    assert e.passed
    res = koszul_bimodule_resolution(e)
    assert res.passed
    rep = hochschild_cohomology(e, regular_bimodule(e.a_n), 1)
    dims = {(en.obj, en.degree): en.dim for en in rep.entries}
    for x in cat.objects:
        for d in range(3):
            assert dims[(x, d)] == 1
