from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ibifsa.errors import CarrierMismatch, ConsistencyViolation, LengthMismatch
from ibifsa.group import cyclic, dihedral, make_homomorphism, make_standard, symmetric
from ibifsa.ifs import (
    conjugation_normal_degree,
    hom_image,
    hom_preimage,
    identity_condition_degree,
    identity_report,
    ifs_from_doc,
    is_if_subgroup_classical,
    normal_degree,
    normal_report,
    subgroup_degree,
    subgroup_report,
    validate_ifs,
    whole,
)

import oracles

GROUPS = ["cyclic:2", "cyclic:3", "cyclic:4", "klein4", "symmetric:3", "dihedral:4"]


@st.composite
def subsets(draw, n, denominators=(1, 2, 3, 4, 5, 6, 10)):
    d = draw(st.sampled_from(denominators))
    mu = [draw(st.integers(0, d)) for _ in range(n)]
    nu = [draw(st.integers(0, d - m)) for m in mu]
    return validate_ifs(n, [F(m, d) for m in mu], [F(v, d) for v in nu])


@st.composite
def group_and_subset(draw):
    g = make_standard(draw(st.sampled_from(GROUPS)))
    return g, draw(subsets(g.order))


def crisp(n, members):
    mu = [1 if x in members else 0 for x in range(n)]
    return validate_ifs(n, mu, [1 - m for m in mu])


def test_validate_examples():
    assert validate_ifs(2, [1, 0], [0, 1]).is_crisp()
    validate_ifs(2, [F(1, 2), F(9, 10)], [F(2, 5), 0])
    with pytest.raises(ConsistencyViolation) as err:
        validate_ifs(1, [F(3, 4)], [F(1, 2)])
    assert err.value.witness == 0
    with pytest.raises(LengthMismatch):
        validate_ifs(2, [1], [0, 0])


def test_e1_subgroup(e1):
    deg = subgroup_degree(cyclic(2), e1)
    assert deg.closure_mu == deg.closure_nu == F(3, 5)
    assert deg.inverse_mu == deg.inverse_nu == 1
    assert deg.overall == F(3, 5)
    assert deg.witnesses["closure_mu"] == (1, 1)


def test_crisp_subgroups():
    assert subgroup_degree(cyclic(4), crisp(4, {0, 2})).overall == 1
    bad = subgroup_degree(cyclic(2), validate_ifs(2, [0, 1], [1, 0]))
    assert bad.closure_mu == 0 and bad.witnesses["closure_mu"] == (1, 1)


def test_normal_examples(e1):
    assert normal_degree(cyclic(2), e1) == 1
    s3 = symmetric(3)
    transposition = s3.names.index("(12)")
    assert normal_degree(s3, crisp(6, {0, transposition})) == 0
    d4 = dihedral(4)
    center = {x for x in d4.elements if all(d4.mul(x, y) == d4.mul(y, x) for y in d4.elements)}
    assert len(center) == 2
    assert normal_degree(d4, crisp(8, center)) == 1


def test_identity_examples(e1):
    assert identity_condition_degree(cyclic(2), e1) == F(3, 5)
    assert identity_condition_degree(cyclic(4), crisp(4, {0, 2})) == 1
    s = validate_ifs(3, [1, F(1, 2), F(1, 3)], [0, F(1, 2), F(1, 3)])
    assert identity_condition_degree(cyclic(3), s) == 1


def test_carrier_mismatch(e1):
    with pytest.raises(CarrierMismatch):
        subgroup_degree(cyclic(3), e1)


def test_hom_examples():
    f = make_homomorphism(cyclic(4), cyclic(2), [0, 1, 0, 1])
    a = validate_ifs(4, [1, F(1, 2), F(3, 4), F(1, 2)], [0, F(1, 4), F(1, 4), F(1, 2)])
    img = hom_image(f, a)
    assert img.mu == (1, F(1, 2)) and img.nu == (0, F(1, 4))
    b = validate_ifs(2, [1, F(1, 3)], [0, F(1, 3)])
    assert hom_preimage(f, b).mu == (1, F(1, 3), 1, F(1, 3))
    ident = make_homomorphism(cyclic(4), cyclic(4), range(4))
    assert hom_image(ident, a) == a and hom_preimage(ident, a) == a
    const = make_homomorphism(cyclic(4), cyclic(2), [0, 0, 0, 0])
    assert set(hom_preimage(const, b).mu) == {b.mu[0]}


def test_reports(e1):
    rep = subgroup_report(cyclic(2), e1, F(1, 2))
    assert rep.overall == F(3, 5) and rep.holds_at(F(1, 2))
    assert "PASS (3/5 >= 1/2)" in rep.to_text(F(1, 2))
    rep = subgroup_report(cyclic(2), e1)
    assert rep.witnesses[0].instantiation == {"xi": 1, "psi": 1}
    assert identity_report(cyclic(2), e1).overall == F(3, 5)
    assert normal_report(cyclic(2), e1).notes["conjugation_form"] == 1
    assert ifs_from_doc(e1.to_doc(), 2) == e1


@settings(max_examples=150, deadline=None)
@given(group_and_subset())
def test_degrees_match_oracle(gs):
    g, s = gs
    deg = subgroup_degree(g, s)
    assert deg.as_dict() == oracles.subgroup(g.table, g.inverse, s.mu, s.nu)
    assert normal_degree(g, s) == oracles.normal(g.table, s.mu, s.nu)
    assert identity_condition_degree(g, s) == oracles.identity(g.identity, s.mu, s.nu)


@settings(max_examples=150, deadline=None)
@given(group_and_subset())
def test_degree_one_is_classical(gs):
    g, s = gs
    classical = oracles.classical_subgroup(g.table, g.inverse, s.mu, s.nu)
    assert (subgroup_degree(g, s).overall == 1) == classical == is_if_subgroup_classical(g, s)


@settings(max_examples=150, deadline=None)
@given(group_and_subset())
def test_identity_bounds(gs):
    g, s = gs
    sg = subgroup_degree(g, s).overall
    ident = identity_condition_degree(g, s)
    assert ident >= max(0, 2 * sg - 1)
    if sg == 1:
        assert ident == 1


@settings(max_examples=100, deadline=None)
@given(group_and_subset())
def test_abelian_normal_and_forms_agree_at_one(gs):
    g, s = gs
    if g.is_abelian():
        assert normal_degree(g, s) == 1
    if normal_degree(g, s) == 1:
        assert conjugation_normal_degree(g, s) == 1


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_hom_preserves_consistency_and_subgroups(data):
    f = make_homomorphism(cyclic(4), cyclic(2), [0, 1, 0, 1])
    a = data.draw(subsets(4))
    img = hom_image(f, a)
    assert all(m + v <= 1 for m, v in zip(img.mu, img.nu))
    b = data.draw(subsets(2))
    if subgroup_degree(cyclic(2), b).overall == 1:
        assert subgroup_degree(cyclic(4), hom_preimage(f, b)).overall == 1


def test_whole_is_subgroup():
    for spec in GROUPS:
        g = make_standard(spec)
        assert subgroup_degree(g, whole(g.order)).overall == 1
