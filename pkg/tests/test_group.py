import json

import pytest

from ibifsa.errors import (
    DocumentError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    ShapeMismatch,
    TooLarge,
)
from ibifsa.group import (
    cyclic,
    dihedral,
    direct_product,
    group_from_doc,
    group_ref,
    klein4,
    load_group,
    make_homomorphism,
    make_standard,
    symmetric,
    validate_cayley,
)

FAMILIES = ["cyclic:1", "cyclic:4", "cyclic:5", "klein4", "dihedral:3", "dihedral:4",
            "symmetric:3", "product:(cyclic:2,cyclic:3)", "product:(klein4,cyclic:2)"]


def test_z3():
    g = validate_cayley([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert g.identity == 0
    assert g.inverse == (0, 2, 1)


def test_no_inverse():
    with pytest.raises(NoInverse) as err:
        validate_cayley([[0, 1], [1, 1]])
    assert err.value.witness == 1


def test_not_associative_reports_triple():
    # a loop with identity 0 and inverses, but not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative) as err:
        validate_cayley(table)
    r, s, t = err.value.witness
    assert table[table[r][s]][t] != table[r][table[s][t]]


def test_other_axiom_failures():
    with pytest.raises(NotClosed):
        validate_cayley([[0, 2], [1, 0]])
    with pytest.raises(NoIdentity):
        validate_cayley([[0, 0], [0, 0]])
    with pytest.raises(ShapeMismatch):
        validate_cayley([[0, 1], [1]])
    with pytest.raises(ShapeMismatch):
        validate_cayley([])


def test_standard_examples():
    g = cyclic(4)
    for x in g.elements:
        y = x
        for _ in range(3):
            y = g.mul(y, x)
        assert y == g.identity
    k = klein4()
    assert k.order == 4 and all(k.inv(x) == x for x in k.elements)
    s3 = symmetric(3)
    assert s3.order == 6 and not s3.is_abelian()
    x, y = s3.non_commuting_pair()
    assert s3.mul(x, y) != s3.mul(y, x)
    assert dihedral(4).order == 8 and not dihedral(4).is_abelian()


def test_size_limit():
    with pytest.raises(TooLarge):
        symmetric(6)


@pytest.mark.parametrize("spec", FAMILIES)
def test_cancellation(spec):
    g = make_standard(spec)
    n = g.order
    for r in g.elements:
        assert sorted(g.table[r]) == list(range(n))
        assert sorted(g.table[c][r] for c in g.elements) == list(range(n))


def test_product_componentwise():
    g, h = cyclic(2), cyclic(3)
    p = direct_product(g, h)
    assert p.order == 6
    for x1 in g.elements:
        for y1 in h.elements:
            for x2 in g.elements:
                for y2 in h.elements:
                    assert p.mul(x1 * 3 + y1, x2 * 3 + y2) == g.mul(x1, x2) * 3 + h.mul(y1, y2)


@pytest.mark.parametrize("bad", ["cyclic", "cyclic:x", "torus:3", "product:(cyclic:2)", ""])
def test_bad_specs(bad):
    with pytest.raises(DocumentError):
        make_standard(bad)


@pytest.mark.parametrize("spec", FAMILIES)
def test_document_round_trip(spec, tmp_path):
    g = make_standard(spec)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_doc()))
    back = load_group(str(path))
    assert back.table == g.table and back.names == g.names
    assert group_ref(g) == spec.replace(" ", "")


def test_custom_group_ref_is_full_doc():
    g = validate_cayley([[0, 1], [1, 0]], name="mine")
    assert isinstance(group_ref(g), dict)
    assert group_from_doc(group_ref(g)).table == g.table


def test_element_lookup():
    s3 = symmetric(3)
    assert s3.element("e") == 0
    assert s3.element("2") == 2
    assert s3.names[s3.element("(123)")] == "(123)"


def test_homomorphism_checked():
    f = make_homomorphism(cyclic(4), cyclic(2), [0, 1, 0, 1])
    assert f(3) == 1
    with pytest.raises(NotHomomorphism):
        make_homomorphism(cyclic(4), cyclic(2), [0, 1, 1, 0])
