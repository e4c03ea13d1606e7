from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ibifsa.errors import EmptyCarrier, IfsaError
from ibifsa.truthval import (
    aggregate_exists,
    aggregate_forall,
    common_scale,
    conj,
    decode,
    disj,
    encode,
    format_truth,
    goedel_implies,
    holds_at,
    luk_implies,
    luk_implies_array,
    tautology_degree,
    truth,
)

from oracles import imp

unit = st.fractions(min_value=0, max_value=1, max_denominator=60)


def test_implication_examples():
    assert luk_implies(F(3, 4), F(1, 2)) == F(3, 4)
    assert luk_implies(F(2, 7), F(2, 7)) == 1
    assert luk_implies(0, F(1, 3)) == 1


def test_lattice_ops():
    assert conj(1, F(1, 3)) == F(1, 3)
    assert disj(0, F(1, 3)) == F(1, 3)
    assert conj(F(2, 5), F(3, 5)) == F(2, 5)


def test_aggregates():
    assert aggregate_forall([1, 1, 1]) == 1
    assert aggregate_exists([0, F(1, 2), F(1, 4)]) == F(1, 2)
    assert aggregate_forall([F(3, 5), 1, F(4, 5)]) == F(3, 5)
    with pytest.raises(EmptyCarrier):
        aggregate_forall([])
    with pytest.raises(EmptyCarrier):
        aggregate_exists([])


def test_tautology_degree():
    assert tautology_degree([(F(1, 3), F(1, 3)), (0, 0)]) == 1
    assert tautology_degree([(F(9, 10), F(1, 2))]) == F(3, 5)
    assert tautology_degree([(F(1, 2), F(9, 10)), (F(9, 10), F(1, 2))]) == F(3, 5)
    assert holds_at(F(3, 5), F(1, 2)) and not holds_at(F(3, 5), F(2, 3))


def test_goedel_toggle():
    assert goedel_implies(F(3, 4), F(1, 2)) == F(1, 2)
    assert tautology_degree([(F(3, 4), F(1, 2))], logic="goedel") == F(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, "0.5", "3/2", -1, F(5, 4), None])
def test_truth_rejects(bad):
    with pytest.raises(IfsaError):
        truth(bad)


def test_truth_parses():
    assert truth("3/6") == F(1, 2)
    assert truth(1) == 1
    assert format_truth(F(2, 4)) == "1/2"
    assert format_truth(F(1)) == "1"


@given(unit, unit)
def test_residuation(a, b):
    assert (luk_implies(a, b) == 1) == (b >= a)
    assert luk_implies(a, b) == imp(a, b)


@given(unit, unit, unit)
def test_monotonicity(a, a2, b):
    lo, hi = sorted((a, a2))
    assert luk_implies(hi, b) <= luk_implies(lo, b)
    assert luk_implies(b, lo) <= luk_implies(b, hi)


@given(unit, unit, unit)
def test_chaining_bound(a, b, c):
    rhs = luk_implies(a, b) + luk_implies(b, c) - 1
    if rhs >= 0:
        assert luk_implies(a, c) >= rhs


@given(st.lists(st.tuples(unit, unit), min_size=1, max_size=12))
def test_coded_implication_matches_scalar(pairs):
    flat = [v for p in pairs for v in p]
    top = common_scale(flat)
    a = encode([p[0] for p in pairs], top)
    b = encode([p[1] for p in pairs], top)
    coded = luk_implies_array(a, b, top)
    assert [decode(k, top) for k in coded] == [luk_implies(x, y) for x, y in pairs]
    assert tautology_degree(pairs) == decode(np.min(coded), top)
