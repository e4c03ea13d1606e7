"""Exact truth values in [0, 1] and the Lukasiewicz evaluation kernel.

Truth values are :class:`fractions.Fraction` instances, which are always kept
in lowest terms with a positive denominator, so equality is structural.

Bulk evaluation works on integer numerators over a shared scale ``top``
(the value ``k / top`` is stored as ``k``).  min, max and the Lukasiewicz
implication ``min(top, top - a + b)`` are all exact on that encoding, so the
array kernels below never round.
"""

from fractions import Fraction
from functools import reduce
from math import lcm

import numpy as np

from .errors import EmptyCarrier, IfsaError

TruthValue = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def truth(value):
    """Coerce ``value`` to a TruthValue, rejecting floats and out-of-range values.

    Accepts ints, Fractions and strings such as ``"3/4"`` or ``"1"``.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise IfsaError(f"truth values must be exact, got {value!r}")
    if isinstance(value, str):
        try:
            v = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise IfsaError(f"cannot parse truth value {value!r}") from exc
        if "." in value or "e" in value.lower():
            raise IfsaError(f"truth values must be written p/q, got {value!r}")
    elif isinstance(value, (int, Fraction, np.integer)):
        v = Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
    else:
        raise IfsaError(f"unsupported truth value type {type(value).__name__}")
    if not ZERO <= v <= ONE:
        raise IfsaError(f"truth value {v} outside [0, 1]")
    return v


def format_truth(value):
    """Serialize as "p/q", or "0"/"1" for the integers."""
    return str(Fraction(value))


def luk_implies(a, b):
    return min(ONE, ONE - a + b)


def goedel_implies(a, b):
    return ONE if a <= b else b


def conj(a, b):
    return min(a, b)


def disj(a, b):
    return max(a, b)


def aggregate_forall(values):
    values = list(values)
    if not values:
        raise EmptyCarrier("inf over an empty carrier")
    return min(values)


def aggregate_exists(values):
    values = list(values)
    if not values:
        raise EmptyCarrier("sup over an empty carrier")
    return max(values)


IMPLICATIONS = {"lukasiewicz": luk_implies, "goedel": goedel_implies}


def tautology_degree(pairs, logic="lukasiewicz"):
    """Infimum of ``antecedent -> consequent`` over all instantiations.

    This is the largest lambda for which the implication is a lambda-tautology.
    """
    imp = IMPLICATIONS[logic]
    return aggregate_forall(imp(a, c) for a, c in pairs)


def holds_at(degree, lam):
    """``|=_lam``: the degree reaches the threshold."""
    return degree >= lam


# ---------------------------------------------------------------------------
# integer-coded arrays

def common_scale(values):
    """Least common denominator of an iterable of Fractions (at least 1)."""
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def encode(values, top):
    """Numerators of ``values`` over ``top``; dtype int64 unless that could overflow."""
    arr = np.asarray(values, dtype=object)
    flat = [int(Fraction(v) * top) for v in arr.ravel()]
    dtype = np.int64 if top < 2**60 else object
    return np.array(flat, dtype=dtype).reshape(arr.shape)


def decode(k, top):
    return Fraction(int(k), top)


def luk_implies_array(a, b, top):
    return np.minimum(top, top - a + b)


def goedel_implies_array(a, b, top):
    return np.where(a <= b, top, b)


ARRAY_IMPLICATIONS = {"lukasiewicz": luk_implies_array, "goedel": goedel_implies_array}


def implication_array(logic):
    try:
        return ARRAY_IMPLICATIONS[logic]
    except KeyError:
        raise IfsaError(f"unknown logic {logic!r}") from None
