"""Intuitionistic fuzzy subsets of a finite carrier and the group-level checks.

An :class:`IFSubset` pairs a membership map ``mu`` with a nonmembership map
``nu`` satisfying ``mu(x) + nu(x) <= 1``.  The checks return tautology
degrees rather than booleans; a subset passes at threshold ``lam`` when the
degree is at least ``lam``.

Nonmembership conditions are obtained from the membership ones by reversing
the implication and swapping min for max (convention ``dual-nu-v1``).
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CarrierMismatch, ConsistencyViolation, DocumentError, LengthMismatch
from .truthval import ONE, common_scale, decode, encode, implication_array, truth

NU_CONVENTION = "dual-nu-v1"


@dataclass(frozen=True)
class IFSubset:
    mu: tuple
    nu: tuple

    @property
    def carrier_size(self):
        return len(self.mu)

    def coded(self, top=None):
        """Return ``(top, mu, nu)`` with integer numerators over ``top``."""
        if top is None:
            top = common_scale(self.mu + self.nu)
        return top, encode(self.mu, top), encode(self.nu, top)

    def is_crisp(self):
        return all(v in (0, 1) for v in self.mu + self.nu)

    def to_doc(self, carrier="group"):
        return {
            "carrier": carrier,
            "mu": [str(v) for v in self.mu],
            "nu": [str(v) for v in self.nu],
        }


def validate_ifs(carrier_size, mu, nu):
    mu = tuple(truth(v) for v in mu)
    nu = tuple(truth(v) for v in nu)
    if len(mu) != carrier_size or len(nu) != carrier_size:
        raise LengthMismatch(
            f"expected {carrier_size} values, got mu={len(mu)} nu={len(nu)}")
    for x, (m, n) in enumerate(zip(mu, nu)):
        if m + n > 1:
            raise ConsistencyViolation(x, m, n)
    return IFSubset(mu, nu)


def whole(carrier_size):
    """The total subset: mu = 1, nu = 0 everywhere."""
    return IFSubset((ONE,) * carrier_size, (Fraction(0),) * carrier_size)


def ifs_from_doc(doc, carrier_size):
    if not isinstance(doc, dict) or "mu" not in doc or "nu" not in doc:
        raise DocumentError("IFS document needs 'mu' and 'nu'")
    return validate_ifs(carrier_size, doc["mu"], doc["nu"])


def _check_carrier(group, subset):
    if subset.carrier_size != group.order:
        raise CarrierMismatch(
            f"subset has {subset.carrier_size} points, group has order {group.order}")


# ---------------------------------------------------------------------------
# array kernels: mu, nu have shape (..., n).  Each returns label ->
# (antecedent, consequent); the condition's degree is the inf of the
# implication over every cell.

def subgroup_sides(table, inverse, mu, nu):
    mu_x, mu_y = mu[..., :, None], mu[..., None, :]
    nu_x, nu_y = nu[..., :, None], nu[..., None, :]
    return {
        "closure_mu": (np.minimum(mu_x, mu_y), np.take(mu, table, axis=-1)),
        "inverse_mu": (mu, np.take(mu, inverse, axis=-1)),
        "closure_nu": (np.take(nu, table, axis=-1), np.maximum(nu_x, nu_y)),
        "inverse_nu": (np.take(nu, inverse, axis=-1), nu),
    }


def normal_sides(table, mu, nu):
    """Commutation form: (xy in A) -> (yx in A), and the nu dual."""
    mu_xy, mu_yx = np.take(mu, table, axis=-1), np.take(mu, table.T, axis=-1)
    nu_xy, nu_yx = np.take(nu, table, axis=-1), np.take(nu, table.T, axis=-1)
    return {"normal_mu": (mu_xy, mu_yx), "normal_nu": (nu_yx, nu_xy)}


def conjugation_sides(table, inverse, mu, nu):
    """Conjugation form: (y in A) -> (x y x^-1 in A), indexed [x, y]."""
    conj = table[table, np.asarray(inverse)[:, None]]
    mu_c, nu_c = np.take(mu, conj, axis=-1), np.take(nu, conj, axis=-1)
    return {
        "conjugation_mu": (mu[..., None, :], mu_c),
        "conjugation_nu": (nu_c, nu[..., None, :]),
    }


def identity_sides(identity, mu, nu):
    return {
        "identity_mu": (mu, mu[..., identity:identity + 1]),
        "identity_nu": (nu[..., identity:identity + 1], nu),
    }


def side_degrees(sides, top, logic="lukasiewicz"):
    """Implication value per cell, broadcast to the full instantiation shape."""
    imp = implication_array(logic)
    return {label: imp(ante, cons, top) for label, (ante, cons) in sides.items()}


def classical_subgroup_arrays(table, inverse, mu, nu):
    """Boolean form of the plain inequalities, one flag per leading index."""
    mu_xy, nu_xy = np.take(mu, table, axis=-1), np.take(nu, table, axis=-1)
    mu_x, mu_y = mu[..., :, None], mu[..., None, :]
    nu_x, nu_y = nu[..., :, None], nu[..., None, :]
    mu_inv, nu_inv = np.take(mu, inverse, axis=-1), np.take(nu, inverse, axis=-1)
    ok = (mu_xy >= np.minimum(mu_x, mu_y)).all(axis=(-2, -1))
    ok &= (nu_xy <= np.maximum(nu_x, nu_y)).all(axis=(-2, -1))
    ok &= (mu_inv >= mu).all(axis=-1)
    ok &= (nu_inv <= nu).all(axis=-1)
    return ok


# ---------------------------------------------------------------------------
# single-instance checks

def _lex_min(arr):
    """(minimum, first index achieving it in row-major order)."""
    flat = int(np.argmin(arr))
    return arr.ravel()[flat], tuple(int(i) for i in np.unravel_index(flat, arr.shape))


@dataclass(frozen=True)
class SubgroupDegrees:
    closure_mu: Fraction
    inverse_mu: Fraction
    closure_nu: Fraction
    inverse_nu: Fraction
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def overall(self):
        return min(self.closure_mu, self.inverse_mu, self.closure_nu, self.inverse_nu)

    def as_dict(self):
        return {
            "closure_mu": self.closure_mu,
            "inverse_mu": self.inverse_mu,
            "closure_nu": self.closure_nu,
            "inverse_nu": self.inverse_nu,
        }


def _degrees(arrays, top):
    degrees, witnesses = {}, {}
    for label, arr in arrays.items():
        k, where = _lex_min(arr)
        degrees[label] = decode(k, top)
        if degrees[label] < 1:
            witnesses[label] = where
    return degrees, witnesses


def subgroup_degree(group, subset, logic="lukasiewicz"):
    """Degrees of closure and inverse for mu and nu.

    Witnesses map each failing condition to the lexicographically first
    instantiation, ``(x, y)`` for closure and ``(x,)`` for inverses.
    """
    _check_carrier(group, subset)
    top, mu, nu = subset.coded()
    sides = subgroup_sides(group.array, group.inverse_array, mu, nu)
    degrees, witnesses = _degrees(side_degrees(sides, top, logic), top)
    return SubgroupDegrees(witnesses=witnesses, **degrees)


def normal_degree(group, subset, logic="lukasiewicz"):
    _check_carrier(group, subset)
    top, mu, nu = subset.coded()
    sides = normal_sides(group.array, mu, nu)
    return min(_degrees(side_degrees(sides, top, logic), top)[0].values())


def conjugation_normal_degree(group, subset, logic="lukasiewicz"):
    """Normality in the conjugation form, reported next to :func:`normal_degree`."""
    _check_carrier(group, subset)
    top, mu, nu = subset.coded()
    sides = conjugation_sides(group.array, group.inverse_array, mu, nu)
    return min(_degrees(side_degrees(sides, top, logic), top)[0].values())


def identity_condition_degree(group, subset, logic="lukasiewicz"):
    _check_carrier(group, subset)
    top, mu, nu = subset.coded()
    sides = identity_sides(group.identity, mu, nu)
    return min(_degrees(side_degrees(sides, top, logic), top)[0].values())


def is_if_subgroup_classical(group, subset):
    """The textbook inequalities on mu and nu, evaluated pointwise."""
    _check_carrier(group, subset)
    mu, nu = subset.mu, subset.nu
    for x in group.elements:
        if mu[group.inv(x)] < mu[x] or nu[group.inv(x)] > nu[x]:
            return False
        for y in group.elements:
            xy = group.mul(x, y)
            if mu[xy] < min(mu[x], mu[y]) or nu[xy] > max(nu[x], nu[y]):
                return False
    return True


# ---------------------------------------------------------------------------
# homomorphic image and preimage

def hom_image(hom, subset):
    """Sup of mu and inf of nu over each fiber; points outside f(G) get (0, 1)."""
    if subset.carrier_size != hom.source.order:
        raise CarrierMismatch("subset is not over the homomorphism's source")
    n = hom.target.order
    mu = [Fraction(0)] * n
    nu = [ONE] * n
    for x in hom.source.elements:
        y = hom(x)
        mu[y] = max(mu[y], subset.mu[x])
        nu[y] = min(nu[y], subset.nu[x])
    return IFSubset(tuple(mu), tuple(nu))


def hom_preimage(hom, subset):
    if subset.carrier_size != hom.target.order:
        raise CarrierMismatch("subset is not over the homomorphism's target")
    return IFSubset(
        tuple(subset.mu[hom(x)] for x in hom.source.elements),
        tuple(subset.nu[hom(x)] for x in hom.source.elements),
    )


# ---------------------------------------------------------------------------
# reports for the group-level checks

def _group_report(title, group, subset, sides_fn, names, lam, logic, notes=None):
    from .report import DegreeReport, collect_witnesses

    _check_carrier(group, subset)
    top, mu, nu = subset.coded()
    sides = sides_fn(mu, nu)
    report = DegreeReport(title, {}, [], (NU_CONVENTION, f"logic:{logic}"), notes or {})
    threshold = ONE if lam is None else lam
    for label, arr in side_degrees(sides, top, logic).items():
        ante, cons = sides[label]
        arr = np.broadcast_to(arr, np.broadcast_shapes(np.shape(ante), np.shape(cons)))
        report.conditions[label] = decode(arr.min(), top)
        axis_names = names[:arr.ndim]
        namer = lambda idx, axis_names=axis_names: dict(zip(axis_names, idx))
        report.witnesses += collect_witnesses(label, arr, ante, cons, top, namer,
                                              threshold=threshold)
    return report


def subgroup_report(group, subset, lam=None, logic="lukasiewicz"):
    return _group_report(
        "fuzzy subgroup", group, subset,
        lambda mu, nu: subgroup_sides(group.array, group.inverse_array, mu, nu),
        ("xi", "psi"), lam, logic)


def normal_report(group, subset, lam=None, logic="lukasiewicz"):
    """Commutation form; the conjugation-form degree rides along in the notes."""
    notes = {"conjugation_form": conjugation_normal_degree(group, subset, logic)}
    return _group_report(
        "normal fuzzy subgroup", group, subset,
        lambda mu, nu: normal_sides(group.array, mu, nu),
        ("xi", "psi"), lam, logic, notes)


def identity_report(group, subset, lam=None, logic="lukasiewicz"):
    notes = {"subgroup": subgroup_degree(group, subset, logic).overall}
    return _group_report(
        "identity condition", group, subset,
        lambda mu, nu: identity_sides(group.identity, mu, nu),
        ("xi",), lam, logic, notes)
