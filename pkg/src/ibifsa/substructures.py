"""Subsemiautomaton, kernel and identity-element conditions of a subset of states.

For a machine with letter matrices (A_u, B_u) and a subset S = (mu, nu) of
the state group:

* subsemiautomaton (ii):  A(a, u, b) and mu(a)  ->  mu(b)
  subsemiautomaton (iii): nu(b)  ->  B(a, u, b) or nu(a)
* kernel (ii):  A(bk, u, a) and A(b, u, g) and mu(k)  ->  mu(a g^-1)
  kernel (iii): nu(a g^-1)  ->  B(bk, u, a) or B(b, u, g) or nu(k)
* identity (i):  A(e, u, a) and mu(e)  ->  mu(a)
  identity (ii): nu(a)  ->  B(e, u, a) or nu(e)

Condition (i) of the subsemiautomaton and kernel is the subgroup (resp.
subgroup and normal subgroup) degree of S itself.  The starred variants
quantify u over every word of length <= max_len using the extended
matrices.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import CarrierMismatch
from .ifs import (
    NU_CONVENTION,
    normal_degree,
    conjugation_normal_degree,
    side_degrees,
    subgroup_degree,
)
from .machine import (
    DEFAULT_MAX_LEN,
    extend_word,
    words_up_to,
    word_stack,
)
from .report import (
    DEFAULT_MAX_WITNESSES,
    EMPTY_WORD_CONVENTION,
    DegreeReport,
    Witness,
    collect_witnesses,
)
from .truthval import ONE, decode, luk_implies, goedel_implies

RELATIONS = ("subsemi-star", "kernel-star", "kernel-implies-subsemi", "subsemi-implies-epsilon")


# ---------------------------------------------------------------------------
# array kernels.  a, b: (..., W, n, n) with W the letter (or word) axis;
# mu, nu: (..., n).  Instantiation axes follow W in the order named.

def subsemi_sides(a, b, mu, nu):
    """Axes (W, alpha, beta)."""
    mu_a, mu_b = mu[..., None, :, None], mu[..., None, None, :]
    nu_a, nu_b = nu[..., None, :, None], nu[..., None, None, :]
    return {
        "ii": (np.minimum(a, mu_a), mu_b),
        "iii": (nu_b, np.maximum(b, nu_a)),
    }


def kernel_sides(table, inverse, a, b, mu, nu):
    """Axes (W, alpha, beta, gamma, kappa)."""
    n = table.shape[0]
    idx = np.arange(n)
    bk_rows = table[None, :, None, :]                 # beta*kappa
    alpha_cols = idx[:, None, None, None]
    beta_rows = idx[None, :, None, None]
    gamma_cols = idx[None, None, :, None]
    diff = table[:, np.asarray(inverse)][:, None, :, None]   # alpha * gamma^-1

    a1, a2 = a[..., bk_rows, alpha_cols], a[..., beta_rows, gamma_cols]
    b1, b2 = b[..., bk_rows, alpha_cols], b[..., beta_rows, gamma_cols]
    w = (None,)  # broadcast over the word axis
    mu_k = mu[(Ellipsis,) + w + (None, None, None, slice(None))]
    nu_k = nu[(Ellipsis,) + w + (None, None, None, slice(None))]
    mu_d = np.take(mu, diff, axis=-1)[(Ellipsis,) + w + (slice(None),) * 4]
    nu_d = np.take(nu, diff, axis=-1)[(Ellipsis,) + w + (slice(None),) * 4]
    return {
        "ii": (np.minimum(np.minimum(a1, a2), mu_k), mu_d),
        "iii": (nu_d, np.maximum(np.maximum(b1, b2), nu_k)),
    }


def epsilon_sides(identity, a, b, mu, nu):
    """Axes (W, alpha)."""
    e = identity
    mu_e, nu_e = mu[..., None, e:e + 1], nu[..., None, e:e + 1]
    return {
        "i": (np.minimum(a[..., e, :], mu_e), mu[..., None, :]),
        "ii": (nu[..., None, :], np.maximum(b[..., e, :], nu_e)),
    }


def reduce_degrees(sides, top, n_axes, logic="lukasiewicz"):
    """Per-instance degree of each condition: inf over the trailing axes."""
    axes = tuple(range(-n_axes, 0))
    return {label: deg.min(axis=axes) for label, deg in side_degrees(sides, top, logic).items()}


# ---------------------------------------------------------------------------
# single-instance evaluators

def _conventions(machine, logic, extra=()):
    return (EMPTY_WORD_CONVENTION, NU_CONVENTION, f"structure:{machine.structure}",
            f"logic:{logic}") + tuple(extra)


def _coded(machine, subset):
    if subset.carrier_size != machine.n_states:
        raise CarrierMismatch(
            f"subset has {subset.carrier_size} points, machine has {machine.n_states} states")
    top = lcm(machine.top, subset.coded()[0])
    _, a, b = machine.coded(top)
    _, mu, nu = subset.coded(top)
    return top, a, b, mu, nu


def _namer(machine, words, names):
    def namer(idx):
        if words is None:
            inst = {"letter": machine.alphabet[idx[0]]}
        else:
            inst = {"word": machine.word_text(words[idx[0]])}
        inst.update(zip(names, idx[1:]))
        return inst
    return namer


def _fill(report, sides, top, logic, machine, words, names, lam, limit):
    for label, deg in side_degrees(sides, top, logic).items():
        report.conditions[label] = decode(deg.min(), top)
        ante, cons = sides[label]
        report.witnesses += collect_witnesses(
            label, deg, ante, cons, top, _namer(machine, words, names),
            threshold=ONE if lam is None else lam, limit=limit)


def subsemi_degree(machine, subset, lam=None, logic="lukasiewicz",
                   max_witnesses=DEFAULT_MAX_WITNESSES):
    top, a, b, mu, nu = _coded(machine, subset)
    sg = subgroup_degree(machine.group, subset, logic)
    report = DegreeReport("subsemiautomaton", {"i": sg.overall}, [],
                          _conventions(machine, logic))
    report.notes = sg.as_dict()
    _fill(report, subsemi_sides(a, b, mu, nu), top, logic, machine, None,
          ("alpha", "beta"), lam, max_witnesses)
    return report


def kernel_degree(machine, subset, lam=None, logic="lukasiewicz",
                  max_witnesses=DEFAULT_MAX_WITNESSES):
    top, a, b, mu, nu = _coded(machine, subset)
    g = machine.group
    sg = subgroup_degree(g, subset, logic).overall
    nd = normal_degree(g, subset, logic)
    report = DegreeReport("kernel", {"i": min(sg, nd)}, [], _conventions(machine, logic))
    report.notes = {"subgroup": sg, "normal": nd,
                    "normal_conjugation": conjugation_normal_degree(g, subset, logic)}
    _fill(report, kernel_sides(g.array, g.inverse_array, a, b, mu, nu), top, logic,
          machine, None, ("alpha", "beta", "gamma", "kappa"), lam, max_witnesses)
    return report


def kernel_epsilon_degree(machine, subset, lam=None, logic="lukasiewicz",
                          max_witnesses=DEFAULT_MAX_WITNESSES):
    top, a, b, mu, nu = _coded(machine, subset)
    report = DegreeReport("identity-element conditions", {}, [], _conventions(machine, logic))
    _fill(report, epsilon_sides(machine.group.identity, a, b, mu, nu), top, logic,
          machine, None, ("alpha",), lam, max_witnesses)
    return report


def _star(machine, subset, max_len, mutate):
    top, a, b, mu, nu = _coded(machine, subset)
    words = words_up_to(len(machine.alphabet), max_len)
    xa, xb = word_stack(a, b, top, words, mutate)
    extra = (f"max_len:{max_len}",) + (("mutated",) if mutate else ())
    return top, xa, xb, mu, nu, words, extra


def subsemi_star_degree(machine, subset, max_len=DEFAULT_MAX_LEN, lam=None,
                        logic="lukasiewicz", mutate=False,
                        max_witnesses=DEFAULT_MAX_WITNESSES):
    """Conditions (ii) and (iii) over every word of length <= max_len."""
    top, xa, xb, mu, nu, words, extra = _star(machine, subset, max_len, mutate)
    report = DegreeReport("subsemiautomaton over words", {}, [],
                          _conventions(machine, logic, extra))
    _fill(report, subsemi_sides(xa, xb, mu, nu), top, logic, machine, words,
          ("alpha", "beta"), lam, max_witnesses)
    return report


def kernel_star_degree(machine, subset, max_len=DEFAULT_MAX_LEN, lam=None,
                       logic="lukasiewicz", mutate=False,
                       max_witnesses=DEFAULT_MAX_WITNESSES):
    top, xa, xb, mu, nu, words, extra = _star(machine, subset, max_len, mutate)
    g = machine.group
    report = DegreeReport("kernel over words", {}, [], _conventions(machine, logic, extra))
    _fill(report, kernel_sides(g.array, g.inverse_array, xa, xb, mu, nu), top, logic,
          machine, words, ("alpha", "beta", "gamma", "kappa"), lam, max_witnesses)
    return report


# ---------------------------------------------------------------------------
# theorem relations

@dataclass
class RelationVerdict:
    relation: str
    passed: bool
    lhs: Fraction
    rhs: Fraction
    statement: str
    witnesses: list = field(default_factory=list)

    def to_doc(self):
        return {
            "relation": self.relation,
            "passed": self.passed,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "statement": self.statement,
            "witnesses": [w.to_doc() for w in self.witnesses],
        }


def theorem_relation_check(machine, subset, which, max_len=DEFAULT_MAX_LEN,
                           logic="lukasiewicz", mutate=False):
    """Compare the degree aggregates that a theorem relates.

    ``subsemi-star`` and ``kernel-star``: the word-level degree must reach the
    single-letter overall degree.  ``kernel-implies-subsemi``: subsemiautomaton
    (ii)/(iii) must reach min(kernel overall, identity-element overall).
    ``subsemi-implies-epsilon``: subsemiautomaton (ii)/(iii) may not exceed
    the identity-element degree.  Witnesses are the instantiations of the
    smaller side that fall below the other side.
    """
    if which == "subsemi-star":
        rhs = subsemi_degree(machine, subset, logic=logic).overall
        star = subsemi_star_degree(machine, subset, max_len, lam=rhs, logic=logic,
                                   mutate=mutate)
        lhs, wit = star.overall, star.witnesses
        statement = "subsemi* (ii,iii) >= subsemi overall"
    elif which == "kernel-star":
        rhs = kernel_degree(machine, subset, logic=logic).overall
        star = kernel_star_degree(machine, subset, max_len, lam=rhs, logic=logic,
                                  mutate=mutate)
        lhs, wit = star.overall, star.witnesses
        statement = "kernel* (ii,iii) >= kernel overall"
    elif which == "kernel-implies-subsemi":
        rhs = min(kernel_degree(machine, subset, logic=logic).overall,
                  kernel_epsilon_degree(machine, subset, logic=logic).overall)
        sub = subsemi_degree(machine, subset, lam=rhs, logic=logic)
        lhs = sub.degree("ii", "iii")
        wit = [w for w in sub.witnesses if w.label in ("ii", "iii")]
        statement = "subsemi (ii,iii) >= min(kernel overall, epsilon overall)"
    elif which == "subsemi-implies-epsilon":
        eps = kernel_epsilon_degree(machine, subset, logic=logic)
        sub = subsemi_degree(machine, subset, logic=logic)
        lhs, rhs = eps.overall, sub.degree("ii", "iii")
        wit = [w for w in eps.witnesses if w.degree < rhs]
        statement = "epsilon overall >= subsemi (ii,iii)"
    else:
        raise ValueError(f"unknown relation {which!r}; expected one of {RELATIONS}")
    passed = lhs >= rhs
    return RelationVerdict(which, passed, lhs, rhs, statement, [] if passed else wit)


# ---------------------------------------------------------------------------
# standalone re-evaluation of a witness, straight from the definitions

def evaluate_instantiation(machine, subset, kind, label, inst, mutate=False,
                           logic="lukasiewicz"):
    """Recompute ``(antecedent, consequent, degree)`` for one instantiation.

    ``kind`` is one of subsemi, kernel, epsilon (single letters) or
    subsemi_star, kernel_star (words).  Uses Fractions and plain loops only.
    """
    g = machine.group
    mu, nu = subset.mu, subset.nu
    if "word" in inst:
        pair = extend_word(machine, inst["word"], mutate)
        a, b = pair.a_star, pair.b_star
    else:
        u = machine.letter(inst["letter"])
        a, b = machine.a[u], machine.b[u]
    base = kind.replace("_star", "")
    if base == "subsemi":
        x, y = inst["alpha"], inst["beta"]
        if label == "ii":
            ante, cons = min(a[x][y], mu[x]), mu[y]
        else:
            ante, cons = nu[y], max(b[x][y], nu[x])
    elif base == "kernel":
        al, be, ga, ka = inst["alpha"], inst["beta"], inst["gamma"], inst["kappa"]
        bk = g.mul(be, ka)
        d = g.mul(al, g.inv(ga))
        if label == "ii":
            ante, cons = min(a[bk][al], a[be][ga], mu[ka]), mu[d]
        else:
            ante, cons = nu[d], max(b[bk][al], b[be][ga], nu[ka])
    elif base == "epsilon":
        e, al = g.identity, inst["alpha"]
        if label == "i":
            ante, cons = min(a[e][al], mu[e]), mu[al]
        else:
            ante, cons = nu[al], max(b[e][al], nu[e])
    else:
        raise ValueError(f"unknown kind {kind!r}")
    imp = luk_implies if logic == "lukasiewicz" else goedel_implies
    return ante, cons, imp(ante, cons)


def witness_reproduces(machine, subset, kind, witness, mutate=False, logic="lukasiewicz"):
    ante, cons, deg = evaluate_instantiation(machine, subset, kind, witness.label,
                                             witness.instantiation, mutate, logic)
    return (ante, cons, deg) == (witness.antecedent, witness.consequent, witness.degree)


__all__ = [
    "DegreeReport", "Witness", "RelationVerdict", "RELATIONS",
    "subsemi_degree", "kernel_degree", "kernel_epsilon_degree",
    "subsemi_star_degree", "kernel_star_degree", "theorem_relation_check",
    "evaluate_instantiation", "witness_reproduces",
    "subsemi_sides", "kernel_sides", "epsilon_sides", "reduce_degrees",
]
