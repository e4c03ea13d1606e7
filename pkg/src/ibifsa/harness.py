"""Instance generation and counterexample search.

Instances are (machine, subset) pairs over a fixed group whose truth values
all lie on the grid ``k / D``.  Two sources exist:

* :class:`InstanceGrid` enumerates every instance in lexicographic order
  (transition entries letter-major, then the subset; each entry runs over
  its legal (mu, nu) pairs).  With ``structured=True`` only machines whose
  letters are fuzzy subgroups of G x G at degree 1, and subsets that are
  fuzzy subgroups of G at degree 1, are kept; the order is the same.
* :class:`RandomSample` draws ``mu = k/D`` uniformly, then ``nu`` uniformly
  from ``0 .. D-k``, with a seeded generator.

Search evaluates checks in batches over integer-coded arrays (numerators
over D) and only builds Fraction-valued objects for instances that need a
witness.  Machine-only checks run once per distinct machine and
subset-only checks once per distinct subset; the instance count still
covers the whole source.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
import hashlib
import json
import time

import numpy as np

from .errors import GridTooLarge, IfsaError
from .group import direct_product, make_standard, validate_cayley
from .ifs import (
    IFSubset,
    classical_subgroup_arrays,
    identity_sides,
    ifs_from_doc,
    normal_sides,
    side_degrees,
    subgroup_sides,
)
from .machine import (
    DEFAULT_MAX_LEN,
    build_machine,
    concat_equality_check,
    concat_violation_flags,
    extend_word,
    machine_from_doc,
    word_stack,
    words_up_to,
)
from .substructures import (
    epsilon_sides,
    kernel_sides,
    reduce_degrees,
    subsemi_sides,
    theorem_relation_check,
)
from .truthval import format_truth, implication_array, luk_implies

DEFAULT_CAP = 10**7

THEOREMS = {
    "thm-ext": "concatenation law for extended transitions",
    "thm-subsemi-star": "subsemiautomaton conditions extend to words",
    "thm-kernel-star": "kernel conditions extend to words",
    "thm-kernel-subsemi": "kernel with identity-element conditions is a subsemiautomaton",
    "prop-identity": "identity element has maximal membership in a fuzzy subgroup",
    "consistency": "extended transitions keep mu + nu <= 1",
    "subset-law": "subsemiautomaton (ii,iii) degree <= identity-element degree",
    "classical-oracle": "degree 1 agrees with the classical inequalities and crisp semantics",
}

# which index the check depends on
_UNIT = {
    "thm-ext": "machine",
    "consistency": "machine",
    "prop-identity": "subset",
    "thm-subsemi-star": "instance",
    "thm-kernel-star": "instance",
    "thm-kernel-subsemi": "instance",
    "subset-law": "instance",
    "classical-oracle": "instance",
}


def entry_pairs(denominator):
    """Legal (mu, nu) numerator pairs for one entry, lexicographic."""
    return [(m, v) for m in range(denominator + 1) for v in range(denominator + 1 - m)]


def _dtype(top):
    return np.int16 if 2 * top < np.iinfo(np.int16).max else np.int64


# ---------------------------------------------------------------------------
# structured options: degree-1 fuzzy subgroups via nested level sets

def subgroups(group):
    """Every subgroup of ``group`` as a sorted tuple of elements."""
    table = group.table

    def closure(gens):
        elems = {group.identity} | set(gens)
        frontier = list(elems)
        while frontier:
            new = []
            for x in frontier:
                for y in list(elems):
                    for z in (table[x][y], table[y][x]):
                        if z not in elems:
                            elems.add(z)
                            new.append(z)
            frontier = new
        return frozenset(elems)

    found = {closure(())}
    queue = list(found)
    while queue:
        h = queue.pop()
        for g in group.elements:
            if g not in h:
                k = closure(h | {g})
                if k not in found:
                    found.add(k)
                    queue.append(k)
    return sorted(tuple(sorted(h)) for h in found)


def _level_chains(subs, depth):
    """Nested sequences S_1 <= S_2 <= ... <= S_depth of subgroups or empty sets."""
    options = [frozenset()] + [frozenset(h) for h in subs]
    chains = [()]
    for _ in range(depth):
        chains = [c + (h,) for c in chains for h in options if not c or c[-1] <= h]
    return chains


def structured_options(group, denominator):
    """All (mu, nu) numerator vectors over ``group`` that form a fuzzy subgroup
    at degree 1 and satisfy mu + nu <= D, in lexicographic entry order."""
    n, d = group.order, denominator
    chains = _level_chains(subgroups(group), d)
    mus, nus = [], []
    for chain in chains:
        # chain[0] <= ... <= chain[-1]; mu >= D - i on chain[i], nu <= i on chain[i]
        mu = np.zeros(n, dtype=np.int64)
        nu = np.full(n, d, dtype=np.int64)
        for i, level in enumerate(chain):
            for x in level:
                mu[x] = max(mu[x], d - i)
                nu[x] = min(nu[x], i)
        mus.append(mu)
        nus.append(nu)
    mus, nus = np.array(mus), np.array(nus)
    ok = (mus[:, None, :] + nus[None, :, :] <= d).all(axis=-1)
    mi, ni = np.nonzero(ok)
    mu, nu = mus[mi], nus[ni]
    codes = _pair_code(mu, nu, d)
    order = np.lexsort(codes.T[::-1])
    return mu[order], nu[order]


def _pair_code(mu, nu, d):
    """Position of each (mu, nu) pair in :func:`entry_pairs` order."""
    return mu * (d + 1) - mu * (mu - 1) // 2 + nu


# ---------------------------------------------------------------------------
# sources

class _Source:
    """Common interface: integer-coded machines and subsets by index."""

    group = None
    top = 1
    alphabet = ()
    structure = "none"

    def instance_units(self, idx):
        """Map instance indices to (machine index, subset index)."""
        raise NotImplementedError

    def instance(self, i):
        """Fraction-valued (Machine, IFSubset) for instance ``i``."""
        m, s = self.instance_units(np.array([i]))
        a, b = self.machines(m)
        mu, nu = self.subsets(s)
        return _to_objects(self, a[0], b[0], mu[0], nu[0])

    def __iter__(self):
        for i in range(self.count):
            yield self.instance(i)


def _to_objects(source, a, b, mu, nu):
    d = source.top
    frac = np.vectorize(lambda k: Fraction(int(k), d), otypes=[object])
    machine = build_machine(source.group, source.alphabet,
                            [frac(m).tolist() for m in a], [frac(m).tolist() for m in b],
                            1, source.structure)
    subset = IFSubset(tuple(frac(mu).tolist()), tuple(frac(nu).tolist()))
    return machine, subset


class InstanceGrid(_Source):
    def __init__(self, group, denominator, alphabet_size=1, structured=False, cap=DEFAULT_CAP):
        if denominator < 1:
            raise IfsaError("grid denominator must be at least 1")
        if alphabet_size < 1:
            raise IfsaError("alphabet size must be at least 1")
        self.group_spec = group if isinstance(group, str) else group.name
        self.group = make_standard(group) if isinstance(group, str) else group
        self.top = denominator
        self.alphabet = tuple("uvwxyz"[i] if i < 6 else f"s{i}" for i in range(alphabet_size))
        self.structured = structured
        self.structure = "product-subgroup" if structured else "none"
        self.cap = cap
        n, k, d = self.group.order, alphabet_size, denominator
        self.dtype = _dtype(d)
        if structured:
            sq = direct_product(self.group, self.group) if n * n <= 120 else _square(self.group)
            la, lb = structured_options(sq, d)
            self._letter_a = la.reshape(-1, n, n).astype(self.dtype)
            self._letter_b = lb.reshape(-1, n, n).astype(self.dtype)
            sm, sn = structured_options(self.group, d)
            self._sub_mu, self._sub_nu = sm.astype(self.dtype), sn.astype(self.dtype)
            self.letter_count = len(self._letter_a)
            self.machine_count = self.letter_count ** k
            self.subset_count = len(self._sub_mu)
        else:
            pairs = np.array(entry_pairs(d), dtype=self.dtype)
            self._pairs = pairs
            p = len(pairs)
            self.machine_count = p ** (k * n * n)
            self.subset_count = p ** n
        self.count = self.machine_count * self.subset_count

    def params(self):
        return {"source": "grid", "group": self.group_spec, "denominator": self.top,
                "alphabet_size": len(self.alphabet), "structured": self.structured,
                "count": self.count}

    def check_cap(self):
        if self.count > self.cap:
            raise GridTooLarge(self.count, self.cap)

    def instance_units(self, idx):
        return idx // self.subset_count, idx % self.subset_count

    def _digits(self, idx, base, width):
        idx = np.asarray(idx, dtype=object if base ** width >= 2**62 else np.int64)
        out = np.empty(idx.shape + (width,), dtype=np.int64)
        rest = idx.copy()
        for pos in range(width - 1, -1, -1):
            out[..., pos] = (rest % base).astype(np.int64)
            rest = rest // base
        return out

    def machines(self, idx):
        n, k = self.group.order, len(self.alphabet)
        if self.structured:
            digits = self._digits(idx, self.letter_count, k)
            return self._letter_a[digits], self._letter_b[digits]
        digits = self._digits(idx, len(self._pairs), k * n * n)
        pairs = self._pairs[digits]
        shape = (len(idx), k, n, n)
        return pairs[..., 0].reshape(shape), pairs[..., 1].reshape(shape)

    def subsets(self, idx):
        if self.structured:
            return self._sub_mu[idx], self._sub_nu[idx]
        n = self.group.order
        pairs = self._pairs[self._digits(idx, len(self._pairs), n)]
        return pairs[..., 0], pairs[..., 1]


def _square(group):
    # G x G for groups too large for the standard product constructor
    n = group.order
    t = group.array
    table = (t[:, None, :, None] * n + t[None, :, None, :]).reshape(n * n, n * n)
    return validate_cayley(table.tolist())


class RandomSample(_Source):
    def __init__(self, group, denominator, count, seed=42, alphabet_size=1):
        if count < 1:
            raise IfsaError("sample count must be at least 1")
        if denominator < 1:
            raise IfsaError("denominator must be at least 1")
        self.group_spec = group if isinstance(group, str) else group.name
        self.group = make_standard(group) if isinstance(group, str) else group
        self.top = denominator
        self.seed = seed
        self.alphabet = tuple("uvwxyz"[i] if i < 6 else f"s{i}" for i in range(alphabet_size))
        self.structure = "none"
        self.count = self.machine_count = self.subset_count = count
        n, k, d = self.group.order, alphabet_size, denominator
        self.dtype = _dtype(d)
        rng = np.random.default_rng(seed)
        entries = k * n * n + n
        mu = rng.integers(0, d + 1, size=(count, entries))
        nu = rng.integers(0, d - mu + 1)
        self._a = mu[:, :k * n * n].reshape(count, k, n, n).astype(self.dtype)
        self._b = nu[:, :k * n * n].reshape(count, k, n, n).astype(self.dtype)
        self._mu = mu[:, k * n * n:].astype(self.dtype)
        self._nu = nu[:, k * n * n:].astype(self.dtype)

    def params(self):
        return {"source": "sample", "group": self.group_spec, "denominator": self.top,
                "alphabet_size": len(self.alphabet), "samples": self.count, "seed": self.seed}

    def check_cap(self):
        pass

    def instance_units(self, idx):
        return idx, idx

    def machines(self, idx):
        return self._a[idx], self._b[idx]

    def subsets(self, idx):
        return self._mu[idx], self._nu[idx]


def enumerate_grid(grid):
    """Every valid instance of ``grid`` in lexicographic order.

    Raises GridTooLarge (with the exact count) before yielding anything when
    the grid exceeds its cap.
    """
    grid.check_cap()
    return iter(grid)


def sample_random(group, alphabet_size, denominator, count, seed):
    return iter(RandomSample(group, denominator, count, seed, alphabet_size))


# ---------------------------------------------------------------------------
# batch evaluation

def _subgroup_overall(src, mu, nu, logic):
    g = src.group
    sides = subgroup_sides(g.array, g.inverse_array, mu, nu)
    degs = side_degrees(sides, src.top, logic)
    return np.minimum.reduce([d.reshape(d.shape[:1] + (-1,)).min(axis=1) for d in degs.values()])


def _normal(src, mu, nu, logic):
    degs = side_degrees(normal_sides(src.group.array, mu, nu), src.top, logic)
    return np.minimum.reduce([d.min(axis=(-2, -1)) for d in degs.values()])


def _identity(src, mu, nu, logic):
    degs = side_degrees(identity_sides(src.group.identity, mu, nu), src.top, logic)
    return np.minimum.reduce([d.min(axis=-1) for d in degs.values()])


def _min2(d):
    return np.minimum(d["ii"], d["iii"])


def _subsemi(src, a, b, mu, nu, logic):
    return _min2(reduce_degrees(subsemi_sides(a, b, mu, nu), src.top, 3, logic))


def _kernel(src, a, b, mu, nu, logic):
    g = src.group
    return _min2(reduce_degrees(kernel_sides(g.array, g.inverse_array, a, b, mu, nu),
                                src.top, 5, logic))


def _epsilon(src, a, b, mu, nu, logic):
    d = reduce_degrees(epsilon_sides(src.group.identity, a, b, mu, nu), src.top, 2, logic)
    return np.minimum(d["i"], d["ii"])


@dataclass
class _Hit:
    index: int          # instance index (first instance for machine/subset units)
    kind: str           # "counterexample" or "finding"
    detail: dict


def _evaluate_chunk(args):
    src, theorem, start, stop, max_len, mutate, logic, findings = args
    top = src.top
    unit = _UNIT[theorem]
    units = np.arange(start, stop)
    hits = []

    def first_instance(u):
        # machines and subsets report the first instance that uses them
        if unit == "machine" and isinstance(src, InstanceGrid):
            return int(u) * src.subset_count
        return int(u)

    if unit == "machine":
        a, b = src.machines(units)
    elif unit == "subset":
        mu, nu = src.subsets(units)
    else:
        m, s = src.instance_units(units)
        a, b = src.machines(m)
        mu, nu = src.subsets(s)
    words = words_up_to(len(src.alphabet), max_len)

    def star_stack():
        return word_stack(a, b, top, words, mutate)

    if theorem == "thm-ext":
        bad = concat_violation_flags(a, b, top, max_len, mutate)
        for j in np.flatnonzero(bad):
            hits.append(_Hit(first_instance(units[j]), "counterexample", {}))

    elif theorem == "consistency":
        xa, xb = star_stack()
        bad = (xa.astype(np.int64) + xb > top).any(axis=(-3, -2, -1))
        for j in np.flatnonzero(bad):
            hits.append(_Hit(first_instance(units[j]), "counterexample", {}))

    elif theorem == "prop-identity":
        sg = _subgroup_overall(src, mu, nu, logic)
        ident = _identity(src, mu, nu, logic)
        bound = np.maximum(0, 2 * sg.astype(np.int64) - top)
        hard = ((sg == top) & (ident < top)) | (ident < bound)
        soft = (ident < sg) & ~hard
        for j in np.flatnonzero(hard):
            hits.append(_Hit(first_instance(units[j]), "counterexample",
                             {"subgroup": int(sg[j]), "identity": int(ident[j])}))
        if findings:
            for j in np.flatnonzero(soft):
                hits.append(_Hit(first_instance(units[j]), "finding",
                                 {"subgroup": int(sg[j]), "identity": int(ident[j])}))

    elif theorem == "thm-subsemi-star":
        single = np.minimum(_subgroup_overall(src, mu, nu, logic),
                            _subsemi(src, a, b, mu, nu, logic))
        xa, xb = star_stack()
        star = _subsemi(src, xa, xb, mu, nu, logic)
        _classify(hits, units, star, single, top, findings,
                  lambda j: first_instance(units[j]), "star", "single")

    elif theorem == "thm-kernel-star":
        single = np.minimum(np.minimum(_subgroup_overall(src, mu, nu, logic),
                                       _normal(src, mu, nu, logic)),
                            _kernel(src, a, b, mu, nu, logic))
        need = single == top if not findings else single > 0
        star = np.full(single.shape, top, dtype=np.int64)
        sel = np.flatnonzero(need)
        if len(sel):
            xa, xb = word_stack(a[sel], b[sel], top, words, mutate)
            star[sel] = _kernel(src, xa, xb, mu[sel], nu[sel], logic)
        _classify(hits, units, star, single, top, findings,
                  lambda j: first_instance(units[j]), "star", "single")

    elif theorem == "thm-kernel-subsemi":
        kern = np.minimum(np.minimum(_subgroup_overall(src, mu, nu, logic),
                                     _normal(src, mu, nu, logic)),
                          _kernel(src, a, b, mu, nu, logic))
        premise = np.minimum(kern, _epsilon(src, a, b, mu, nu, logic))
        sub = _subsemi(src, a, b, mu, nu, logic)
        _classify(hits, units, sub, premise, top, findings,
                  lambda j: first_instance(units[j]), "subsemi", "premise")

    elif theorem == "subset-law":
        sub = _subsemi(src, a, b, mu, nu, logic)
        eps = _epsilon(src, a, b, mu, nu, logic)
        for j in np.flatnonzero(sub > eps):
            hits.append(_Hit(first_instance(units[j]), "counterexample",
                             {"subsemi": int(sub[j]), "epsilon": int(eps[j])}))

    elif theorem == "classical-oracle":
        hits += _classical_chunk(src, units, a, b, mu, nu, logic)

    else:
        raise IfsaError(f"unknown theorem {theorem!r}")
    return [(h.index, h.kind, h.detail) for h in hits]


def _classify(hits, units, got, claimed, top, findings, where, got_name, claimed_name):
    """Hard failure when the claim holds at degree 1 but ``got`` falls short;
    a finding when ``got`` falls below a fractional claim."""
    got = np.asarray(got)
    hard = (claimed == top) & (got < top)
    soft = (got < claimed) & ~hard
    for j in np.flatnonzero(hard):
        hits.append(_Hit(where(j), "counterexample",
                         {got_name: int(got[j]), claimed_name: int(claimed[j])}))
    if findings:
        for j in np.flatnonzero(soft):
            hits.append(_Hit(where(j), "finding",
                             {got_name: int(got[j]), claimed_name: int(claimed[j])}))


# ---------------------------------------------------------------------------
# classical oracle: inequality form and crisp set semantics

def crisp_semantics(group, a, b, mu, nu):
    """Set-based verdicts for a crisp instance (all values 0 or 1).

    ``a``, ``b`` are per-letter boolean relation matrices "entry is 1",
    ``mu``/``nu`` boolean vectors.  Returns dict condition -> bool.
    """
    n, e = group.order, group.identity
    mul, inv = group.mul, group.inv
    member = {x for x in range(n) if mu[x]}
    zero_nu = {x for x in range(n) if not nu[x]}

    def closed(s):
        return all(mul(x, y) in s for x in s for y in s) and all(inv(x) in s for x in s)

    def image(rel, x):
        return {y for y in range(n) if rel[x][y]}

    no_b = [[[not v for v in row] for row in letter] for letter in b]
    out = {
        "subgroup": closed(member) and closed(zero_nu),
        "normal": all((mul(y, x) in member) == (mul(x, y) in member) or mul(x, y) not in member
                      for x in range(n) for y in range(n))
                  and all(mul(y, x) in zero_nu or mul(x, y) not in zero_nu
                          for x in range(n) for y in range(n)),
        "subsemi_ii": all(image(r, x) <= member for r in a for x in member),
        "subsemi_iii": all(image(r, x) <= zero_nu for r in no_b for x in zero_nu),
        "eps_i": e not in member or all(image(r, e) <= member for r in a),
        "eps_ii": e not in zero_nu or all(image(r, e) <= zero_nu for r in no_b),
    }

    def kernel_ok(rels, s):
        for r in rels:
            for beta in range(n):
                right = image(r, beta)
                for kappa in s:
                    for alpha in image(r, mul(beta, kappa)):
                        if any(mul(alpha, inv(g)) not in s for g in right):
                            return False
        return True

    out["kernel_ii"] = kernel_ok(a, member)
    out["kernel_iii"] = kernel_ok(no_b, zero_nu)
    return out


def _classical_chunk(src, units, a, b, mu, nu, logic):
    top, g = src.top, src.group
    hits = []
    sg = _subgroup_overall(src, mu, nu, logic)
    classical = classical_subgroup_arrays(g.array, g.inverse_array, mu, nu)
    normal = _normal(src, mu, nu, logic)
    for j in np.flatnonzero((sg == top) != classical):
        hits.append(_Hit(int(units[j]), "counterexample",
                         {"check": "subgroup-vs-inequalities", "degree": int(sg[j]),
                          "classical": bool(classical[j])}))
    if g.is_abelian():
        for j in np.flatnonzero(normal < top):
            hits.append(_Hit(int(units[j]), "counterexample",
                             {"check": "normal-on-abelian", "degree": int(normal[j])}))
    crisp = ((a == 0) | (a == top)).all(axis=(-3, -2, -1)) \
        & ((b == 0) | (b == top)).all(axis=(-3, -2, -1)) \
        & ((mu == 0) | (mu == top)).all(axis=-1) & ((nu == 0) | (nu == top)).all(axis=-1)
    sel = np.flatnonzero(crisp)
    if not len(sel):
        return hits
    a_s, b_s, mu_s, nu_s = a[sel], b[sel], mu[sel], nu[sel]
    sub = reduce_degrees(subsemi_sides(a_s, b_s, mu_s, nu_s), top, 3, logic)
    ker = reduce_degrees(kernel_sides(g.array, g.inverse_array, a_s, b_s, mu_s, nu_s),
                         top, 5, logic)
    eps = reduce_degrees(epsilon_sides(g.identity, a_s, b_s, mu_s, nu_s), top, 2, logic)
    degrees = {
        "subgroup": sg[sel], "normal": normal[sel],
        "subsemi_ii": sub["ii"], "subsemi_iii": sub["iii"],
        "kernel_ii": ker["ii"], "kernel_iii": ker["iii"],
        "eps_i": eps["i"], "eps_ii": eps["ii"],
    }
    for pos, j in enumerate(sel):
        sem = crisp_semantics(g, a_s[pos] == top, b_s[pos] == top, mu_s[pos] == top,
                              nu_s[pos] == top)
        for name, verdict in sem.items():
            deg = int(degrees[name][pos])
            if deg not in (0, top) or (deg == top) != verdict:
                hits.append(_Hit(int(units[j]), "counterexample",
                                 {"check": f"crisp-{name}", "degree": deg,
                                  "classical": verdict}))
    return hits


# ---------------------------------------------------------------------------
# reports

def instance_doc(machine, subset):
    return {"machine": machine.to_doc(), "subset": subset.to_doc()}


def instance_from_doc(doc):
    machine = machine_from_doc(doc["machine"])
    return machine, ifs_from_doc(doc["subset"], machine.n_states)


def digest(doc):
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def single_check(theorem, machine, subset, max_len=DEFAULT_MAX_LEN, mutate=False,
                 logic="lukasiewicz"):
    """Re-run one theorem's check on one instance; returns (degrees, witness doc or None).

    This is the single-instance path used to attach witnesses and to replay
    report entries.
    """
    if theorem == "thm-ext":
        rep = concat_equality_check(machine, max_len, mutate)
        wit = rep.witnesses[0].to_doc() if rep.witnesses else None
        return {"mismatches": len(rep.witnesses)}, wit
    if theorem == "consistency":
        for word in words_up_to(len(machine.alphabet), max_len):
            pair = extend_word(machine, word, mutate)
            for x in range(machine.n_states):
                for y in range(machine.n_states):
                    total = pair.a_star[x][y] + pair.b_star[x][y]
                    if total > 1:
                        return {"violations": 1}, {"word": machine.word_text(word), "alpha": x,
                                                   "beta": y, "a_star": str(pair.a_star[x][y]),
                                                   "b_star": str(pair.b_star[x][y])}
        return {"violations": 0}, None
    if theorem == "prop-identity":
        from .ifs import identity_condition_degree, subgroup_degree

        g = machine.group
        sg = subgroup_degree(g, subset, logic).overall
        ident = identity_condition_degree(g, subset, logic)
        wit = None
        e = g.identity
        for x in g.elements:
            for label, ante, cons in (("identity_mu", subset.mu[x], subset.mu[e]),
                                      ("identity_nu", subset.nu[e], subset.nu[x])):
                if luk_implies(ante, cons) == ident and ident < 1 and wit is None:
                    wit = {"condition": label, "instantiation": {"xi": x},
                           "antecedent": str(ante), "consequent": str(cons),
                           "degree": str(ident)}
        return {"subgroup": str(sg), "identity": str(ident)}, wit
    relation = {
        "thm-subsemi-star": "subsemi-star",
        "thm-kernel-star": "kernel-star",
        "thm-kernel-subsemi": "kernel-implies-subsemi",
        "subset-law": "subsemi-implies-epsilon",
    }.get(theorem)
    if relation:
        verdict = theorem_relation_check(machine, subset, relation, max_len, logic, mutate)
        wit = verdict.witnesses[0].to_doc() if verdict.witnesses else None
        return {"lhs": str(verdict.lhs), "rhs": str(verdict.rhs)}, wit
    if theorem == "classical-oracle":
        return {}, None
    raise IfsaError(f"unknown theorem {theorem!r}")


@dataclass
class SearchReport:
    theorem: str
    params: dict
    instances_examined: int
    units_examined: int
    unit: str
    counterexamples: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    wall_time: float = 0.0
    timestamp: str = ""
    workers: int = 1

    @property
    def exit_code(self):
        if self.counterexamples:
            return 1
        if self.findings:
            return 3
        return 0

    def body(self):
        """The deterministic part of the report."""
        return {
            "theorem": self.theorem,
            "description": THEOREMS[self.theorem],
            "params": self.params,
            "instances_examined": self.instances_examined,
            "units_examined": self.units_examined,
            "unit": self.unit,
            "counterexample_count": len(self.counterexamples),
            "finding_count": len(self.findings),
            "counterexamples": self.counterexamples,
            "findings": self.findings,
            "conventions": ["empty-word-identity", "dual-nu-v1",
                            f"logic:{self.params.get('logic', 'lukasiewicz')}"],
        }

    def to_doc(self):
        return {
            "header": {"timestamp": self.timestamp, "wall_time": round(self.wall_time, 3),
                       "workers": self.workers},
            "report": self.body(),
        }

    def to_json(self):
        return json.dumps(self.to_doc(), indent=2)

    def to_text(self):
        lines = [
            f"verify {self.theorem}: {THEOREMS[self.theorem]}",
            "source: " + ", ".join(f"{k}={v}" for k, v in self.params.items()),
            f"instances examined: {self.instances_examined} "
            f"({self.units_examined} distinct {self.unit}s)",
            f"counterexamples: {len(self.counterexamples)}",
            f"findings: {len(self.findings)}",
        ]
        for title, entries in (("counterexample", self.counterexamples),
                               ("finding", self.findings)):
            for entry in entries[:20]:
                lines.append(f"  {title} #{entry['index']} [{entry['digest']}] "
                             f"{json.dumps(entry['detail'])}")
                if entry.get("witness"):
                    lines.append(f"    witness: {json.dumps(entry['witness'])}")
            if len(entries) > 20:
                lines.append(f"  ... {len(entries) - 20} more {title}s in the JSON report")
        lines.append(f"wall time: {self.wall_time:.2f} s")
        return "\n".join(lines)

    def to_junit(self):
        from xml.etree import ElementTree as ET

        suite = ET.Element("testsuite", name=f"verify.{self.theorem}", tests="1",
                           failures=str(int(bool(self.counterexamples))), errors="0",
                           time=f"{self.wall_time:.3f}")
        case = ET.SubElement(suite, "testcase", classname="ibifsa.verify", name=self.theorem,
                             time=f"{self.wall_time:.3f}")
        if self.counterexamples:
            fail = ET.SubElement(case, "failure",
                                 message=f"{len(self.counterexamples)} counterexamples")
            fail.text = json.dumps(self.counterexamples[:5], indent=1)
        out = ET.SubElement(case, "system-out")
        out.text = (f"instances={self.instances_examined} findings={len(self.findings)}")
        return ET.tostring(suite, encoding="unicode")


def _chunk_size(src, theorem, max_len):
    n = src.group.order
    k = len(src.alphabet)
    words = len(words_up_to(k, max_len))
    per = {"machine": words * n ** 3 * 4, "subset": n * n * 8}.get(
        _UNIT[theorem], words * max(n ** 4, n ** 3 * k) * 2)
    return max(1, min(8192, 2 ** 24 // max(per, 1)))


def search_counterexamples(theorem, source, max_len=DEFAULT_MAX_LEN, mutate=False,
                           logic="lukasiewicz", findings=True, workers=1, chunk_size=None):
    """Run one theorem check over every instance of ``source``.

    Returns a SearchReport; hard failures land in ``counterexamples``,
    fractional-degree ordering violations in ``findings`` (skipped when
    ``findings`` is False).  Chunks are fixed ranges of unit indices and
    results are merged in index order, so the report depends on neither
    ``workers`` nor ``chunk_size``.
    """
    if theorem not in THEOREMS:
        raise IfsaError(f"unknown theorem {theorem!r}; expected one of {sorted(THEOREMS)}")
    implication_array(logic)
    source.check_cap()
    started = time.perf_counter()
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    unit = _UNIT[theorem]
    n_units = {"machine": source.machine_count, "subset": source.subset_count}.get(
        unit, source.count)
    size = chunk_size or _chunk_size(source, theorem, max_len)
    tasks = [(source, theorem, s, min(s + size, n_units), max_len, mutate, logic, findings)
             for s in range(0, n_units, size)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_chunk, tasks))
    else:
        results = [_evaluate_chunk(t) for t in tasks]

    params = dict(source.params())
    params.update({"max_len": max_len, "mutate": mutate, "logic": logic})
    report = SearchReport(theorem, params, source.count, n_units, unit,
                          timestamp=stamp, workers=workers)
    for hits in results:
        for index, kind, detail in hits:
            machine, subset = source.instance(index)
            doc = instance_doc(machine, subset)
            _, wit = single_check(theorem, machine, subset, max_len, mutate, logic)
            detail = {k: _as_truth(v, source.top) for k, v in detail.items()}
            entry = {"index": index, "digest": digest(doc), "detail": detail,
                     "witness": wit, "instance": doc}
            (report.counterexamples if kind == "counterexample" else report.findings).append(entry)
    report.wall_time = time.perf_counter() - started
    return report


def _as_truth(value, top):
    # batch details carry numerators over the grid denominator
    if isinstance(value, int) and not isinstance(value, bool):
        return format_truth(Fraction(value, top))
    return value


def replay(entry, theorem, max_len=DEFAULT_MAX_LEN, mutate=False, logic="lukasiewicz"):
    """Rebuild an entry's instance from its documents and re-run the single check."""
    machine, subset = instance_from_doc(entry["instance"])
    return single_check(theorem, machine, subset, max_len, mutate, logic)


def make_source(group, denominator, samples=None, seed=42, alphabet_size=1,
                structured=False, cap=DEFAULT_CAP):
    if samples:
        return RandomSample(group, denominator, samples, seed, alphabet_size)
    return InstanceGrid(group, denominator, alphabet_size, structured, cap)


__all__ = [
    "InstanceGrid", "RandomSample", "SearchReport", "THEOREMS",
    "enumerate_grid", "sample_random", "search_counterexamples", "replay",
    "single_check", "structured_options", "subgroups", "entry_pairs",
    "crisp_semantics", "instance_doc", "instance_from_doc", "make_source",
]
