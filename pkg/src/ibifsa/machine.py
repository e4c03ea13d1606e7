"""Intuitionistic fuzzy semiautomata over a finite group and their word extension.

States are the elements of a finite group.  Each input letter ``u`` carries
a pair of n-by-n matrices: membership ``A_u[alpha][beta]`` and nonmembership
``B_u[alpha][beta]`` of the transition ``(alpha, u, beta)``.  Words extend
the pair by sup-min composition on A and inf-max composition on B, with the
empty word acting as the identity pair (1/0 on the diagonal, 0/1 off it).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
import json

import numpy as np

from .errors import (
    ConsistencyViolation,
    DocumentError,
    LambdaOutOfRange,
    ShapeMismatch,
    UnknownState,
    UnknownSymbol,
)
from .group import group_from_doc, group_ref
from .ifs import NU_CONVENTION, side_degrees
from .report import EMPTY_WORD_CONVENTION, DegreeReport, Witness, collect_witnesses
from .truthval import ONE, common_scale, decode, encode, implication_array, luk_implies, truth

STRUCTURE_MODES = ("product-subgroup", "none")
DEFAULT_MAX_LEN = 4


# ---------------------------------------------------------------------------
# array kernels; matrices have shape (..., n, n)

def maxmin(p, q):
    """``r[b, a] = max_g min(p[b, g], q[g, a])``."""
    return np.minimum(p[..., :, :, None], q[..., None, :, :]).max(axis=-2)


def minmax(p, q):
    """``r[b, a] = min_g max(p[b, g], q[g, a])``."""
    return np.maximum(p[..., :, :, None], q[..., None, :, :]).min(axis=-2)


def _maxmin_mutant(p, q):
    # negative control only: reads the left factor transposed.  Single
    # letters still come out right (the identity is symmetric), longer
    # words do not.
    return maxmin(np.swapaxes(p, -1, -2), q)


def _minmax_mutant(p, q):
    return minmax(np.swapaxes(p, -1, -2), q)


def identity_pair(n, top, dtype=np.int64):
    eye = np.eye(n, dtype=dtype)
    return eye * top, (1 - eye) * top


def words_up_to(k, max_len):
    """All words over k letters of length <= max_len, shortest first."""
    words = []
    for length in range(max_len + 1):
        words.extend(iproduct(range(k), repeat=length))
    return words


def word_stack(a, b, top, words, mutate=False):
    """Extended matrices for each word, stacked on a new axis before (n, n).

    ``a`` and ``b`` have shape (..., k, n, n).  Each word is computed as a
    left fold over its letters; prefixes are shared.
    """
    comp_a, comp_b = (_maxmin_mutant, _minmax_mutant) if mutate else (maxmin, minmax)
    n = a.shape[-1]
    ea, eb = identity_pair(n, top, a.dtype)
    lead = a.shape[:-3]
    memo = {(): (np.broadcast_to(ea, lead + (n, n)), np.broadcast_to(eb, lead + (n, n)))}

    def get(word):
        if word not in memo:
            pa, pb = get(word[:-1])
            u = word[-1]
            memo[word] = (comp_a(pa, a[..., u, :, :]), comp_b(pb, b[..., u, :, :]))
        return memo[word]

    pairs = [get(tuple(w)) for w in words]
    return (np.stack([p[0] for p in pairs], axis=-3),
            np.stack([p[1] for p in pairs], axis=-3))


def concat_mismatches(a, b, top, max_len, mutate=False):
    """Per split (xi, psi): boolean arrays where the fold of xi.psi differs from
    the composition of the folds of xi and psi.

    Yields ``(xi, psi, bad_a, bad_b, lhs_a, rhs_a, lhs_b, rhs_b)``.
    """
    k = a.shape[-3]
    words = words_up_to(k, max_len)
    index = {w: i for i, w in enumerate(words)}
    xa, xb = word_stack(a, b, top, words, mutate)
    for xi in words:
        for psi in words:
            if len(xi) + len(psi) > max_len:
                continue
            pa, pb = xa[..., index[xi], :, :], xb[..., index[xi], :, :]
            qa, qb = xa[..., index[psi], :, :], xb[..., index[psi], :, :]
            lhs_a, lhs_b = xa[..., index[xi + psi], :, :], xb[..., index[xi + psi], :, :]
            rhs_a, rhs_b = maxmin(pa, qa), minmax(pb, qb)
            yield xi, psi, lhs_a != rhs_a, lhs_b != rhs_b, lhs_a, rhs_a, lhs_b, rhs_b


def concat_violation_flags(a, b, top, max_len, mutate=False):
    """One flag per leading index: any split breaks the concatenation law."""
    bad = np.zeros(a.shape[:-3], dtype=bool)
    for _, _, bad_a, bad_b, *_ in concat_mismatches(a, b, top, max_len, mutate):
        bad |= bad_a.any(axis=(-2, -1)) | bad_b.any(axis=(-2, -1))
    return bad


def structure_sides(table, inverse, a, b):
    """Direct-product subgroup conditions for one letter's matrices on G x G.

    Closure sides are indexed [alpha, beta, alpha2, beta2]; inverse sides
    [alpha, beta].
    """
    rows = table[:, None, :, None]
    cols = table[None, :, None, :]
    inv = np.asarray(inverse)
    a1, a2 = a[..., :, :, None, None], a[..., None, None, :, :]
    b1, b2 = b[..., :, :, None, None], b[..., None, None, :, :]
    return {
        "closure_mu": (np.minimum(a1, a2), a[..., rows, cols]),
        "inverse_mu": (a, a[..., inv[:, None], inv[None, :]]),
        "closure_nu": (b[..., rows, cols], np.maximum(b1, b2)),
        "inverse_nu": (b[..., inv[:, None], inv[None, :]], b),
    }


# ---------------------------------------------------------------------------
# values

@dataclass(frozen=True)
class TransitionMatrixPair:
    a_star: tuple
    b_star: tuple
    word: tuple = ()

    @property
    def size(self):
        return len(self.a_star)


def _decode_matrix(arr, top):
    return tuple(tuple(decode(v, top) for v in row) for row in arr)


@dataclass(frozen=True)
class Machine:
    group: object
    alphabet: tuple
    a: tuple
    b: tuple
    lam: Fraction = ONE
    structure: str = "product-subgroup"
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_states(self):
        return self.group.order

    @property
    def top(self):
        vals = [v for mats in (self.a, self.b) for m in mats for row in m for v in row]
        return common_scale(vals)

    def coded(self, top=None):
        """Integer-coded ``(top, A, B)`` with A, B of shape (k, n, n)."""
        key = ("coded", top)
        if key not in self._memo:
            t = self.top if top is None else top
            self._memo[key] = (t, encode(self.a, t), encode(self.b, t))
        return self._memo[key]

    def letter(self, symbol):
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise UnknownSymbol(f"symbol {symbol!r} not in alphabet {list(self.alphabet)}") from None

    def parse_word(self, text):
        """Whitespace-separated symbols; the empty string is the empty word."""
        if isinstance(text, (tuple, list)):
            return tuple(self.letter(s) if isinstance(s, str) else self._check_index(s)
                         for s in text)
        return tuple(self.letter(s) for s in text.split())

    def _check_index(self, i):
        if not 0 <= i < len(self.alphabet):
            raise UnknownSymbol(f"letter index {i} out of range")
        return i

    def word_text(self, word):
        return " ".join(self.alphabet[i] for i in word)

    def to_doc(self):
        return {
            "group": group_ref(self.group),
            "alphabet": list(self.alphabet),
            "lambda": str(self.lam),
            "mu": {s: [[str(v) for v in row] for row in self.a[i]]
                   for i, s in enumerate(self.alphabet)},
            "nu": {s: [[str(v) for v in row] for row in self.b[i]]
                   for i, s in enumerate(self.alphabet)},
            "structure": self.structure,
        }


def _matrix(values, n, where):
    if len(values) != n or any(len(row) != n for row in values):
        raise ShapeMismatch(f"{where}: expected a {n}x{n} matrix")
    return tuple(tuple(truth(v) for v in row) for row in values)


def build_machine(group, alphabet, mu, nu, lam=ONE, structure="product-subgroup"):
    """Validate shapes, the consistency bound and lambda; no structural check."""
    if structure not in STRUCTURE_MODES:
        raise DocumentError(f"structure must be one of {STRUCTURE_MODES}")
    alphabet = tuple(str(s) for s in alphabet)
    if len(set(alphabet)) != len(alphabet):
        raise DocumentError("alphabet symbols must be distinct")
    lam = truth(lam) if not isinstance(lam, Fraction) else lam
    if not 0 < lam <= 1:
        raise LambdaOutOfRange(f"lambda must lie in (0, 1], got {lam}")
    n = group.order
    if isinstance(mu, dict):
        missing = [s for s in alphabet if s not in mu or s not in nu]
        if missing:
            raise ShapeMismatch(f"no matrices for symbols {missing}")
        mu = [mu[s] for s in alphabet]
        nu = [nu[s] for s in alphabet]
    if len(mu) != len(alphabet) or len(nu) != len(alphabet):
        raise ShapeMismatch("one mu and one nu matrix per symbol required")
    a = tuple(_matrix(m, n, f"mu[{s}]") for m, s in zip(mu, alphabet))
    b = tuple(_matrix(m, n, f"nu[{s}]") for m, s in zip(nu, alphabet))
    for u, s in enumerate(alphabet):
        for x in range(n):
            for y in range(n):
                if a[u][x][y] + b[u][x][y] > 1:
                    raise ConsistencyViolation((x, s, y), a[u][x][y], b[u][x][y])
    return Machine(group, alphabet, a, b, lam, structure)


def _closure_namer(sym):
    return lambda idx: {"alpha": idx[0], "beta": idx[1], "alpha2": idx[2],
                        "beta2": idx[3], "letter": sym}


def _pair_namer(sym):
    return lambda idx: {"alpha": idx[0], "beta": idx[1], "letter": sym}


def structure_report(machine, logic="lukasiewicz"):
    conventions = (f"structure:{machine.structure}", NU_CONVENTION, f"logic:{logic}")
    report = DegreeReport("machine structure", {}, [], conventions)
    if machine.structure == "none":
        return report
    g = machine.group
    top, a, b = machine.coded()
    for u, sym in enumerate(machine.alphabet):
        sides = structure_sides(g.array, g.inverse_array, a[u], b[u])
        for label, arr in side_degrees(sides, top, logic).items():
            name = f"{label}[{sym}]"
            report.conditions[name] = decode(arr.min(), top)
            namer = _closure_namer(sym) if label.startswith("closure") else _pair_namer(sym)
            ante, cons = sides[label]
            report.witnesses += collect_witnesses(name, arr, ante, cons, top, namer,
                                                  threshold=machine.lam)
    return report


def validate_machine(group, alphabet, mu, nu, lam=ONE, structure="product-subgroup",
                     logic="lukasiewicz"):
    """Build a machine and report its structural degrees.

    With ``structure="product-subgroup"`` each letter's (A, B) must be an
    intuitionistic fuzzy subgroup of G x G; the report gives the degree of
    each condition.  ``structure="none"`` only checks mu + nu <= 1.
    """
    machine = build_machine(group, alphabet, mu, nu, lam, structure)
    return machine, structure_report(machine, logic)


def machine_from_doc(doc):
    if not isinstance(doc, dict):
        raise DocumentError("machine document must be a JSON object")
    for key in ("group", "alphabet", "mu", "nu"):
        if key not in doc:
            raise DocumentError(f"machine document lacks {key!r}")
    group = group_from_doc(doc["group"])
    return build_machine(group, doc["alphabet"], doc["mu"], doc["nu"],
                         doc.get("lambda", "1"), doc.get("structure", "product-subgroup"))


def load_machine(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read machine document {path}: {exc}") from exc
    return machine_from_doc(doc)


# ---------------------------------------------------------------------------
# word extension on a single machine

def empty_word_matrices(machine):
    n = machine.n_states
    return TransitionMatrixPair(
        tuple(tuple(ONE if i == j else Fraction(0) for j in range(n)) for i in range(n)),
        tuple(tuple(Fraction(0) if i == j else ONE for j in range(n)) for i in range(n)),
        (),
    )


def compose(p, q):
    """Sup-min on the A side, inf-max on the B side; words concatenate."""
    if p.size != q.size:
        raise ShapeMismatch(f"cannot compose {p.size}x{p.size} with {q.size}x{q.size}")
    vals = [v for m in (p.a_star, p.b_star, q.a_star, q.b_star) for row in m for v in row]
    top = common_scale(vals)
    ra = maxmin(encode(p.a_star, top), encode(q.a_star, top))
    rb = minmax(encode(p.b_star, top), encode(q.b_star, top))
    return TransitionMatrixPair(_decode_matrix(ra, top), _decode_matrix(rb, top),
                                tuple(p.word) + tuple(q.word))


def letter_matrices(machine, u):
    return TransitionMatrixPair(machine.a[u], machine.b[u], (u,))


def extend_word(machine, word, mutate=False):
    """Extended (A*, B*) for ``word``; cached on the machine."""
    word = machine.parse_word(word)
    key = ("word", mutate, word)
    if key not in machine._memo:
        top, a, b = machine.coded()
        xa, xb = word_stack(a, b, top, [word], mutate)
        machine._memo[key] = TransitionMatrixPair(
            _decode_matrix(xa[0], top), _decode_matrix(xb[0], top), word)
    return machine._memo[key]


def run_degree(machine, start, word, end):
    """Membership and nonmembership of the run ``start --word--> end``."""
    n = machine.n_states
    for s in (start, end):
        if not isinstance(s, (int, np.integer)) or not 0 <= s < n:
            raise UnknownState(f"state {s!r} not in 0..{n - 1}")
    pair = extend_word(machine, word)
    return pair.a_star[start][end], pair.b_star[start][end]


def concat_equality_check(machine, max_len=DEFAULT_MAX_LEN, mutate=False):
    """Check that extending xi.psi equals composing the extensions of xi and psi.

    Every split with ``|xi| + |psi| <= max_len`` is compared entrywise as an
    exact equality.  The conditions hold the degree of the implication
    "composed -> extended"; witnesses list every unequal entry.
    """
    top, a, b = machine.coded()
    imp = implication_array("lukasiewicz")
    deg_a, deg_b = top, top
    witnesses = []
    for xi, psi, bad_a, bad_b, la, ra, lb, rb in concat_mismatches(a, b, top, max_len, mutate):
        deg_a = min(deg_a, int(imp(ra, la, top).min()))
        deg_b = min(deg_b, int(imp(rb, lb, top).min()))
        for label, bad, lhs, rhs in (("ext_mu", bad_a, la, ra), ("ext_nu", bad_b, lb, rb)):
            for beta, alpha in np.argwhere(bad):
                ante, cons = rhs[beta, alpha], lhs[beta, alpha]
                witnesses.append(_ext_witness(machine, label, xi, psi, int(beta), int(alpha),
                                              ante, cons, top))
    conditions = {"ext_mu": decode(deg_a, top), "ext_nu": decode(deg_b, top)}
    conventions = (EMPTY_WORD_CONVENTION, f"max_len:{max_len}") + (("mutated",) if mutate else ())
    return DegreeReport("concatenation law", conditions, witnesses, conventions)


def _ext_witness(machine, label, xi, psi, beta, alpha, ante, cons, top):
    a, c = decode(ante, top), decode(cons, top)
    return Witness(label, {"xi": machine.word_text(xi), "psi": machine.word_text(psi),
                           "beta": beta, "alpha": alpha}, a, c, luk_implies(a, c))
