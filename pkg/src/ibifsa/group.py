"""Finite groups presented by validated Cayley tables.

Elements are the dense indices ``0 .. n-1``; names are for display only.
``table[r][c]`` is the product ``r * c``.
"""

from dataclasses import dataclass, field
from itertools import permutations, product as iproduct
import json

import numpy as np

from .errors import (
    DocumentError,
    IfsaError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    ShapeMismatch,
    TooLarge,
)

MAX_ORDER = 120


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    identity: int
    inverse: tuple
    names: tuple
    name: str = ""
    _array: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def order(self):
        return len(self.table)

    @property
    def elements(self):
        return range(self.order)

    @property
    def array(self):
        """The Cayley table as an int array (shared, do not mutate)."""
        return self._array

    @property
    def inverse_array(self):
        return np.array(self.inverse, dtype=np.intp)

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self.inverse[x]

    def non_commuting_pair(self):
        """First pair (x, y) with xy != yx in lexicographic order, or None."""
        for x in self.elements:
            for y in range(x + 1, self.order):
                if self.table[x][y] != self.table[y][x]:
                    return x, y
        return None

    def is_abelian(self):
        return self.non_commuting_pair() is None

    def element(self, token):
        """Resolve an element given by index or by name."""
        if isinstance(token, int):
            idx = token
        elif str(token).strip().lstrip("-").isdigit():
            idx = int(token)
        elif token in self.names:
            return self.names.index(token)
        else:
            raise IfsaError(f"unknown element {token!r}")
        if not 0 <= idx < self.order:
            raise IfsaError(f"element index {idx} out of range for order {self.order}")
        return idx

    def to_doc(self):
        return {
            "name": self.name,
            "order": self.order,
            "table": [list(row) for row in self.table],
            "names": list(self.names),
        }


def validate_cayley(table, names=None, name=""):
    """Check the group axioms on a square table and derive identity and inverses.

    Raises NotClosed, NoIdentity, NoInverse or NotAssociative with a witness.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise ShapeMismatch("a group needs at least one element")
    if n > MAX_ORDER:
        raise TooLarge(f"order {n} exceeds {MAX_ORDER}")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ShapeMismatch(f"row {r} has length {len(row)}, expected {n}")
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise NotClosed(r, c, v)
    rows = [[int(v) for v in row] for row in rows]

    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = []
    for x in range(n):
        for y in range(n):
            if rows[x][y] == identity and rows[y][x] == identity:
                inverse.append(y)
                break
        else:
            raise NoInverse(x)

    arr = np.array(rows, dtype=np.intp)
    # (r*s)*t vs r*(s*t) over all triples at once
    left = arr[arr, :]            # left[r, s, t] = (r*s)*t
    right = arr[:, arr]           # right[r, s, t] = r*(s*t)
    bad = np.argwhere(left != right)
    if len(bad):
        r, s, t = (int(v) for v in bad[0])
        raise NotAssociative(r, s, t)

    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise ShapeMismatch(f"{len(names)} names for {n} elements")
    arr.setflags(write=False)
    return FiniteGroup(
        table=tuple(tuple(row) for row in rows),
        identity=identity,
        inverse=tuple(inverse),
        names=names,
        name=name,
        _array=arr,
    )


# ---------------------------------------------------------------------------
# standard families

def cyclic(n):
    if n < 1:
        raise IfsaError("cyclic(n) needs n >= 1")
    table = [[(r + c) % n for c in range(n)] for r in range(n)]
    return validate_cayley(table, name=f"cyclic:{n}")


def klein4():
    table = [[r ^ c for c in range(4)] for r in range(4)]
    return validate_cayley(table, names=["e", "a", "b", "ab"], name="klein4")


def dihedral(n):
    """Symmetries of the n-gon, order 2n; element i + n*j is r^i s^j."""
    if n < 1:
        raise IfsaError("dihedral(n) needs n >= 1")

    def mul(x, y):
        i1, j1 = x % n, x // n
        i2, j2 = y % n, y // n
        # s r^i = r^-i s
        i = (i1 + (-i2 if j1 else i2)) % n
        return i + n * ((j1 + j2) % 2)

    size = 2 * n
    table = [[mul(x, y) for y in range(size)] for x in range(size)]
    names = [("r%d" % (x % n) if x % n else "e") + ("s" if x >= n else "") for x in range(size)]
    names = [nm if nm != "es" else "s" for nm in names]
    return validate_cayley(table, names=names, name=f"dihedral:{n}")


def _cycle_name(perm):
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric(n):
    """All permutations of n points in lexicographic order; (p*q)(x) = p(q(x))."""
    if n < 1:
        raise IfsaError("symmetric(n) needs n >= 1")
    if n > 5:
        raise TooLarge(f"symmetric({n}) has order above {MAX_ORDER}")
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return validate_cayley(table, names=[_cycle_name(p) for p in perms], name=f"symmetric:{n}")


def direct_product(g, h):
    """Componentwise product; element (x, y) has index x * |H| + y."""
    m = h.order
    pairs = list(iproduct(g.elements, h.elements))
    table = [[g.mul(x1, x2) * m + h.mul(y1, y2) for (x2, y2) in pairs] for (x1, y1) in pairs]
    if len(pairs) > MAX_ORDER:
        raise TooLarge(f"product order {len(pairs)} exceeds {MAX_ORDER}")
    names = [f"({g.names[x]},{h.names[y]})" for x, y in pairs]
    return validate_cayley(table, names=names, name=f"product:({g.name},{h.name})")


def _split_top(text, sep):
    depth, parts, cur = 0, [], ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def make_standard(spec):
    """Build a group from a "family:param" string.

    Families: ``cyclic:n``, ``dihedral:n``, ``klein4``, ``symmetric:n`` and
    ``product:(G,H)`` where G and H are themselves family strings.
    """
    spec = spec.strip()
    family, _, param = spec.partition(":")
    family = family.strip().lower()
    try:
        if family == "klein4":
            return klein4()
        if family == "product":
            inner = param.strip()
            if not (inner.startswith("(") and inner.endswith(")")):
                raise ValueError
            parts = _split_top(inner[1:-1], ",")
            if len(parts) != 2:
                raise ValueError
            return direct_product(make_standard(parts[0]), make_standard(parts[1]))
        builders = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
        if family in builders:
            return builders[family](int(param))
    except ValueError:
        raise DocumentError(f"malformed group spec {spec!r}") from None
    raise DocumentError(f"unknown group family {family!r}")


# ---------------------------------------------------------------------------
# documents

def group_from_doc(doc):
    if isinstance(doc, str):
        return make_standard(doc)
    if not isinstance(doc, dict) or "table" not in doc:
        raise DocumentError("group document needs a 'table'")
    table = doc["table"]
    if "order" in doc and doc["order"] != len(table):
        raise ShapeMismatch(f"declared order {doc['order']} but table has {len(table)} rows")
    return validate_cayley(table, names=doc.get("names"), name=doc.get("name", ""))


def group_ref(group):
    """The shortest document for ``group``: its family string when that
    rebuilds the same table, otherwise the full table document."""
    try:
        if group.name and make_standard(group.name).table == group.table:
            return group.name
    except IfsaError:
        pass
    return group.to_doc()


def load_group(source):
    """Load a group from a JSON file path or a "family:param" string."""
    if source.endswith(".json"):
        try:
            with open(source, encoding="utf-8") as fh:
                return group_from_doc(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError(f"cannot read group document {source}: {exc}") from exc
    return make_standard(source)


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class GroupHomomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __call__(self, x):
        return self.map[x]


def make_homomorphism(source, target, mapping):
    mapping = tuple(int(v) for v in mapping)
    if len(mapping) != source.order:
        raise ShapeMismatch(f"map has {len(mapping)} entries, source has order {source.order}")
    for v in mapping:
        if not 0 <= v < target.order:
            raise IfsaError(f"map value {v} outside target of order {target.order}")
    for x in source.elements:
        for y in source.elements:
            if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                raise NotHomomorphism(x, y)
    return GroupHomomorphism(source, target, mapping)
