"""Degree reports: per-condition degrees plus replayable witnesses."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .truthval import decode, format_truth

EMPTY_WORD_CONVENTION = "empty-word-identity"

DEFAULT_MAX_WITNESSES = 10


@dataclass(frozen=True)
class Witness:
    label: str
    instantiation: dict
    antecedent: Fraction
    consequent: Fraction
    degree: Fraction

    def to_doc(self):
        return {
            "condition": self.label,
            "instantiation": dict(self.instantiation),
            "antecedent": format_truth(self.antecedent),
            "consequent": format_truth(self.consequent),
            "degree": format_truth(self.degree),
        }


@dataclass
class DegreeReport:
    title: str
    conditions: dict
    witnesses: list = field(default_factory=list)
    conventions: tuple = ()
    notes: dict = field(default_factory=dict)

    @property
    def overall(self):
        return min(self.conditions.values()) if self.conditions else Fraction(1)

    def degree(self, *labels):
        """Minimum over the named conditions."""
        return min(self.conditions[label] for label in labels)

    def holds_at(self, lam):
        return self.overall >= lam

    def to_doc(self):
        return {
            "title": self.title,
            "conditions": {k: format_truth(v) for k, v in self.conditions.items()},
            "overall": format_truth(self.overall),
            "witnesses": [w.to_doc() for w in self.witnesses],
            "conventions": list(self.conventions),
            "notes": {k: format_truth(v) for k, v in self.notes.items()},
        }

    def to_text(self, lam=None):
        lines = [f"{self.title}"]
        width = max((len(k) for k in self.conditions), default=0)
        for label, value in self.conditions.items():
            lines.append(f"  {label:<{width}}  {format_truth(value)}")
        lines.append(f"  {'overall':<{width}}  {format_truth(self.overall)}")
        for label, value in self.notes.items():
            lines.append(f"  ({label}: {format_truth(value)})")
        if lam is not None:
            verdict = "PASS" if self.holds_at(lam) else "FAIL"
            op = ">=" if self.holds_at(lam) else "<"
            lines.append(f"verdict at lambda={format_truth(lam)}: {verdict} "
                         f"({format_truth(self.overall)} {op} {format_truth(lam)})")
        if self.witnesses:
            lines.append("witnesses:")
            for w in self.witnesses:
                inst = ", ".join(f"{k}={v!r}" if isinstance(v, str) else f"{k}={v}"
                                 for k, v in w.instantiation.items())
                lines.append(f"  [{w.label}] {inst}: "
                             f"I({format_truth(w.antecedent)}, {format_truth(w.consequent)})"
                             f" = {format_truth(w.degree)}")
        if self.conventions:
            lines.append("conventions: " + ", ".join(self.conventions))
        return "\n".join(lines)


def collect_witnesses(label, degrees, antecedent, consequent, top, namer,
                      threshold=Fraction(1), limit=DEFAULT_MAX_WITNESSES):
    """Witnesses for the cells of ``degrees`` that fall below ``threshold``.

    The arrays share one shape; ``namer`` turns an index tuple into the
    instantiation dict.  The lexicographically first minimum comes first,
    followed by the other failing cells in row-major order, ``limit`` in all.
    """
    cut = threshold * top
    flat = degrees.ravel()
    argmin = int(np.argmin(flat))
    if not flat[argmin] < cut:
        return []
    failing = np.flatnonzero(flat < cut)
    order = [argmin] + [int(i) for i in failing if i != argmin]
    if limit is not None:
        order = order[:limit]
    ante, cons = np.broadcast_to(antecedent, degrees.shape).ravel(), \
        np.broadcast_to(consequent, degrees.shape).ravel()
    out = []
    for i in order:
        idx = tuple(int(v) for v in np.unravel_index(i, degrees.shape))
        out.append(Witness(label, namer(idx), decode(ante[i], top),
                           decode(cons[i], top), decode(flat[i], top)))
    return out
