"""Implication-based intuitionistic fuzzy semiautomata over finite groups.

Exact rational degrees for fuzzy subgroups, subsemiautomata and kernels,
word extension by max-min / min-max composition, and an exhaustive or
sampled counterexample search over the theorem relations.
"""

from .errors import IfsaError
from .group import FiniteGroup, load_group, make_standard, validate_cayley
from .ifs import IFSubset, subgroup_degree, validate_ifs
from .machine import Machine, build_machine, extend_word, load_machine, validate_machine
from .truthval import luk_implies, tautology_degree, truth

__version__ = "0.1.0"

__all__ = [
    "IfsaError", "FiniteGroup", "load_group", "make_standard", "validate_cayley",
    "IFSubset", "subgroup_degree", "validate_ifs", "Machine", "build_machine",
    "extend_word", "load_machine", "validate_machine", "luk_implies",
    "tautology_degree", "truth",
]
