"""Lower-bound solver for online bin stretching with verifiable certificates."""

from .certificate import ProofNode, ProofTree, VerifyReport, deserialize, serialize, verify
from .combinatorics import CountTable, SizingError
from .core import Configuration, GameParams, Items, Packing, canonical_key, place
from .feasibility import FeasibleFront, empty_front, extend_front, front_for_items, largest_extension
from .pruning import VTable, compute_v_table, is_base_alg_winning, prune_wins_for_algorithm
from .search import SearchOptions, SearchStats, Verdict, solve

__all__ = [
    "Configuration",
    "CountTable",
    "FeasibleFront",
    "GameParams",
    "Items",
    "Packing",
    "ProofNode",
    "ProofTree",
    "SearchOptions",
    "SearchStats",
    "SizingError",
    "VTable",
    "Verdict",
    "VerifyReport",
    "canonical_key",
    "compute_v_table",
    "deserialize",
    "empty_front",
    "extend_front",
    "front_for_items",
    "is_base_alg_winning",
    "largest_extension",
    "place",
    "prune_wins_for_algorithm",
    "serialize",
    "solve",
    "verify",
]
