"""Exact combinatorics of matchings in uniform hypergraphs: brute-force
extremal verification, exact-rational LP duality, compression, and interval
certificates for the supporting inequalities."""

__version__ = "0.1.0"

from emclab.hypergraph import (Hypergraph, HypergraphError, binom, closeness,
                               complete_hypergraph, induced, is_stable,
                               min_d_degree, new_hypergraph, parse_khg,
                               serialize_khg, shadow, trace_family)
from emclab.matching import (MatchingWitness, cover_number,
                             has_matching_of_size, matching_number)

__all__ = [
    "Hypergraph", "HypergraphError", "binom", "closeness",
    "complete_hypergraph", "induced", "is_stable", "min_d_degree",
    "new_hypergraph", "parse_khg", "serialize_khg", "shadow", "trace_family",
    "MatchingWitness", "cover_number", "has_matching_of_size",
    "matching_number", "__version__",
]
