"""Exact integral matching number and vertex cover number.

Both are branch-and-bound searches over bitmask edge families (see
``kernel``); inputs therefore need at most 63 vertices.  A stack of cheap
certified upper bounds (vertex count, greedy integral covers, a monotone
fractional cover for stable families, the exact LP optimum on small edge
counts) usually pins the matching number before any search happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from emclab import kernel
from emclab.hypergraph import Hypergraph, HypergraphError, is_stable

_LP_EDGE_LIMIT = 120  # beyond this the exact simplex is slower than search


@dataclass(frozen=True)
class MatchingWitness:
    edges: tuple[tuple[int, ...], ...]
    size: int


def _masks(h: Hypergraph) -> list[int]:
    if h.n > kernel.MAX_KERNEL_VERTICES:
        raise HypergraphError(f"search kernels support n <= {kernel.MAX_KERNEL_VERTICES}")
    return [kernel.edge_mask(e) for e in h.edges]


def _greedy_cover_size(h: Hypergraph) -> int:
    """Integral cover by repeated max-degree vertex; an upper bound on tau."""
    edges = list(h.edges)
    size = 0
    while edges:
        deg: dict[int, int] = {}
        for e in edges:
            for v in e:
                deg[v] = deg.get(v, 0) + 1
        v = min(deg, key=lambda u: (-deg[u], u))
        edges = [e for e in edges if v not in e]
        size += 1
    return size


def _upper_bound(h: Hypergraph, masks: list[int]) -> int:
    active = 0
    for m in masks:
        active |= m
    ub = bin(active).count("1") // h.k if h.k else 0
    ub = min(ub, _greedy_cover_size(h))
    if h.num_edges <= _LP_EDGE_LIMIT:
        from emclab.lp import fractional_matching_number
        nu_star, _ = fractional_matching_number(h)
        ub = min(ub, floor(nu_star))
    elif h.vertices == tuple(range(1, h.n + 1)) and is_stable(h):
        from emclab.lp import monotone_cover_bound
        ub = min(ub, floor(monotone_cover_bound(h)))
    return ub


def has_matching_of_size(h: Hypergraph, s: int) -> tuple[bool, MatchingWitness | None]:
    """Decide nu(H) >= s; on success return a witness of exactly s edges."""
    if s < 0:
        raise HypergraphError("matching size must be nonnegative")
    if s == 0:
        return True, MatchingWitness(edges=(), size=0)
    masks = _masks(h)
    idx = kernel.find_matching(masks, h.k, s)
    if idx is None:
        return False, None
    return True, MatchingWitness(edges=tuple(h.edges[i] for i in idx), size=s)


def matching_number(h: Hypergraph) -> tuple[int, MatchingWitness]:
    """Exact maximum matching size with an attaining witness."""
    masks = _masks(h)
    if not masks:
        return 0, MatchingWitness(edges=(), size=0)
    lb_idx = kernel.greedy_matching(masks)
    lb = len(lb_idx)
    ub = _upper_bound(h, masks)
    best = lb_idx
    size = lb
    while size < ub:
        idx = kernel.find_matching(masks, h.k, size + 1)
        if idx is None:
            break
        best = idx
        size += 1
    return size, MatchingWitness(edges=tuple(h.edges[i] for i in best), size=size)


def cover_number(h: Hypergraph) -> int:
    """Exact minimum vertex cover size, by branching on a max-degree vertex."""
    masks = _masks(h)
    if not masks:
        return 0
    best = _greedy_cover_size(h)
    k = h.k

    def lower_bound(rem: list[int]) -> int:
        return len(kernel.greedy_matching(rem))

    def search(rem: list[int], used: int):
        nonlocal best
        if not rem:
            best = min(best, bin(used).count("1"))
            return
        if bin(used).count("1") + lower_bound(rem) >= best:
            return
        deg: dict[int, int] = {}
        for m in rem:
            mm = m
            while mm:
                b = mm & -mm
                deg[b] = deg.get(b, 0) + 1
                mm ^= b
        pivot = min(deg, key=lambda b: (-deg[b], b))
        # either cover with the pivot vertex ...
        search([m for m in rem if not (m & pivot)], used | pivot)
        # ... or cover the first pivot edge with another of its vertices
        e = next(m for m in rem if m & pivot)
        mm = e & ~pivot
        while mm:
            b = mm & -mm
            search([m for m in rem if not (m & b)], used | b)
            mm ^= b

    search(masks, 0)
    return best
