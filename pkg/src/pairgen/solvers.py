"""Exact combinatorial solvers: minimum set cover and maximum clique.

Both are deterministic branch-and-bound searches over bitmask encodings,
sized for the small universes the exact oracles need (a few hundred
elements at most).  Ties break on index so repeated runs explore the
same tree.
"""
from __future__ import annotations


def min_set_cover(universe_size, sets):
    """Smallest collection of the given sets covering {0..universe_size-1}.

    Sets are iterables of element indices.  Returns a sorted list of set
    indices, or raises ValueError if the union misses an element.
    Branches on the least-covered uncovered element; bound is a greedy
    count of how many sets are still needed.
    """
    masks = []
    for s in sets:
        m = 0
        for x in s:
            if not 0 <= x < universe_size:
                raise ValueError(f"element {x} outside universe")
            m |= 1 << x
        masks.append(m)
    full = (1 << universe_size) - 1
    union = 0
    for m in masks:
        union |= m
    if union != full:
        raise ValueError("sets do not cover the universe")

    covering = [[j for j, m in enumerate(masks) if m >> x & 1]
                for x in range(universe_size)]

    # greedy warm start gives the initial upper bound
    best = []
    covered = 0
    while covered != full:
        j = max(range(len(masks)), key=lambda j: ((masks[j] & ~covered).bit_count(), -j))
        best.append(j)
        covered |= masks[j]
    best.sort()

    def search(covered, chosen):
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + 1 >= len(best):
            # one more set at best ties the incumbent
            return
        # branch on the uncovered element with the fewest covering sets
        x = min((x for x in range(universe_size) if not covered >> x & 1),
                key=lambda x: (len(covering[x]), x))
        for j in covering[x]:
            chosen.append(j)
            search(covered | masks[j], chosen)
            chosen.pop()

    search(0, [])
    return best


def max_clique(adjacency):
    """Maximum clique of an undirected graph given as a list of bitmask
    neighbourhoods.  Returns a sorted list of vertex indices.

    Branch and bound with greedy colouring as the bound, expanding
    vertices in reverse colour order.
    """
    nv = len(adjacency)
    for v, row in enumerate(adjacency):
        if row >> v & 1:
            raise ValueError(f"vertex {v} is self-adjacent")

    best = []

    def colour_order(cand):
        # greedy colouring; returns vertices with colour numbers, the
        # colour of v upper-bounds any clique inside cand containing v
        order = []
        colour = 0
        rem = cand
        while rem:
            colour += 1
            avail = rem
            while avail:
                v = avail.bit_length() - 1
                order.append((v, colour))
                avail &= ~adjacency[v]
                avail &= ~(1 << v)
                rem &= ~(1 << v)
        return order

    def expand(cand, clique):
        nonlocal best
        for v, colour in reversed(colour_order(cand)):
            if len(clique) + colour <= len(best):
                return
            clique.append(v)
            nxt = cand & adjacency[v]
            if nxt:
                expand(nxt, clique)
            elif len(clique) > len(best):
                best = sorted(clique)
            clique.pop()
            cand &= ~(1 << v)

    if nv:
        expand((1 << nv) - 1, [])
    return best
