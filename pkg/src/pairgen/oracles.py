"""Ground-truth computations at tiny degrees.

Everything here is independent of the asymptotic machinery: subgroups
are enumerated as explicit element sets over a precomputed
multiplication table, sigma comes from an exact set-cover search over
the maximal subgroups, omega from an exact max-clique search on the
generation graph, and pair-generation probabilities from full
enumeration (exact) or seeded sampling (Monte Carlo).
"""
from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .perm import Permutation, all_permutations, random_permutation
from .solvers import max_clique, min_set_cover
from .stabchain import GenClass, fast_generation_class

TABLE_N_CAP = 6
SIGMA_N_CAP = 5

Z_99 = 2.5758293035489004


class GroupTable:
    """S_n as an indexed element list with a full multiplication table.

    Subgroups are bitmasks over the element indices; closure is a
    breadth-first product walk, so membership and joins need no
    permutation arithmetic after construction.
    """

    def __init__(self, n):
        if not 1 <= n <= TABLE_N_CAP:
            raise ValueError(f"multiplication table limited to n <= {TABLE_N_CAP}")
        self.n = n
        self.elems = sorted(all_permutations(n))
        self.index = {p: k for k, p in enumerate(self.elems)}
        size = len(self.elems)
        self.mul = [
            [self.index[p * q] for q in self.elems] for p in self.elems
        ]
        self.inv = [self.index[p.inverse()] for p in self.elems]
        self.identity = self.index[Permutation.identity(n)]
        self.full_mask = (1 << size) - 1
        self.alt_mask = 0
        for k, p in enumerate(self.elems):
            if p.is_even():
                self.alt_mask |= 1 << k

    def __len__(self):
        return len(self.elems)

    def closure(self, gens):
        """Bitmask of the subgroup generated by the given element indices."""
        mask = 1 << self.identity
        frontier = [self.identity]
        gens = list(dict.fromkeys(gens))
        for g in gens:
            if not mask >> g & 1:
                mask |= 1 << g
                frontier.append(g)
        while frontier:
            nxt = []
            for x in frontier:
                row = self.mul[x]
                for g in gens:
                    y = row[g]
                    if not mask >> y & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def mask_elements(self, mask):
        return [self.elems[k] for k in range(len(self.elems)) if mask >> k & 1]

    def conjugacy_classes(self):
        """List of (representative index, class bitmask), by cycle type."""
        by_type = {}
        for k, p in enumerate(self.elems):
            t = p.cycle_type()
            if t not in by_type:
                by_type[t] = [k, 0]
            by_type[t][1] |= 1 << k
        return [tuple(v) for _, v in sorted(by_type.items())]


@lru_cache(maxsize=None)
def group_table(n) -> GroupTable:
    return GroupTable(n)


# -- subgroup lattice ------------------------------------------------


@dataclass(frozen=True)
class SubgroupLattice:
    n: int
    subgroups: tuple  # bitmasks, ascending
    maximal: tuple  # bitmasks of the maximal proper subgroups

    def orders(self):
        return sorted(m.bit_count() for m in self.subgroups)


@lru_cache(maxsize=None)
def subgroup_lattice(n) -> SubgroupLattice:
    """All subgroups of S_n as element bitmasks, by closing the set of
    cyclic subgroups under pairwise joins."""
    t = group_table(n)
    found = {t.closure([k]) for k in range(len(t))}
    worklist = list(found)
    while worklist:
        a = worklist.pop()
        for b in list(found):
            if a | b in found:
                continue
            j = t.closure(
                [k for k in range(len(t)) if (a | b) >> k & 1]
            )
            if j not in found:
                found.add(j)
                worklist.append(j)
    subs = tuple(sorted(found))
    proper = [m for m in subs if m != t.full_mask]
    maximal = tuple(
        m
        for m in proper
        if not any(k != m and m & k == m for k in proper)
    )
    return SubgroupLattice(n, subs, maximal)


# -- exact covering number -------------------------------------------


@dataclass(frozen=True)
class SigmaResult:
    n: int
    value: int
    witness: tuple  # each entry: tuple of cycle-notation strings


def sigma_exact(n) -> SigmaResult:
    """Minimum number of proper subgroups covering S_n, with a witness.

    Maximal subgroups suffice (any proper subgroup sits inside one), so
    the search runs over the maximal subgroups only.
    """
    if not 3 <= n <= SIGMA_N_CAP:
        raise ValueError(f"sigma_exact supports 3 <= n <= {SIGMA_N_CAP}")
    t = group_table(n)
    lat = subgroup_lattice(n)
    sets = [
        [k for k in range(len(t)) if m >> k & 1] for m in lat.maximal
    ]
    chosen = min_set_cover(len(t), sets)
    witness = tuple(
        tuple(str(p) for p in t.mask_elements(lat.maximal[j])) for j in chosen
    )
    return SigmaResult(n, len(chosen), witness)


def sigma_exhaustive(n) -> int:
    """Independent recount of sigma by plain breadth-first subset search
    over the maximal subgroups (no branch-and-bound shared with
    sigma_exact)."""
    import itertools

    if not 3 <= n <= 4:
        raise ValueError("exhaustive recount kept to n <= 4")
    t = group_table(n)
    maximal = subgroup_lattice(n).maximal
    for k in range(1, len(maximal) + 1):
        for combo in itertools.combinations(maximal, k):
            u = 0
            for m in combo:
                u |= m
            if u == t.full_mask:
                return k
    raise AssertionError("maximal subgroups never cover the group")


# -- exact pairwise generation number --------------------------------


@dataclass(frozen=True)
class OmegaResult:
    n: int
    mode: str
    value: int
    witness: tuple  # cycle-notation strings


def generation_graph(n, mode, vertices=None):
    """Adjacency bitmasks of the generation graph.

    mode FULL joins x, y iff <x,y> = S_n; mode AT_LEAST_ALT iff <x,y>
    is S_n or A_n.  vertices defaults to all of S_n; pass a list of
    Permutations to restrict (e.g. A_n only).
    """
    if mode not in ("FULL", "AT_LEAST_ALT"):
        raise ValueError(f"unknown mode {mode!r}")
    t = group_table(n)
    verts = sorted(vertices) if vertices is not None else t.elems
    idx = [t.index[p] for p in verts]
    adjacency = [0] * len(verts)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            m = t.closure([idx[a], idx[b]])
            ok = m == t.full_mask or (mode == "AT_LEAST_ALT" and m == t.alt_mask)
            if ok:
                adjacency[a] |= 1 << b
                adjacency[b] |= 1 << a
    return verts, adjacency


def omega_exact(n, mode="FULL") -> OmegaResult:
    """Exact clique number of the generation graph, with a witness."""
    if not 3 <= n <= SIGMA_N_CAP:
        raise ValueError(f"omega_exact supports 3 <= n <= {SIGMA_N_CAP}")
    verts, adjacency = generation_graph(n, mode)
    clique = max_clique(adjacency)
    return OmegaResult(n, mode, len(clique), tuple(str(verts[v]) for v in clique))


def alternating_clique_number(n):
    """Clique number of the graph on A_n whose edges are the pairs
    generating A_n, together with its exact edge count."""
    t = group_table(n)
    verts = [p for p in t.elems if p.is_even()]
    adjacency = [0] * len(verts)
    idx = [t.index[p] for p in verts]
    edges = 0
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if t.closure([idx[a], idx[b]]) == t.alt_mask:
                adjacency[a] |= 1 << b
                adjacency[b] |= 1 << a
                edges += 1
    return len(max_clique(adjacency)), len(verts), edges


# -- generation probabilities ----------------------------------------


@dataclass(frozen=True)
class GenerationGraphStats:
    """Pair-generation probabilities partitioned by parity cosets.

    p: uniform pair from S_n generates S_n or A_n.
    a: uniform pair from A_n generates A_n.
    b: uniform pair of odd elements generates S_n.
    c: uniform even element with uniform odd element generates S_n.
    """

    n: int
    p: Fraction
    a: Fraction
    b: Fraction
    c: Fraction


def generation_counts_exact(n) -> GenerationGraphStats:
    """Exact (p, a, b, c) by enumeration over ordered pairs, reduced by
    conjugacy in the first coordinate (the generated subgroup's order
    and coset data are conjugation invariant)."""
    if not 3 <= n <= TABLE_N_CAP:
        raise ValueError(f"generation_counts_exact supports 3 <= n <= {TABLE_N_CAP}")
    t = group_table(n)
    size = len(t)
    half = size // 2
    p_hits = a_hits = b_hits = c_hits = 0
    for rep, class_mask in t.conjugacy_classes():
        weight = class_mask.bit_count()
        rep_even = t.elems[rep].is_even()
        for y in range(size):
            m = t.closure([rep, y])
            y_even = t.elems[y].is_even()
            if m == t.full_mask or m == t.alt_mask:
                p_hits += weight
            if m == t.alt_mask and rep_even and y_even:
                a_hits += weight
            if m == t.full_mask:
                if not rep_even and not y_even:
                    b_hits += weight
                elif rep_even != y_even:
                    c_hits += weight
    return GenerationGraphStats(
        n=n,
        p=Fraction(p_hits, size * size),
        a=Fraction(a_hits, half * half),
        b=Fraction(b_hits, half * half),
        # c counts ordered (even, odd) and (odd, even) pairs together
        c=Fraction(c_hits, 2 * half * half),
    )


@dataclass(frozen=True)
class MCEstimate:
    n: int
    trials: int
    master_seed: int
    p_hat: float
    p_ci: tuple
    a_hat: float
    a_ci: tuple
    b_hat: float
    b_ci: tuple
    comparison: float  # the reference line 1 - 1/n

    def to_json_dict(self):
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.master_seed,
            "p": {"estimate": self.p_hat, "ci99": list(self.p_ci)},
            "a": {"estimate": self.a_hat, "ci99": list(self.a_ci)},
            "b": {"estimate": self.b_hat, "ci99": list(self.b_ci)},
            "reference_1_minus_1_over_n": self.comparison,
        }


def _ci(hits, trials):
    phat = hits / trials
    err = Z_99 * math.sqrt(max(phat * (1 - phat), 1e-12) / trials)
    return phat, (max(0.0, phat - err), min(1.0, phat + err))

_MC_CHUNK = 1000


def _chunk_rng(master_seed, kind, chunk):
    key = f"{master_seed}|{kind}|{chunk}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def _force_parity(p, even):
    if p.is_even() == even:
        return p
    return p * Permutation.from_cycles(p.n, [(1, 2)])


def generation_prob_mc(n, trials, master_seed) -> MCEstimate:
    """Seeded Monte Carlo estimate of p (and a, b via coset-restricted
    sampling), with 99% normal-approximation intervals.

    Trials run in fixed-size chunks with per-chunk derived streams and
    are summed in chunk order, so the result is independent of any
    execution interleaving.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    if trials < 1000:
        raise ValueError("at least 1000 trials required")
    cache = {}

    def classify(x, y):
        key = (x.images, y.images) if x.images <= y.images else (y.images, x.images)
        out = cache.get(key)
        if out is None:
            out = cache[key] = fast_generation_class(x, y)
        return out

    p_hits = a_hits = b_hits = 0
    done = 0
    chunk = 0
    while done < trials:
        todo = min(_MC_CHUNK, trials - done)
        rng = _chunk_rng(master_seed, "pabc", chunk)
        for _ in range(todo):
            x = random_permutation(n, rng)
            y = random_permutation(n, rng)
            if classify(x, y) in (GenClass.FULL_SYMMETRIC, GenClass.ALTERNATING):
                p_hits += 1
            xe, ye = _force_parity(x, True), _force_parity(y, True)
            if classify(xe, ye) is GenClass.ALTERNATING:
                a_hits += 1
            xo, yo = _force_parity(x, False), _force_parity(y, False)
            if classify(xo, yo) is GenClass.FULL_SYMMETRIC:
                b_hits += 1
        done += todo
        chunk += 1

    p_hat, p_ci = _ci(p_hits, trials)
    a_hat, a_ci = _ci(a_hits, trials)
    b_hat, b_ci = _ci(b_hits, trials)
    return MCEstimate(
        n, trials, master_seed, p_hat, p_ci, a_hat, a_ci, b_hat, b_ci, 1 - 1 / n
    )


# -- density-to-clique machinery -------------------------------------


def turan_lower_bound(m, edge_count):
    """Clique-size lower bound forced by edge density.

    Finds the largest r with edge_count > (1 - 1/r) m^2 / 2 (an
    r-clique-free graph cannot have that many edges) and returns r + 1,
    the guaranteed clique size.  Returns 1 for any graph with a vertex,
    0 for the empty graph.
    """
    if m < 0 or edge_count < 0 or 2 * edge_count > m * (m - 1):
        raise ValueError("need 0 <= edge_count <= m(m-1)/2")
    if m == 0:
        return 0
    best = 1
    for r in range(1, m + 1):
        # edge_count > (1 - 1/r) m^2 / 2, cleared of denominators
        if 2 * r * edge_count > (r - 1) * m * m:
            best = r + 1
    return best


def proposition_bound(n, epsilon, c1):
    """The clique lower-bound shape n - c1 * n^epsilon."""
    if c1 <= 0 or not 0 < epsilon < 1:
        raise ValueError("need c1 > 0 and 0 < epsilon < 1")
    return n - c1 * n**epsilon
