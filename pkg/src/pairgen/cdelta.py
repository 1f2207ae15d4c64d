"""The constrained cycle sets C(Delta).

For a half-set Delta these are the n-cycles that alternate between
Delta and its complement; for an odd set of size a < n/2 they are the
elements of cycle type (a, n-a) whose a-cycle is supported exactly on
Delta.  Exact counts, exhaustive enumeration, exactly-uniform sampling,
the fractions f_Delta(H) and the conjugate-count bound live here.
"""
from __future__ import annotations

import hashlib
import itertools
import math
import random
from fractions import Fraction

from .families import DeltaIndex, SubgroupDescriptor, SubgroupKind, equal_partitions
from .perm import Permutation

F_DELTA_ENUMERATION_CAP = 12
CONJUGATE_ENUMERATION_CAP = 8


def cdelta_size(d: DeltaIndex) -> int:
    """|C(Delta)| in closed form."""
    n = d.n
    if d.is_half:
        # (2/n) * ((n/2)!)^2, an integer since (n/2) divides (n/2)!
        return 2 * math.factorial(n // 2) ** 2 // n
    a = d.size
    return math.factorial(a - 1) * math.factorial(n - a - 1)


def membership(p: Permutation, d: DeltaIndex) -> bool:
    if p.n != d.n:
        raise ValueError(f"degree mismatch: {p.n} != {d.n}")
    n = d.n
    delta = set(d.delta)
    if d.is_half:
        if p.cycle_type() != (n,):
            return False
        return all((p.apply(x) in delta) != (x in delta) for x in range(1, n + 1))
    a = d.size
    cycles = p.cycles(include_fixed=True)
    if sorted(len(c) for c in cycles) != sorted((a, n - a)):
        return False
    small = next(c for c in cycles if len(c) == a)
    return set(small) == delta


def _cycle_from_word(n, word):
    return Permutation.from_cycles(n, [tuple(word)])


def enumerate_cdelta(d: DeltaIndex):
    """Exhaustive enumeration of C(Delta); length equals cdelta_size."""
    n = d.n
    delta = d.delta
    if d.is_half:
        rest = [x for x in delta if x != delta[0]]
        comp = d.complement()
        # cycle word (delta[0], c_1, d_1, c_2, d_2, ...) alternating sides
        for comp_order in itertools.permutations(comp):
            for rest_order in itertools.permutations(rest):
                word = [delta[0]]
                for c, r in zip(comp_order, rest_order + (None,)):
                    word.append(c)
                    if r is not None:
                        word.append(r)
                yield _cycle_from_word(n, word)
    else:
        comp = d.complement()
        for small_rest in itertools.permutations(delta[1:]):
            small = (delta[0],) + small_rest
            for big_rest in itertools.permutations(comp[1:]):
                big = (comp[0],) + big_rest
                yield Permutation.from_cycles(n, [small, big])


def derive_rng(master_seed, d: DeltaIndex) -> random.Random:
    """Per-Delta stream: seed = SHA-256 of (master_seed, sorted Delta).

    One independent stream per Delta makes parallel sampling
    deterministic given the master seed.
    """
    key = f"{master_seed}|{','.join(map(str, d.delta))}".encode()
    seed = int.from_bytes(hashlib.sha256(key).digest()[:8], "big")
    return random.Random(seed)


def sample_uniform(d: DeltaIndex, rng: random.Random) -> Permutation:
    """Exactly uniform member of C(Delta), by direct bijective encoding
    (no rejection): a uniform ordering of each side of the constraint."""
    n = d.n
    if d.is_half:
        rest = [x for x in d.delta if x != d.delta[0]]
        comp = list(d.complement())
        rng.shuffle(comp)
        rng.shuffle(rest)
        word = [d.delta[0]]
        for k, c in enumerate(comp):
            word.append(c)
            if k < len(rest):
                word.append(rest[k])
        return _cycle_from_word(n, word)
    delta = list(d.delta)
    comp = list(d.complement())
    small_rest = delta[1:]
    big_rest = comp[1:]
    rng.shuffle(small_rest)
    rng.shuffle(big_rest)
    return Permutation.from_cycles(
        n, [tuple([delta[0]] + small_rest), tuple([comp[0]] + big_rest)]
    )


def f_delta(d: DeltaIndex, h: SubgroupDescriptor) -> Fraction:
    """f_Delta(H) = |C(Delta) ^ H| / |C(Delta)| as an exact rational,
    by enumeration of C(Delta)."""
    if h.kind is SubgroupKind.PRIMITIVE_BOUND:
        raise ValueError("no element-level membership for PRIMITIVE_BOUND")
    if h.n != d.n:
        raise ValueError("degree mismatch")
    if d.n > F_DELTA_ENUMERATION_CAP:
        raise ValueError(f"exact f_delta limited to n <= {F_DELTA_ENUMERATION_CAP}")
    total = 0
    hits = 0
    for g in enumerate_cdelta(d):
        total += 1
        if h.contains(g):
            hits += 1
    return Fraction(hits, total)


def stabilized_equal_partitions(g: Permutation, m: int):
    """All partitions of {1..n} into m equal blocks that g permutes.

    A stabilized partition is a coloring c with c(g(x)) = sigma(c(x))
    for some sigma in S_m, so it is determined by sigma plus one color
    choice per cycle of g (consistent with the cycle length and the
    block sizes).  Intended for elements with few cycles; the work grows
    with m! * m^(number of cycles).
    """
    n = g.n
    d, r = divmod(n, m)
    if r or d < 2 or m < 2:
        return []
    cycles = g.cycles(include_fixed=True)
    found = {}
    for sigma in itertools.permutations(range(m)):
        def assign(idx, sizes, coloring):
            if idx == len(cycles):
                blocks = [[] for _ in range(m)]
                for cyc, start in coloring:
                    b = start
                    for x in cyc:
                        blocks[b].append(x)
                        b = sigma[b]
                key = frozenset(frozenset(b) for b in blocks)
                if key not in found:
                    found[key] = SubgroupDescriptor.imprimitive(n, blocks)
                return
            cyc = cycles[idx]
            length = len(cyc)
            for start in range(m):
                # sigma iterated len(cyc) times must return the color
                b = start
                for _ in range(length):
                    b = sigma[b]
                if b != start:
                    continue
                new = list(sizes)
                b = start
                ok = True
                for _ in range(length):
                    new[b] += 1
                    if new[b] > d:
                        ok = False
                        break
                    b = sigma[b]
                if ok:
                    assign(idx + 1, new, coloring + [(cyc, start)])

        assign(0, [0] * m, [])
    return list(found.values())


def _admissible_cycle_element(g: Permutation):
    """The lemma applies to n-cycles and (s, n-s) elements; reject others."""
    t = g.cycle_type()
    if len(t) == 1:
        return t
    if len(t) == 2:
        return t
    raise ValueError(f"element of cycle type {t} is not an n-cycle or (s, n-s)")


def conjugate_count(g: Permutation, m: SubgroupDescriptor) -> int:
    """Number of distinct S_n-conjugates of m containing g.

    Conjugates of a set stabilizer are the stabilizers of same-size
    sets, and likewise for partition stabilizers, so the count is a
    direct enumeration of descriptors of the same shape.
    """
    _admissible_cycle_element(g)
    n = m.n
    if g.n != n:
        raise ValueError("degree mismatch")
    if n > CONJUGATE_ENUMERATION_CAP:
        raise ValueError(f"exhaustive mode limited to n <= {CONJUGATE_ENUMERATION_CAP}")
    if m.kind is SubgroupKind.INTRANSITIVE:
        # one descriptor per stabilized set of the same size
        s = len(m.delta)
        return sum(
            1
            for delta in itertools.combinations(range(1, n + 1), s)
            if SubgroupDescriptor.intransitive(n, delta).contains(g)
        )
    if m.kind is SubgroupKind.IMPRIMITIVE:
        mm = len(m.blocks)
        return sum(1 for w in equal_partitions(n, mm) if w.contains(g))
    raise ValueError("PRIMITIVE_BOUND conjugates are not enumerable")
