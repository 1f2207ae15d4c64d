"""Maximal subgroups of S_n handled symbolically, for even n.

The two families driving everything:

* family 1: imprimitive maximal subgroups with two blocks of size n/2,
  indexed by the half-sets containing the point 1;
* family 2: family 1 together with the intransitive maximal subgroups
  S_a x S_b with a, b odd and a != b, indexed by the odd subsets of
  size < n/2.

Intransitive and imprimitive subgroups get element-level membership
tests; primitive maximal subgroups are only ever used through the 4^n
order bound and a class count, so they are never materialized.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .perm import Permutation, all_permutations


class OddDegreeError(ValueError):
    """The two-block/odd-intransitive constructions need n even.

    For odd n the covering number is the literature value 2^(n-1)
    exposed by the exact oracles, not something this module computes.
    """


def _require_even(n, minimum=4):
    if n % 2 != 0 or n < minimum:
        raise OddDegreeError(f"need even n >= {minimum}, got {n}")


class SubgroupKind(enum.Enum):
    INTRANSITIVE = "INTRANSITIVE"
    IMPRIMITIVE = "IMPRIMITIVE"
    PRIMITIVE_BOUND = "PRIMITIVE_BOUND"


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Symbolic maximal subgroup of S_n.

    INTRANSITIVE carries the stabilized set (1-based, sorted tuple);
    IMPRIMITIVE carries a partition into equal blocks, each block a
    sorted tuple, blocks ordered by minimum element;
    PRIMITIVE_BOUND carries only an order bound.
    """

    kind: SubgroupKind
    n: int
    delta: tuple = ()
    blocks: tuple = ()
    order_bound: int = 0

    @classmethod
    def intransitive(cls, n, delta):
        delta = tuple(sorted(delta))
        if not delta or len(delta) >= n or len(set(delta)) != len(delta):
            raise ValueError("need 1 <= |delta| < n without repeats")
        if delta[0] < 1 or delta[-1] > n:
            raise ValueError("points out of range")
        return cls(SubgroupKind.INTRANSITIVE, n, delta=delta)

    @classmethod
    def imprimitive(cls, n, blocks):
        blocks = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1 or len(blocks) < 2 or len(blocks[0]) < 2:
            raise ValueError("need m >= 2 equal blocks of size d >= 2")
        if sorted(p for b in blocks for p in b) != list(range(1, n + 1)):
            raise ValueError("blocks must partition {1..n}")
        return cls(SubgroupKind.IMPRIMITIVE, n, blocks=blocks)

    @classmethod
    def primitive_bound(cls, n, order_bound=None):
        if order_bound is None:
            order_bound = 4**n  # Praeger-Saxl order bound
        return cls(SubgroupKind.PRIMITIVE_BOUND, n, order_bound=order_bound)

    def contains(self, p: Permutation) -> bool:
        if p.n != self.n:
            raise ValueError(f"degree mismatch: {p.n} != {self.n}")
        if self.kind is SubgroupKind.INTRANSITIVE:
            return {p.apply(x) for x in self.delta} == set(self.delta)
        if self.kind is SubgroupKind.IMPRIMITIVE:
            blockset = set(self.blocks)
            return all(
                tuple(sorted(p.apply(x) for x in b)) in blockset for b in self.blocks
            )
        raise ValueError("PRIMITIVE_BOUND has no element-level membership")

    def block_of(self, point):
        for b in self.blocks:
            if point in b:
                return b
        raise ValueError(f"point {point} not in any block")


@dataclass(frozen=True)
class DeltaIndex:
    """Index of a family member: a subset of {1..n}, sorted 1-based."""

    n: int
    delta: tuple
    family_tag: int

    def __post_init__(self):
        _require_even(self.n)
        object.__setattr__(self, "delta", tuple(sorted(self.delta)))
        d = self.delta
        if len(set(d)) != len(d) or not d or d[0] < 1 or d[-1] > self.n:
            raise ValueError("delta must be a nonempty subset of {1..n}")
        half = self.n // 2
        if self.family_tag == 1:
            if len(d) != half or 1 not in d:
                raise ValueError("family 1 needs |delta| = n/2 and 1 in delta")
        elif self.family_tag == 2:
            ok_half = len(d) == half and 1 in d
            ok_odd = len(d) % 2 == 1 and len(d) < half
            if not (ok_half or ok_odd):
                raise ValueError(
                    "family 2 needs |delta| = n/2 with 1 in delta, "
                    "or |delta| odd and < n/2"
                )
        else:
            raise ValueError("family_tag must be 1 or 2")

    @property
    def size(self):
        return len(self.delta)

    @property
    def is_half(self):
        return self.size == self.n // 2

    def complement(self):
        return tuple(sorted(set(range(1, self.n + 1)) - set(self.delta)))

    def key(self):
        """Canonical sort/serialization key."""
        return self.delta


def family_size(n, i):
    """Closed-form number of family members (= catalog length)."""
    _require_even(n)
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    half_count = math.comb(n, n // 2) // 2
    if i == 1:
        return half_count
    if (n // 2) % 2 == 0:
        return half_count + 2 ** (n - 2)
    return 2 ** (n - 2)


def catalog(n, i):
    """Iterate the family indices in canonical (lexicographic) order."""
    _require_even(n)
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    half = n // 2
    deltas = [
        (1,) + rest
        for rest in itertools.combinations(range(2, n + 1), half - 1)
    ]
    if i == 2:
        for a in range(1, half, 2):
            deltas.extend(itertools.combinations(range(1, n + 1), a))
    for delta in sorted(deltas):
        yield DeltaIndex(n, delta, i)


def delta_to_subgroup(d: DeltaIndex) -> SubgroupDescriptor:
    """The maximal subgroup M indexed by d: the stabilizer of the
    two-block partition when |delta| = n/2, the setwise stabilizer
    otherwise."""
    if d.is_half:
        return SubgroupDescriptor.imprimitive(d.n, (d.delta, d.complement()))
    return SubgroupDescriptor.intransitive(d.n, d.delta)


# -- covering verification -------------------------------------------


def _subset_sums(lengths):
    sums = {0}
    for ln in lengths:
        sums |= {s + ln for s in sums}
    return sums


def type_covered_two_block(n, lengths):
    """Does an element with these cycle lengths lie in some two-block
    imprimitive maximal subgroup?

    Fixing both blocks needs a sub-multiset of cycles of total size n/2;
    swapping the blocks forces every cycle to alternate, i.e. all cycle
    lengths even.
    """
    if all(ln % 2 == 0 for ln in lengths):
        return True
    return n // 2 in _subset_sums(lengths)


def type_covered_odd_intransitive(n, lengths):
    """Does the element lie in some S_a x S_b with a, b odd, a != b?"""
    return any(s % 2 == 1 and s != n - s for s in _subset_sums(lengths) if 0 < s < n)


def type_covered(n, i, lengths):
    if type_covered_two_block(n, lengths):
        return True
    return i == 2 and type_covered_odd_intransitive(n, lengths)


def cycle_types(n):
    """Partitions of n as descending tuples, lexicographically sorted."""

    def parts(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first,) + rest

    return sorted(parts(n, n))


def representative_of_type(n, lengths):
    """A concrete element with the given cycle type, on consecutive points."""
    cycles = []
    start = 1
    for ln in lengths:
        cycles.append(tuple(range(start, start + ln)))
        start += ln
    return Permutation.from_cycles(n, cycles)


@dataclass
class CoverReport:
    n: int
    i: int
    mode: str
    covered: bool
    uncovered_cycle_types: list

    def to_json_dict(self):
        return {
            "n": self.n,
            "i": self.i,
            "mode": self.mode,
            "covered": self.covered,
            "uncovered_cycle_types": [list(t) for t in self.uncovered_cycle_types],
        }


_EXHAUSTIVE_ELEMENT_CAP = 8


def covers(n, i, mode="cycle-type"):
    """Check whether family i covers S_n; report the uncovered cycle types.

    cycle-type mode applies the block-fixing/block-swapping and
    odd-invariant-set rules per type.  exhaustive mode tests elements
    pointwise against every materialized family member: all n! elements
    for n <= 8, one representative per cycle type above that (membership
    in a conjugation-closed family depends only on the cycle type).
    """
    _require_even(n)
    if mode == "cycle-type":
        uncovered = [t for t in cycle_types(n) if not type_covered(n, i, t)]
        return CoverReport(n, i, mode, not uncovered, uncovered)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    descriptors = [delta_to_subgroup(d) for d in catalog(n, i)]
    uncovered = set()
    if n <= _EXHAUSTIVE_ELEMENT_CAP:
        mode_label = "exhaustive"
        elements = all_permutations(n)
    else:
        mode_label = "exhaustive-type-representatives"
        elements = (representative_of_type(n, t) for t in cycle_types(n))
    for p in elements:
        t = p.cycle_type()
        if t in uncovered:
            continue
        if not any(m.contains(p) for m in descriptors):
            uncovered.add(t)
    return CoverReport(n, i, mode_label, not uncovered, sorted(uncovered))


# -- sigma upper bound -----------------------------------------------


def sigma_upper_bound(n):
    """(1/2) C(n, n/2) + sum_{i=1}^{floor(n/3)} C(n, i)."""
    _require_even(n)
    q = n // 3
    return math.comb(n, n // 2) // 2 + sum(math.comb(n, i) for i in range(1, q + 1))


def sigma_upper_cover_check(n, exhaustive=False):
    """Verify that the two-block family plus the set stabilizers of size
    <= floor(n/3) cover S_n.  Returns the list of uncovered cycle types
    (empty when the covering works)."""
    _require_even(n)
    q = n // 3
    if not exhaustive:
        uncovered = []
        for t in cycle_types(n):
            sums = _subset_sums(t)
            if type_covered_two_block(n, t):
                continue
            if any(1 <= s <= q for s in sums):
                continue
            uncovered.append(t)
        return uncovered
    descriptors = [delta_to_subgroup(d) for d in catalog(n, 1)]
    for size in range(1, q + 1):
        for delta in itertools.combinations(range(1, n + 1), size):
            descriptors.append(SubgroupDescriptor.intransitive(n, delta))
    uncovered = set()
    for p in all_permutations(n):
        t = p.cycle_type()
        if t in uncovered:
            continue
        if not any(m.contains(p) for m in descriptors):
            uncovered.add(t)
    return sorted(uncovered)


# -- constants feeding the LLL certificate ---------------------------


@dataclass(frozen=True)
class HFamilyConstants:
    """Per-class counts for the families H_2..H_5 of maximal subgroups
    outside the main family: c[j] bounds the number of conjugacy classes
    of H_j meeting a pair of C(Delta) sets, s4 bounds the number of
    four-block members meeting both sets when both deltas are half-sets.
    """

    n: int
    i: int
    c2: int
    c3: int
    c4: int
    c5: int
    s4_half_pair: int
    cfsg_dependent: tuple = ("c2<=n via CFSG, asserted for large n only",)


def h5_class_count(n):
    """Number of conjugacy classes of imprimitive maximal subgroups with
    at least 5 blocks: divisors m of n with m >= 5 and block size >= 2."""
    return sum(1 for m in range(5, n) if n % m == 0 and n // m >= 2)


def hfamily_constants(n, i=1):
    _require_even(n)
    c5 = h5_class_count(n)
    # c5 is an integer, so c5 <= 2*sqrt(n) iff c5 <= floor(sqrt(4n))
    assert c5 <= math.isqrt(4 * n), "divisor count bound violated"
    return HFamilyConstants(n=n, i=i, c2=n, c3=1, c4=1, c5=c5, s4_half_pair=1)


# -- exhaustive structure check behind the s4 <= 1 constant ----------


def equal_partitions(n, m):
    """All partitions of {1..n} into m blocks of size n/m, canonical order."""
    d = n // m
    if d * m != n or d < 2 or m < 2:
        raise ValueError("need n = d*m with d, m >= 2")

    def rec(points):
        if not points:
            yield ()
            return
        head = points[0]
        for rest in itertools.combinations(points[1:], d - 1):
            block = (head,) + rest
            remaining = tuple(x for x in points[1:] if x not in rest)
            for tail in rec(remaining):
                yield (block,) + tail

    for blocks in rec(tuple(range(1, n + 1))):
        yield SubgroupDescriptor.imprimitive(n, blocks)


def s4_structure_check(n=8):
    """Exhaustively confirm why s4 <= 1 for half-set pairs: whenever some
    four-block stabilizer W meets both C(Delta1) and C(Delta2), its blocks
    are exactly the four intersection pieces and |Delta1 ^ Delta2| = n/4.

    Returns the number of (pair, W) incidences checked.
    """
    from .cdelta import enumerate_cdelta  # local import: avoid cycle

    _require_even(n)
    if n % 4 != 0:
        raise ValueError("need 4 | n")
    deltas = list(catalog(n, 1))
    csets = {d.delta: list(enumerate_cdelta(d)) for d in deltas}
    checked = 0
    for w in equal_partitions(n, 4):
        hitters = [
            d for d in deltas if any(w.contains(g) for g in csets[d.delta])
        ]
        for d1, d2 in itertools.combinations(hitters, 2):
            checked += 1
            s1, s2 = set(d1.delta), set(d2.delta)
            omega = set(range(1, n + 1))
            pieces = {
                tuple(sorted(s1 & s2)),
                tuple(sorted(s1 - s2)),
                tuple(sorted(s2 - s1)),
                tuple(sorted(omega - (s1 | s2))),
            }
            if len(s1 & s2) != n // 4 or pieces != set(w.blocks):
                raise AssertionError(
                    f"four-block structure violated for {d1.delta}, {d2.delta}"
                )
    return checked
