import math
from collections import Counter
from fractions import Fraction

import pytest

from pairgen.bounds import (
    BoundValue,
    E_UP,
    admissible_sizes,
    cdelta_lower_bound,
    dependency_valency,
    event_bound,
    event_bound_total,
    exhaustive_event_probability,
    f3_bound,
    f4_bound,
    h_descriptors,
    lll_certificate,
    sanity_two_pow_below_lll,
)
from pairgen.cdelta import (
    cdelta_size,
    enumerate_cdelta,
    stabilized_equal_partitions,
)
from pairgen.families import DeltaIndex, equal_partitions
from pairgen.perm import Permutation


def half_delta(n):
    return DeltaIndex(n, tuple(range(1, n // 2 + 1)), 1)


def half_pair(n, k):
    """Two half-sets containing 1 with intersection size k."""
    h = n // 2
    d1 = tuple(range(1, h + 1))
    d2 = tuple(range(1, k + 1)) + tuple(range(h + 1, h + 1 + (h - k)))
    return DeltaIndex(n, d1, 1), DeltaIndex(n, d2, 1)


class TestEUp:
    def test_e_up_is_an_upper_bound(self):
        assert float(E_UP) >= math.e


class TestEventBoundBasics:
    def test_j1_always_zero(self):
        for n in (6, 8, 20):
            b = event_bound(n, 1, 1, (n // 2, n // 2))
            assert b.is_zero and b.exact == 0

    def test_j2_closed_form(self):
        for n in (6, 8, 12, 20):
            b = event_bound(n, 1, 2, (n // 2, n // 2))
            expected = Fraction(n**3 * 4**n) / cdelta_lower_bound(n)
            assert b.exact == expected
            assert b.log2_up >= math.log2(expected)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            event_bound(8, 1, 6, (4, 4))
        with pytest.raises(ValueError):
            event_bound(8, 1, 2, (3, 4))
        with pytest.raises(ValueError):
            event_bound(8, 2, 2, (2, 4))  # even small size never admissible

    def test_log_dominates_exact_to_n12(self):
        for n in (6, 8, 10, 12):
            for i in (1, 2):
                sizes = admissible_sizes(n, i)
                for j in (1, 2, 3, 4, 5):
                    for s1 in sizes:
                        for s2 in sizes:
                            b = event_bound(n, i, j, (s1, s2))
                            assert b.exact is not None
                            if b.exact == 0:
                                assert b.is_zero
                            else:
                                assert b.log2_up >= math.log2(b.exact)

    def test_total_sums(self):
        t = event_bound_total(8, 1, (4, 4))
        parts = [event_bound(8, 1, j, (4, 4)).exact for j in (1, 2, 3, 4, 5)]
        assert t.exact == sum(parts)


def max_f_over_m_blocks(d, m):
    """max over m-block stabilizers W of f_delta(W), plus the set of
    W with nonzero intersection, by direct enumeration of C(Delta)."""
    counts = Counter()
    total = 0
    for g in enumerate_cdelta(d):
        total += 1
        for w in stabilized_equal_partitions(g, m):
            counts[w.blocks] += 1
    best = max(counts.values(), default=0)
    return Fraction(best, total), set(counts)


class TestFractionBoundsAgainstEnumeration:
    """The explicit prefactors must dominate the enumerated maxima and
    reproduce the vanishing conditions."""

    def test_three_blocks_half_sets(self):
        for n in (6, 12):
            d = half_delta(n)
            fmax, nonzero = max_f_over_m_blocks(d, 3)
            assert fmax <= f3_bound(n, n // 2)
            assert fmax > 0
            delta = set(d.delta)
            for blocks in nonzero:
                assert all(len(delta & set(b)) == n // 6 for b in blocks)
            balanced = {
                w.blocks
                for w in equal_partitions(n, 3)
                if all(len(delta & set(b)) == n // 6 for b in w.blocks)
            }
            assert nonzero == balanced  # the condition is if-and-only-if

    def test_four_blocks_half_sets(self):
        for n in (8, 12):
            d = half_delta(n)
            fmax, nonzero = max_f_over_m_blocks(d, 4)
            assert fmax <= f4_bound(n, n // 2)
            assert fmax > 0
            delta = set(d.delta)
            union_of_two = {
                w.blocks
                for w in equal_partitions(n, 4)
                if sum(1 for b in w.blocks if set(b) <= delta) == 2
            }
            assert nonzero == union_of_two

    def test_three_blocks_odd_sets(self):
        # 3 | a is necessary; the a = 3 case is also nonzero here
        d3 = DeltaIndex(12, (1, 2, 3), 2)
        fmax, nonzero = max_f_over_m_blocks(d3, 3)
        assert fmax <= f3_bound(12, 3)
        assert nonzero
        d5 = DeltaIndex(12, (1, 2, 3, 4, 5), 2)
        fmax5, nonzero5 = max_f_over_m_blocks(d5, 3)
        assert fmax5 == 0 and not nonzero5
        assert f3_bound(12, 5) == 0

    def test_four_blocks_odd_sets(self):
        # nonzero only when a = n/4 and Delta is a block
        d3 = DeltaIndex(12, (1, 2, 3), 2)
        fmax, nonzero = max_f_over_m_blocks(d3, 4)
        assert fmax <= f4_bound(12, 3)
        assert nonzero
        for blocks in nonzero:
            assert (1, 2, 3) in blocks
        d5 = DeltaIndex(12, (1, 2, 3, 4, 5), 2)
        fmax5, nonzero5 = max_f_over_m_blocks(d5, 4)
        assert fmax5 == 0 and not nonzero5
        assert f4_bound(12, 5) == 0

    def test_four_blocks_size_one_vanishes(self):
        # a = 1 != n/4 at n = 8: type (1,7) never sits in a 4-block
        # stabilizer; full enumeration is feasible here
        d1 = DeltaIndex(8, (3,), 2)
        fmax, nonzero = max_f_over_m_blocks(d1, 4)
        assert fmax == 0 and not nonzero
        assert f4_bound(8, 1) == 0

    def test_divisibility_vanishing(self):
        assert f3_bound(8, 4) == 0  # 3 does not divide 8
        assert f4_bound(6, 3) == 0  # 4 does not divide 6
        assert f3_bound(12, 1) == 0


class TestExhaustiveDomination:
    """Each implemented bound must dominate the exact event probability
    wherever the latter is exhaustively computable (family 2 of
    primitive groups excluded)."""

    def test_n6_three_blocks(self):
        for k in (1, 2):
            d1, d2 = half_pair(6, k)
            p = exhaustive_event_probability(6, 1, 3, d1, d2)
            assert p <= event_bound(6, 1, 3, (3, 3)).exact

    def test_n8_four_blocks(self):
        for k in (1, 2, 3):
            d1, d2 = half_pair(8, k)
            p = exhaustive_event_probability(8, 1, 4, d1, d2)
            assert p <= event_bound(8, 1, 4, (4, 4)).exact

    def test_n8_empty_families(self):
        d1, d2 = half_pair(8, 2)
        assert exhaustive_event_probability(8, 1, 3, d1, d2) == 0
        assert exhaustive_event_probability(8, 1, 5, d1, d2) == 0

    def test_n10_five_blocks(self):
        # orbit oracle: a 10-cycle stabilizes exactly one partition into
        # 5 blocks of 2 (the orbits of its 5th power), so the event
        # probability is a dot product of partition counters
        def counter(d):
            c = Counter()
            total = 0
            for g in enumerate_cdelta(d):
                total += 1
                ws = stabilized_equal_partitions(g, 5)
                assert len(ws) == 1
                c[ws[0].blocks] += 1
            return c, total

        bound = event_bound(10, 1, 5, (5, 5)).exact
        for k in (1, 2, 3, 4):
            d1, d2 = half_pair(10, k)
            c1, t1 = counter(d1)
            c2, t2 = counter(d2)
            hits = sum(m1 * c2.get(w, 0) for w, m1 in c1.items())
            p = Fraction(hits, t1 * t2)
            assert p <= bound

    def test_generic_probability_matches_orbit_oracle(self):
        # cross-validate the generic enumerator against the orbit trick
        d1, d2 = half_pair(6, 2)
        generic = exhaustive_event_probability(6, 1, 3, d1, d2)

        def counter(d):
            c = Counter()
            total = 0
            for g in enumerate_cdelta(d):
                total += 1
                for w in stabilized_equal_partitions(g, 3):
                    c[w.blocks] += 1
            return c, total

        c1, t1 = counter(d1)
        c2, t2 = counter(d2)
        hits = sum(m1 * c2.get(w, 0) for w, m1 in c1.items())
        assert generic == Fraction(hits, t1 * t2)


class TestHDescriptors:
    def test_counts(self):
        assert len(h_descriptors(6, 3)) == 15
        assert len(h_descriptors(8, 4)) == 105
        assert h_descriptors(8, 3) == []
        assert len(h_descriptors(10, 5)) == 945


class TestCertificate:
    def test_n6_fails(self):
        r = lll_certificate(6, 1)
        assert not r.lll_ok and not r.two_pow_ok

    def test_valency(self):
        from pairgen.families import family_size

        for n in (6, 8, 12):
            for i in (1, 2):
                d = dependency_valency(n, i)
                assert d == 2 * (family_size(n, i) - 2)
                assert d <= 2 ** (n + 1)

    def test_sanity_two_pow_below_lll(self):
        for n in range(6, 65, 2):
            for i in (1, 2):
                assert sanity_two_pow_below_lll(n, i)

    def test_diagonal_reduction_matches_full_maximum(self):
        # the certificate maximizes over diagonal size pairs only; the
        # true maximum over all pairs must agree
        for n in (12, 20, 24):
            r = lll_certificate(n, 2)
            sizes = admissible_sizes(n, 2)
            full_max = max(
                event_bound_total(n, 2, (s1, s2)).exact
                for s1 in sizes
                for s2 in sizes
            )
            assert r.total_exact == full_max

    def test_json_schema(self):
        d = lll_certificate(8, 1).to_json_dict()
        assert d["kind"] == "LLL_THRESHOLD"
        assert set(d["bounds"]) == {"1", "2", "3", "4", "5"}
        assert isinstance(d["thresholds"]["lll"], bool)
        assert d["bounds"]["1"] is None  # zero bound encodes as null

    def test_bound_value_consistency_guard(self):
        with pytest.raises(AssertionError):
            BoundValue(log2_up=-10.0, exact=Fraction(1, 2), provenance="x")
