import itertools
import math
import random

import pytest

from pairgen.perm import DegreeMismatchError, Permutation, all_permutations
from pairgen.stabchain import GenClass, StabilizerChain, generation_class, group_order


def closure_size(gens):
    """Breadth-first closure over raw image tuples; independent oracle."""
    if not gens:
        return 1
    n = gens[0].n
    raw = [g.images for g in gens]
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in raw:
                q = tuple(p[g[k]] for k in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


class TestGroupOrder:
    def test_empty_is_trivial(self):
        assert group_order([], n=5) == 1

    def test_standard_s4_generators(self):
        gens = [Permutation.parse("(1 2)", 4), Permutation.parse("(1 2 3 4)", 4)]
        assert group_order(gens) == 24

    def test_a4_generators(self):
        gens = [Permutation.parse("(1 2 3)", 4), Permutation.parse("(2 3 4)", 4)]
        assert group_order(gens) == 12

    def test_mixed_degrees_rejected(self):
        with pytest.raises(DegreeMismatchError):
            group_order([Permutation.identity(3), Permutation.identity(4)])

    def test_order_divides_factorial_and_bounds_element_orders(self):
        rng = random.Random(1)
        from pairgen.perm import random_permutation

        for _ in range(30):
            n = rng.randint(3, 7)
            x, y = random_permutation(n, rng), random_permutation(n, rng)
            o = group_order([x, y])
            assert math.factorial(n) % o == 0
            assert o % x.order() == 0 and o % y.order() == 0

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_closure_on_sampled_pairs(self, n):
        rng = random.Random(n)
        elems = sorted(all_permutations(n))
        for _ in range(40):
            x, y = rng.choice(elems), rng.choice(elems)
            assert group_order([x, y]) == closure_size([x, y])

    def test_membership(self):
        chain = StabilizerChain(
            [Permutation.parse("(1 2 3)", 4), Permutation.parse("(2 3 4)", 4)]
        )
        assert Permutation.parse("(1 2)(3 4)", 4) in chain
        assert Permutation.parse("(1 2)", 4) not in chain


class TestGenerationClass:
    def test_transposition_plus_full_cycle(self):
        x = Permutation.parse("(1 2)", 6)
        y = Permutation.parse("(1 2 3 4 5 6)", 6)
        assert generation_class(x, y) is GenClass.FULL_SYMMETRIC

    def test_cyclic_is_proper(self):
        x = Permutation.parse("(1 2 3)", 4)
        assert generation_class(x, x) is GenClass.PROPER

    def test_alternating(self):
        x = Permutation.parse("(1 2 3)", 5)
        y = Permutation.parse("(3 4 5)", 5)
        assert generation_class(x, y) is GenClass.ALTERNATING

    def test_symmetric_in_arguments(self):
        rng = random.Random(2)
        from pairgen.perm import random_permutation

        for _ in range(40):
            x, y = random_permutation(5, rng), random_permutation(5, rng)
            assert generation_class(x, y) is generation_class(y, x)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            generation_class(Permutation.identity(3), Permutation.identity(4))

    def test_all_s4_pairs_match_closure_oracle(self):
        elems = sorted(all_permutations(4))
        full = 24
        checked = 0
        for x, y in itertools.product(elems, elems):
            cls = generation_class(x, y)
            size = closure_size([x, y])
            if size == full:
                expected = GenClass.FULL_SYMMETRIC
            elif size == full // 2 and x.is_even() and y.is_even():
                expected = GenClass.ALTERNATING
            else:
                expected = GenClass.PROPER
            assert cls is expected, (str(x), str(y))
            checked += 1
        assert checked == 576
