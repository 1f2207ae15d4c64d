"""Deterministic Schreier-Sims: exact orders, membership, generation tests.

The base is always built from the smallest moved points in increasing
order, so chains (and everything derived from them) are reproducible
bit-for-bit.  Internally permutations are raw image tuples for speed;
the public API speaks :class:`~pairgen.perm.Permutation`.
"""
from __future__ import annotations

import enum
import math

from .perm import DegreeMismatchError, Permutation


def _mul(a, b):
    # (a*b)(x) = a(b(x))
    return tuple(a[x] for x in b)


def _inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class StabilizerChain:
    """Stabilizer chain for the group generated by `generators`.

    levels[l] = (base_point, transversal) where transversal maps each
    orbit point to a coset representative carrying base_point to it.
    """

    def __init__(self, generators, n=None):
        generators = list(generators)
        if n is None:
            if not generators:
                raise ValueError("need a degree for the empty generating set")
            n = generators[0].n
        if any(g.n != n for g in generators):
            raise DegreeMismatchError("generators have mixed degrees")
        self.n = n
        self.base = []  # 0-based base points
        self._gens = []  # strong generators per level (image tuples)
        self._trans = []  # transversal dicts per level
        self._build([g.images for g in generators if not g.is_identity()])

    # -- construction ------------------------------------------------

    def _orbit_transversal(self, b, gens):
        ident = tuple(range(self.n))
        trans = {b: ident}
        frontier = [b]
        while frontier:
            nxt = []
            for x in frontier:
                tx = trans[x]
                for g in gens:
                    y = g[x]
                    if y not in trans:
                        trans[y] = _mul(g, tx)
                        nxt.append(y)
            frontier = nxt
        return trans

    def _level_gens(self, l):
        return [g for lvl in self._gens[l:] for g in lvl]

    def _rebuild(self):
        for l, b in enumerate(self.base):
            self._trans[l] = self._orbit_transversal(b, self._level_gens(l))

    def _sift_tuple(self, g, start=0):
        """Strip g through levels >= start; return the residue tuple or None."""
        for l in range(start, len(self.base)):
            x = g[self.base[l]]
            t = self._trans[l].get(x)
            if t is None:
                return g
            g = _mul(_inv(t), g)
        if all(i == j for i, j in enumerate(g)):
            return None
        return g

    def _add_strong_gen(self, g):
        # place g at the deepest level whose base prefix it fixes
        l = 0
        while l < len(self.base) and g[self.base[l]] == self.base[l]:
            l += 1
        if l == len(self.base):
            b = min(p for p in range(self.n) if g[p] != p)
            self.base.append(b)
            self._gens.append([])
            self._trans.append({})
        self._gens[l].append(g)

    def _build(self, gens):
        for g in gens:
            self._add_strong_gen(g)
        self._rebuild()
        # fixpoint: every Schreier generator must sift to the identity
        while True:
            violation = None
            for l in range(len(self.base)):
                gens_l = self._level_gens(l)
                trans = self._trans[l]
                for x in sorted(trans):
                    tx = trans[x]
                    for s in gens_l:
                        rep = trans[s[x]]
                        residue = self._sift_tuple(
                            _mul(_inv(rep), _mul(s, tx)), l + 1
                        )
                        if residue is not None:
                            violation = residue
                            break
                    if violation:
                        break
                if violation:
                    break
            if violation is None:
                return
            self._add_strong_gen(violation)
            self._rebuild()

    # -- queries -----------------------------------------------------

    @property
    def order(self):
        out = 1
        for t in self._trans:
            out *= len(t)
        return out

    def __contains__(self, p):
        if not isinstance(p, Permutation) or p.n != self.n:
            return False
        return self._sift_tuple(p.images) is None


def group_order(gens, n=None):
    """Exact order of the subgroup generated by `gens` (empty set -> 1)."""
    gens = list(gens)
    if not gens:
        return 1
    return StabilizerChain(gens, n).order


class GenClass(enum.Enum):
    FULL_SYMMETRIC = "FULL_SYMMETRIC"
    ALTERNATING = "ALTERNATING"
    PROPER = "PROPER"


def generation_class(x, y):
    """Classify the subgroup generated by a pair of permutations.

    FULL_SYMMETRIC if <x,y> = S_n, ALTERNATING if <x,y> = A_n,
    PROPER otherwise.  Decided by exact order comparison.
    """
    if x.n != y.n:
        raise DegreeMismatchError(f"degree {x.n} != {y.n}")
    n = x.n
    order = group_order([x, y], n)
    full = math.factorial(n)
    if order == full:
        return GenClass.FULL_SYMMETRIC
    if 2 * order == full and x.is_even() and y.is_even():
        return GenClass.ALTERNATING
    return GenClass.PROPER


def _is_transitive(x, y):
    n = x.n
    a, b = x.images, y.images
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        p = stack.pop()
        for q in (a[p], b[p]):
            if not seen[q]:
                seen[q] = True
                count += 1
                stack.append(q)
    return count == n


def _is_prime(p):
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def _has_giant_prime_cycle(images, n):
    """Does this element have a cycle of prime length p, n/2 < p <= n-3?

    If so, some power of it is a pure p-cycle: the other cycles are all
    shorter than p, so their lcm is coprime to p.  A transitive group
    containing such a cycle is primitive (a block touching the cycle
    would need more than n/2 points) and hence contains A_n by Jordan's
    theorem.
    """
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        p = s
        while not seen[p]:
            seen[p] = True
            p = images[p]
            length += 1
        if n // 2 < length <= n - 3 and _is_prime(length):
            return True
    return False


# fixed bit schedule for the deterministic word walk
_WORD_BITS = 0b1101001100010111101011001101110001011101


def fast_generation_class(x, y, tries=40):
    """Same value as generation_class, usually much faster.

    Decides PROPER immediately for intransitive pairs; certifies
    containment of A_n from a giant prime cycle in a deterministic word
    walk; falls back to the exact stabilizer chain when neither test
    resolves, so the result is always exact.
    """
    if x.n != y.n:
        raise DegreeMismatchError(f"degree {x.n} != {y.n}")
    n = x.n
    if n >= 3 and not _is_transitive(x, y):
        return GenClass.PROPER
    z = x
    for step in range(tries):
        z = z * (x if _WORD_BITS >> (step % 40) & 1 else y)
        if _has_giant_prime_cycle(z.images, n):
            if x.is_even() and y.is_even():
                return GenClass.ALTERNATING
            return GenClass.FULL_SYMMETRIC
    return generation_class(x, y)
