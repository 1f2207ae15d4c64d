"""Permutations of {1..n}.

Points are 1-based in every external format (cycle notation, JSON);
internally images are stored 0-based in a flat tuple.  Permutations are
immutable and hashable, so they can be shared freely across threads.
"""
from __future__ import annotations

import itertools
import math
import re


class DegreeMismatchError(ValueError):
    """Raised when combining permutations of different degrees."""


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        """images[k] = image of point k, 0-based; must be a bijection."""
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images is not a bijection on {1..n}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def n(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_one_line(cls, seq):
        """Build from a 1-based one-line form, e.g. [2, 1, 3]."""
        return cls(x - 1 for x in seq)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from 1-based cycles, e.g. from_cycles(5, [(1, 2, 3), (4, 5)])."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
                if not (1 <= a <= n):
                    raise ValueError(f"point {a} out of range 1..{n}")
                if a in seen:
                    raise ValueError(f"point {a} repeated across cycles")
                seen.add(a)
                images[a - 1] = b - 1
        return cls(images)

    @classmethod
    def parse(cls, text, n):
        """Parse disjoint cycle notation, e.g. "(1 2 3)(4 5)"; "()" is the identity."""
        text = text.strip()
        if text in ("()", ""):
            return cls.identity(n)
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            pts = tuple(int(tok) for tok in body.replace(",", " ").split())
            if pts:
                cycles.append(pts)
        return cls.from_cycles(n, cycles)

    def __mul__(self, other):
        """Composition: (p * q)(x) = p(q(x))."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.n != other.n:
            raise DegreeMismatchError(f"degree {self.n} != {other.n}")
        a, b = self.images, other.images
        return Permutation(a[b[i]] for i in range(len(a)))

    def inverse(self):
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def apply(self, point):
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def cycles(self, include_fixed=False):
        """Disjoint cycles as 1-based tuples, each starting at its minimum,
        sorted by that minimum."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(p + 1 for p in cyc))
        return out

    def cycle_type(self):
        """Multiset of cycle lengths (fixed points included), sorted descending."""
        return tuple(
            sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True)
        )

    def parity(self):
        """'even' or 'odd'; the parity of n minus the number of cycles."""
        ncyc = len(self.cycles(include_fixed=True))
        return "even" if (self.n - ncyc) % 2 == 0 else "odd"

    def is_even(self):
        return self.parity() == "even"

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation.parse({str(self)!r}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images


def all_permutations(n):
    """All elements of S_n in lexicographic image order."""
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


def random_permutation(n, rng):
    """Uniform element of S_n from an explicit random.Random stream."""
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)
