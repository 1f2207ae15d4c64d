"""Numeric certificate for the local-lemma condition.

Every bound here is an explicit ratio of factorials: the asymptotic
"n^O(1)" slack of the source estimates is replaced by concrete counting
prefactors (documented at each site) so the bounds can be evaluated.
Arithmetic is exact rational up to EXACT_N_CAP and log2-domain with
outward rounding beyond, so a reported bound is always valid in the
claimed direction.

Per-class event bounds for a vertex {Delta1, Delta2}, by family j:

  j=1 intransitive outside the main family: probability 0;
  j=2 primitive: class count <= n, conjugate count <= n^2, and the 4^n
      order bound over the universal |C(Delta)| lower bound;
  j=3 three blocks and j=4 four blocks: class count 1, conjugate count
      <= n^2, and the enumeration-validated alternation bounds on
      f_Delta(W);
  j=4 with two half-sets: at most one member meets both C(Delta) sets,
      so the product of the two fractions applies instead;
  j=5 at least five blocks: <= 2 sqrt(n) classes, conjugate count
      <= n^2, wreath order over the |C(Delta)| lower bound.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .families import (
    catalog,
    equal_partitions,
    family_size,
    h5_class_count,
    _require_even,
)

EXACT_N_CAP = 64
LN2 = math.log(2)
LOG2E_UP = 1.4426950408889636  # >= log2(e)
# rational upper bound on e, for exact comparisons against 1/(e(d+1))
E_UP = Fraction(27182818284590453, 10**16)

_SLACK_REL = 1e-12
_SLACK_ABS = 1e-9


def _up(x):
    if math.isinf(x):
        return x
    return x + abs(x) * _SLACK_REL + _SLACK_ABS


def _dn(x):
    if math.isinf(x):
        return x
    return x - abs(x) * _SLACK_REL - _SLACK_ABS


def log2_factorial_up(m):
    return _up(math.lgamma(m + 1) / LN2)


def log2_factorial_dn(m):
    return _dn(math.lgamma(m + 1) / LN2)


def log2_int_up(k):
    return _up(math.log2(k))


def log2_fraction_up(fr: Fraction):
    if fr == 0:
        return -math.inf
    return _up(math.log2(fr.numerator) - math.log2(fr.denominator))


@dataclass(frozen=True)
class BoundValue:
    """An upper bound, exact and/or as a rounded-up log2 value."""

    log2_up: float
    exact: Fraction | None
    provenance: str

    def __post_init__(self):
        if self.exact is not None:
            assert self.log2_up >= log2_fraction_up(self.exact) - 1e-6

    @property
    def is_zero(self):
        return self.log2_up == -math.inf


def _zero(provenance):
    return BoundValue(-math.inf, Fraction(0), provenance)


def admissible_sizes(n, i):
    """Delta sizes occurring in family i."""
    if i == 1:
        return [n // 2]
    return [n // 2] + list(range(1, n // 2, 2))


def cdelta_lower_bound(n):
    """(2/n)^2 ((n/2)!)^2, valid for every Delta in either family."""
    return Fraction(4 * math.factorial(n // 2) ** 2, n * n)


@functools.lru_cache(maxsize=None)
def _cdelta_lower_bound_log2_dn(n):
    return _dn(2 + 2 * log2_factorial_dn(n // 2) - 2 * math.log2(n))


def _half_size(n):
    """|C(Delta)| for a half-set: (2/n)((n/2)!)^2."""
    return Fraction(2 * math.factorial(n // 2) ** 2, n)


# -- per-size fraction bounds for 3- and 4-block stabilizers ---------
#
# An n-cycle inside an m-block stabilizer must cycle the blocks, and the
# alternation against Delta refines the blocks into equal parts the
# cycle visits periodically; the element is then determined by part
# bijections, all but one free and the last constrained to close a
# single cycle.  That yields the counting prefactors below.


def f3_bound(n, s):
    """max over 3-block stabilizers W of f_Delta(W), |Delta| = s."""
    f = math.factorial
    if n % 3 != 0:
        return Fraction(0)
    if s == n // 2:
        if n % 6 != 0:
            return Fraction(0)
        k = n // 6
        # 2 block orders, 6 part bijections of size n/6, one constrained
        return Fraction(2 * f(k) ** 5 * f(k - 1)) / _half_size(n)
    if s % 3 != 0:
        return Fraction(0)
    a3, b3 = s // 3, (n - s) // 3
    num = 2 * f(a3) ** 2 * f(a3 - 1) * f(b3) ** 2 * f(b3 - 1)
    return Fraction(num, f(s - 1) * f(n - s - 1))


def f4_bound(n, s):
    """max over 4-block stabilizers W of f_Delta(W), |Delta| = s."""
    f = math.factorial
    if n % 4 != 0:
        return Fraction(0)
    k = n // 4
    if s == n // 2:
        # 6 block 4-cycles, 4 block bijections, one constrained
        return Fraction(6 * f(k) ** 3 * f(k - 1)) / _half_size(n)
    if s != k:
        return Fraction(0)
    # Delta is one block; the (n-s)-cycle 3-cycles the other blocks
    return Fraction(2 * f(k) ** 2 * f(k - 1), f(3 * k - 1))


@functools.lru_cache(maxsize=None)
def max_h5_order(n):
    """Largest wreath order d!^m m! over m >= 5 blocks, 0 if none."""
    orders = [
        math.factorial(n // m) ** m * math.factorial(m)
        for m in range(5, n)
        if n % m == 0 and n // m >= 2
    ]
    return max(orders, default=0)


# -- log2-domain mirrors (rounded up) --------------------------------


def _f3_bound_log2(n, s):
    lf = log2_factorial_up
    if n % 3 != 0:
        return -math.inf
    if s == n // 2:
        if n % 6 != 0:
            return -math.inf
        k = n // 6
        num = 1 + 5 * lf(k) + lf(k - 1)
        den = 1 + 2 * log2_factorial_dn(n // 2) - math.log2(n)
        return _up(num - den)
    if s % 3 != 0:
        return -math.inf
    a3, b3 = s // 3, (n - s) // 3
    num = 1 + 2 * lf(a3) + lf(a3 - 1) + 2 * lf(b3) + lf(b3 - 1)
    den = log2_factorial_dn(s - 1) + log2_factorial_dn(n - s - 1)
    return _up(num - den)


def _f4_bound_log2(n, s):
    lf = log2_factorial_up
    if n % 4 != 0:
        return -math.inf
    k = n // 4
    if s == n // 2:
        num = math.log2(6) + 3 * lf(k) + lf(k - 1)
        den = 1 + 2 * log2_factorial_dn(n // 2) - math.log2(n)
        return _up(num - den)
    if s != k:
        return -math.inf
    return _up(1 + 2 * lf(k) + lf(k - 1) - log2_factorial_dn(3 * k - 1))


@functools.lru_cache(maxsize=None)
def _max_h5_order_log2(n):
    vals = [
        _up(m * log2_factorial_up(n // m) + log2_factorial_up(m))
        for m in range(5, n)
        if n % m == 0 and n // m >= 2
    ]
    return max(vals, default=-math.inf)


# -- event bounds ----------------------------------------------------


def event_bound(n, i, j, delta_sizes):
    """Rigorous upper bound on P(E_v^j) for any vertex with the given
    pair of Delta sizes."""
    _require_even(n)
    sizes = admissible_sizes(n, i)
    s1, s2 = delta_sizes
    if s1 not in sizes or s2 not in sizes:
        raise ValueError(f"sizes {delta_sizes} not admissible for family {i}")
    if j not in (1, 2, 3, 4, 5):
        raise ValueError("j must be in 1..5")
    exact = n <= EXACT_N_CAP
    half = n // 2

    if j == 1:
        return _zero("j=1: no intransitive subgroup outside the family applies")

    if j == 2:
        prov = "j=2: c2<=n (CFSG), m<=n^2, |H|<=4^n over the |C| lower bound"
        log2v = _up(
            3 * log2_int_up(n) + 2 * n - _cdelta_lower_bound_log2_dn(n)
        )
        ex = n**3 * 4**n / cdelta_lower_bound(n) if exact else None
        return BoundValue(log2v, ex, prov)

    if j == 3:
        prov = "j=3: single class, m<=n^2, alternation bound on f"
        log2v = _up(
            2 * log2_int_up(n) + min(_f3_bound_log2(n, s1), _f3_bound_log2(n, s2))
        )
        ex = n**2 * min(f3_bound(n, s1), f3_bound(n, s2)) if exact else None
        if log2v == -math.inf:
            return _zero(prov + " (family empty or f vanishes)")
        return BoundValue(log2v, ex, prov)

    if j == 4:
        if (s1, s2) == (half, half):
            prov = "j=4 half-set pair: s4<=1, product of the two fractions"
            log2v = _up(2 * _f4_bound_log2(n, half))
            ex = f4_bound(n, half) ** 2 if exact else None
        else:
            prov = "j=4: single class, m<=n^2, block bound on f"
            # with mixed sizes the fraction is taken at an odd-size Delta
            cand = [s for s in (s1, s2) if s != half] or [s1, s2]
            log2v = _up(
                2 * log2_int_up(n) + min(_f4_bound_log2(n, s) for s in cand)
            )
            ex = n**2 * min(f4_bound(n, s) for s in cand) if exact else None
        if log2v == -math.inf:
            return _zero(prov + " (family empty or f vanishes)")
        return BoundValue(log2v, ex, prov)

    # j == 5
    prov = "j=5: c5<=2 sqrt(n) classes, m<=n^2, wreath order over |C| bound"
    c5 = h5_class_count(n)
    if c5 == 0:
        return _zero(prov + " (no >=5-block subgroups)")
    log2v = _up(
        log2_int_up(c5)
        + 2 * log2_int_up(n)
        + _max_h5_order_log2(n)
        - _cdelta_lower_bound_log2_dn(n)
    )
    ex = c5 * n**2 * max_h5_order(n) / cdelta_lower_bound(n) if exact else None
    return BoundValue(log2v, ex, prov)


def event_bound_total(n, i, delta_sizes):
    """Sum over j of event_bound, as a BoundValue."""
    bounds = [event_bound(n, i, j, delta_sizes) for j in (1, 2, 3, 4, 5)]
    log2v = _sum_log2_up(b.log2_up for b in bounds)
    exact = None
    if all(b.exact is not None for b in bounds):
        exact = sum(b.exact for b in bounds)
    return BoundValue(log2v, exact, "sum over j of the per-class bounds")


def _sum_log2_up(log_values):
    vals = [v for v in log_values if v != -math.inf]
    if not vals:
        return -math.inf
    m = max(vals)
    return _up(m + math.log2(sum(2 ** (v - m) for v in vals)))


# -- the certificate -------------------------------------------------


@dataclass
class LLLReport:
    n: int
    i: int
    d: int
    bounds_log2: dict  # j -> worst-case log2 bound over admissible sizes
    total_log2: float
    total_exact: Fraction | None
    worst_size: int
    two_pow_ok: bool
    lll_ok: bool
    assumptions: tuple = ("c2<=n via CFSG, asserted for large n only",)

    def to_json_dict(self):
        def enc(v):
            return None if v == -math.inf else v

        return {
            "kind": "LLL_THRESHOLD",
            "n": self.n,
            "i": self.i,
            "d": str(self.d),
            "bounds": {str(j): enc(v) for j, v in self.bounds_log2.items()},
            "total_log2": enc(self.total_log2),
            "worst_size": self.worst_size,
            "thresholds": {"two_pow": self.two_pow_ok, "lll": self.lll_ok},
            "assumptions": list(self.assumptions),
        }


def dependency_valency(n, i):
    """Valency of the dependency graph on pairs of family indices."""
    return 2 * (family_size(n, i) - 2)


def lll_certificate(n, i):
    """Evaluate the worst event bound and compare it against both the
    2^-(n+3) target and the local-lemma threshold 1/(e(d+1))."""
    _require_even(n, minimum=6)
    sizes = admissible_sizes(n, i)
    # the maximum over all size pairs is attained on a diagonal pair
    by_size = {
        s: [event_bound(n, i, j, (s, s)) for j in (1, 2, 3, 4, 5)] for s in sizes
    }
    totals = {}
    for s, bs in by_size.items():
        log2v = _sum_log2_up(b.log2_up for b in bs)
        ex = sum(b.exact for b in bs) if all(b.exact is not None for b in bs) else None
        totals[s] = BoundValue(log2v, ex, "sum over j of the per-class bounds")
    worst_size = max(sizes, key=lambda s: totals[s].log2_up)
    total = totals[worst_size]
    per_j = {
        j: max(by_size[s][j - 1].log2_up for s in sizes) for j in (1, 2, 3, 4, 5)
    }
    d = dependency_valency(n, i)

    if total.exact is not None:
        two_pow_ok = total.exact <= Fraction(1, 2 ** (n + 3))
        lll_ok = total.exact * E_UP * (d + 1) <= 1
    else:
        two_pow_ok = total.log2_up <= -(n + 3)
        lll_ok = total.log2_up <= -(LOG2E_UP + log2_int_up(d + 1))
    return LLLReport(
        n=n,
        i=i,
        d=d,
        bounds_log2=per_j,
        total_log2=total.log2_up,
        total_exact=total.exact,
        worst_size=worst_size,
        two_pow_ok=two_pow_ok,
        lll_ok=lll_ok,
    )


def sanity_two_pow_below_lll(n, i):
    """2^-(n+3) <= 1/(e(d+1)), exactly (via a rational bound on e)."""
    d = dependency_valency(n, i)
    return E_UP.numerator * (d + 1) <= E_UP.denominator * 2 ** (n + 3)


def lll_sweep(i, n_min=6, n_max=2000):
    """Certificates for every even n in range; returns {n: LLLReport}."""
    return {n: lll_certificate(n, i) for n in range(n_min, n_max + 1, 2)}


def lll_threshold(i, n_min=6, n_max=2000):
    """(first_pass, stable_threshold): the first even n whose certificate
    holds, and the least even n from which it holds for every even n up
    to n_max.  Either may be None if nothing passes."""
    sweep = lll_sweep(i, n_min, n_max)
    ns = sorted(sweep)
    first_pass = next((n for n in ns if sweep[n].lll_ok), None)
    stable = None
    for n in reversed(ns):
        if sweep[n].lll_ok:
            stable = n
        else:
            break
    return first_pass, stable


# -- exhaustive event probabilities (small-n soundness oracle) -------


def h_descriptors(n, j):
    """Materialized members of H_j (imprimitive classes only)."""
    if j == 3:
        return list(equal_partitions(n, 3)) if n % 3 == 0 and n // 3 >= 2 else []
    if j == 4:
        return list(equal_partitions(n, 4)) if n % 4 == 0 and n // 4 >= 2 else []
    if j == 5:
        out = []
        for m in range(5, n):
            if n % m == 0 and n // m >= 2:
                out.extend(equal_partitions(n, m))
        return out
    raise ValueError("only H_3, H_4, H_5 are materialized")


def exhaustive_event_probability(n, i, j, d1, d2):
    """Exact P(E_v^j) for the vertex {d1, d2}: the probability that an
    independent uniform pair from C(d1) x C(d2) lies in a common member
    of H_j.  Full enumeration; for the bound-soundness check at n <= 10.
    """
    from .cdelta import enumerate_cdelta

    descriptors = h_descriptors(n, j)
    if not descriptors:
        return Fraction(0)

    def signature_counts(d):
        counts = {}
        total = 0
        for g in enumerate_cdelta(d):
            total += 1
            sig = frozenset(
                k for k, w in enumerate(descriptors) if w.contains(g)
            )
            counts[sig] = counts.get(sig, 0) + 1
        return counts, total

    c1, t1 = signature_counts(d1)
    c2, t2 = signature_counts(d2)
    hits = sum(
        m1 * m2
        for s1, m1 in c1.items()
        if s1
        for s2, m2 in c2.items()
        if s1 & s2
    )
    return Fraction(hits, t1 * t2)
