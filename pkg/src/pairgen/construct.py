"""Resampling constructor for pairwise generating sets, plus
independently verifiable certificates.

The constructor picks one uniform element of each C(Delta), then
repeatedly resamples both endpoints of the first bad pair in canonical
order until no pair is bad (the constructive counterpart of the
existence argument).  Each Delta owns an independent RNG stream derived
from the master seed, so a run is reproducible bit-for-bit and a
resample never reads any other Delta's element.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from . import __version__ as _version
from .bounds import lll_certificate
from .cdelta import derive_rng, membership, sample_uniform
from .families import DeltaIndex, catalog, family_size, _require_even
from .perm import Permutation
from .stabchain import GenClass, fast_generation_class, generation_class

CERT_FORMAT = 1


def _pair_ok(cls, i):
    if i == 1:
        return cls is GenClass.FULL_SYMMETRIC
    return cls is not GenClass.PROPER


@dataclass
class ConstructionFailure:
    n: int
    i: int
    master_seed: int
    max_rounds: int
    rounds: int
    residual_bad_pairs: int


def construct(n, i, master_seed, max_rounds=None):
    """Build a pairwise generating set, one element per C(Delta).

    Returns a certificate dict on success, a ConstructionFailure after
    max_rounds resampling rounds otherwise (failure is a value, not an
    exception).  Success below the asymptotic threshold is empirical;
    any returned certificate is unconditionally checkable with verify().
    """
    _require_even(n, minimum=6)
    deltas = sorted(catalog(n, i), key=lambda d: d.key())
    streams = {d: derive_rng(master_seed, d) for d in deltas}
    assignment = {d: sample_uniform(d, streams[d]) for d in deltas}
    if max_rounds is None:
        max_rounds = 1000 * len(deltas)
    pairs = list(itertools.combinations(deltas, 2))
    cls_cache = {}

    def classify(x, y):
        key = (x.images, y.images) if x.images <= y.images else (y.images, x.images)
        out = cls_cache.get(key)
        if out is None:
            out = cls_cache[key] = fast_generation_class(x, y)
        return out

    def first_bad():
        for d1, d2 in pairs:
            if not _pair_ok(classify(assignment[d1], assignment[d2]), i):
                return d1, d2
        return None

    rounds = 0
    while True:
        bad = first_bad()
        if bad is None:
            return _make_certificate(n, i, master_seed, max_rounds, rounds, assignment)
        if rounds >= max_rounds:
            residual = sum(
                1
                for d1, d2 in pairs
                if not _pair_ok(classify(assignment[d1], assignment[d2]), i)
            )
            return ConstructionFailure(n, i, master_seed, max_rounds, rounds, residual)
        rounds += 1
        for d in bad:
            assignment[d] = sample_uniform(d, streams[d])


# -- certificate serialization ---------------------------------------


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def certificate_checksum(cert):
    body = {k: v for k, v in cert.items() if k != "checksum"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def _make_certificate(n, i, master_seed, max_rounds, rounds, assignment):
    cert = {
        "kind": "CONSTRUCTION",
        "version": _version,
        "format": CERT_FORMAT,
        "n": n,
        "i": i,
        "seed": master_seed,
        "max_rounds": max_rounds,
        "rounds": rounds,
        "rng_rule": "per-delta stream seeded by sha256(master_seed|comma-joined delta)",
        "assignment": [
            {"delta": list(d.delta), "g": str(assignment[d])}
            for d in sorted(assignment, key=lambda d: d.key())
        ],
    }
    cert["checksum"] = certificate_checksum(cert)
    return cert


def write_certificate(cert, path):
    with open(path, "w") as fh:
        json.dump(cert, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_certificate(path):
    with open(path) as fh:
        return json.load(fh)


# -- verification ----------------------------------------------------


@dataclass
class VerifyResult:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def verify(cert) -> VerifyResult:
    """Independently re-check a certificate; shares no state with the
    constructor.  Returns the list of violated checks."""
    violations = []
    if "kind" not in cert and isinstance(cert.get("result"), dict):
        cert = cert["result"]  # accept CLI documents wrapping a result
    kind = cert.get("kind")
    if kind == "LLL_THRESHOLD":
        return _verify_lll(cert)
    if kind != "CONSTRUCTION":
        return VerifyResult(False, [f"unknown certificate kind {kind!r}"])

    try:
        n = int(cert["n"])
        i = int(cert["i"])
        entries = cert["assignment"]
    except (KeyError, TypeError, ValueError) as exc:
        return VerifyResult(False, [f"malformed certificate: {exc}"])

    if cert.get("checksum") != certificate_checksum(cert):
        violations.append("checksum mismatch")

    expected = family_size(n, i)
    if len(entries) != expected:
        violations.append(f"expected {expected} elements, found {len(entries)}")

    elements = {}
    for entry in entries:
        delta = tuple(sorted(entry["delta"]))
        try:
            d = DeltaIndex(n, delta, i)
        except ValueError as exc:
            violations.append(f"invalid delta {delta}: {exc}")
            continue
        if d in elements:
            violations.append(f"duplicate delta {delta}")
            continue
        try:
            g = Permutation.parse(entry["g"], n)
        except ValueError as exc:
            violations.append(f"unparseable element for delta {delta}: {exc}")
            continue
        if not membership(g, d):
            violations.append(f"element {g} not in C({delta})")
            continue
        elements[d] = g

    seen = set(catalog(n, i))
    missing = seen - set(elements)
    if missing and len(entries) == expected and not violations:
        violations.append(f"{len(missing)} catalog entries missing")

    ordered = sorted(elements.items(), key=lambda item: item[0].key())
    for (d1, g1), (d2, g2) in itertools.combinations(ordered, 2):
        cls = generation_class(g1, g2)
        if not _pair_ok(cls, i):
            violations.append(
                f"pair {d1.delta} / {d2.delta} classifies as {cls.value}"
            )

    return VerifyResult(not violations, violations)


def _verify_lll(cert):
    violations = []
    try:
        n, i = int(cert["n"]), int(cert["i"])
    except (KeyError, TypeError, ValueError) as exc:
        return VerifyResult(False, [f"malformed certificate: {exc}"])
    fresh = lll_certificate(n, i).to_json_dict()
    for key in ("d", "thresholds", "bounds", "total_log2", "worst_size"):
        if cert.get(key) != fresh.get(key):
            violations.append(f"recomputed {key} differs: {fresh.get(key)!r}")
    return VerifyResult(not violations, violations)
