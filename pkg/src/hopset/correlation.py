"""Hamming correlation, correlation bound, and set-level quality reports.

The Hamming correlation of two equal-length hop sequences u, v at integer
delay d counts positional coincidences under a cyclic shift:

    G(d) = |{ i : u(i) == v((i + d) mod L) }|,  0 <= i < L

All delays are cyclic, so exactly L terms are summed and an auto
correlation peaks at G(0) = L.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import IncompatibleSequenceError
from .mapping import HopSequence, SequenceSet

AUTO = "auto"
CROSS = "cross"


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Hamming correlation counts for every delay 0..L-1 of one pair."""

    values: np.ndarray = field(repr=False)
    kind: str
    pair: tuple = None


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Set-level correlation summary.

    max_hamming is the largest correlation over all cross pairs at any
    delay and all members at nonzero auto delay; peng_fan is the exact
    rational lower bound on that maximum for any set of the same shape.
    """

    max_hamming: int
    peng_fan: Fraction
    histograms: np.ndarray
    no_hit_zone: int
    orthogonal_at_zero: bool


def _check_pair(u: HopSequence, v: HopSequence):
    if u.length != v.length:
        raise IncompatibleSequenceError(
            f"sequence lengths differ: {u.length} vs {v.length}"
        )
    if u.plan != v.plan:
        raise IncompatibleSequenceError("sequences use different frequency plans")


def hamming_correlation(u: HopSequence, v: HopSequence, delay) -> int:
    """Count positions where u coincides with v cyclically shifted by `delay`."""
    _check_pair(u, v)
    d = int(delay) % u.length
    return int(np.count_nonzero(u.hops == np.roll(v.hops, -d)))


def _profile_values(u_arr, v_arr):
    n = len(u_arr)
    doubled = np.concatenate([v_arr, v_arr])
    return np.array(
        [np.count_nonzero(u_arr == doubled[d:d + n]) for d in range(n)],
        dtype=np.int64,
    )


def correlation_profile(u: HopSequence, v: HopSequence, pair=None) -> CorrelationProfile:
    """Hamming correlation at every delay; kind is auto when u and v coincide."""
    _check_pair(u, v)
    values = _profile_values(u.hops, v.hops)
    values.setflags(write=False)
    kind = AUTO if (u is v or np.array_equal(u.hops, v.hops)) else CROSS
    return CorrelationProfile(values=values, kind=kind, pair=pair)


def peng_fan_bound(n_hops, q, M) -> Fraction:
    """Exact lower bound (L*q - M)*L / ((L*q - 1)*M) on the maximum correlation.

    Returned as a Fraction; raises ZeroDivisionError when L*q = 1.
    """
    n_hops, q, M = int(n_hops), int(q), int(M)
    return Fraction((n_hops * q - M) * n_hops, (n_hops * q - 1) * M)


def frequency_histogram(seq: HopSequence) -> np.ndarray:
    """Occurrences of each spot 0..M-1; entries sum to the sequence length."""
    return np.bincount(seq.hops, minlength=seq.plan.M)


def verify_orthogonality(sset: SequenceSet):
    """Zero-delay collision check across all member pairs.

    Returns a list of (u, v, count) for every pair with a nonzero
    correlation at delay 0; an empty list means the set is orthogonal.
    """
    matrix = sset.as_matrix()
    violations = []
    for u in range(sset.q):
        for v in range(u + 1, sset.q):
            count = int(np.count_nonzero(matrix[u] == matrix[v]))
            if count:
                violations.append((u, v, count))
    return violations


def no_hit_zone_width(sset: SequenceSet) -> int:
    """Largest Z such that every cross pair has zero correlation for |delay| <= Z.

    A single-member set has no cross pairs and yields L-1 by convention; a
    set that is not even orthogonal at delay 0 yields the sentinel -1.
    """
    if sset.q == 1:
        return sset.length - 1
    if verify_orthogonality(sset):
        return -1
    matrix = sset.as_matrix()
    doubled = np.concatenate([matrix, matrix], axis=1)
    n = sset.length
    for d in range(1, n):
        for u in range(sset.q):
            for v in range(sset.q):
                if u == v:
                    continue
                if np.count_nonzero(matrix[u] == doubled[v, d:d + n]):
                    return d - 1
    return n - 1


def pairwise_profiles(sset: SequenceSet):
    """Profiles for every member pair u <= v, autos included, in index order."""
    matrix = sset.as_matrix()
    profiles = []
    for u in range(sset.q):
        for v in range(u, sset.q):
            values = _profile_values(matrix[u], matrix[v])
            values.setflags(write=False)
            profiles.append(CorrelationProfile(
                values=values,
                kind=AUTO if u == v else CROSS,
                pair=(u, v),
            ))
    return profiles


def analyze_set(sset: SequenceSet, profiles=None) -> AnalysisReport:
    """Full correlation survey of a set: peak sidelobes, bound, histograms.

    Computes every pairwise profile (cost grows with q^2 * L^2) unless a
    precomputed list from pairwise_profiles is passed in.
    """
    matrix = sset.as_matrix()
    q, n = matrix.shape
    histograms = np.array([np.bincount(row, minlength=sset.plan.M) for row in matrix])
    if profiles is None:
        profiles = pairwise_profiles(sset)

    max_hamming = 0
    orthogonal = True
    zone = n - 1
    for profile in profiles:
        if profile.kind == AUTO:
            if n > 1:
                max_hamming = max(max_hamming, int(profile.values[1:].max()))
            continue
        max_hamming = max(max_hamming, int(profile.values.max()))
        if profile.values[0]:
            orthogonal = False
        # a hit at cyclic delay d is also a hit at -(n-d)
        for d in np.nonzero(profile.values)[0]:
            d = int(d)
            zone = min(zone, -1 if d == 0 else min(d, n - d) - 1)

    if q == 1:
        zone = n - 1
    return AnalysisReport(
        max_hamming=max_hamming,
        peng_fan=peng_fan_bound(n, q, sset.plan.M),
        histograms=histograms,
        no_hit_zone=zone,
        orthogonal_at_zero=orthogonal,
    )
