"""Signal-to-distortion ratio and optimal estimate-to-reference assignment."""

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .signals import AudioSignal

DEFAULT_SDR_CAP_DB = 100.0

# Exhaustive search runs while the number of candidate matchings stays small;
# it guarantees the documented lexicographic tie-break. 8x8 (40320 candidates)
# is the largest square case below this limit; bigger problems go through
# scipy's linear-sum-assignment solver, which is equally exact on the optimum.
_EXHAUSTIVE_LIMIT = 50_000


def sdr(
    estimate: AudioSignal,
    reference: AudioSignal,
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> float:
    """Signal-to-distortion ratio of ``estimate`` against ``reference`` in dB.

    Computes ``10 * log10(||reference||^2 / ||estimate - reference||^2)``.
    A perfect estimate has zero error energy, where the ratio diverges; that
    degenerate case returns ``cap_db`` instead.

    Args:
        estimate: the estimated signal.
        reference: the true signal. Must have nonzero energy.
        cap_db: value returned when the error energy is exactly zero.

    Raises:
        ValueError: if the signals differ in length or sample rate, or if the
            reference has zero energy (the ratio is undefined).
    """
    _check_compatible(estimate, reference)
    return _sdr_samples(estimate.samples, reference.samples, cap_db)


def _check_compatible(a: AudioSignal, b: AudioSignal) -> None:
    if a.sample_rate != b.sample_rate:
        raise ValueError(
            f"sample rates differ: {a.sample_rate} Hz vs {b.sample_rate} Hz"
        )
    if len(a) != len(b):
        raise ValueError(f"signal lengths differ: {len(a)} vs {len(b)} samples")


def _sdr_samples(est: np.ndarray, ref: np.ndarray, cap_db: float) -> float:
    ref_energy = float(np.dot(ref, ref))
    if ref_energy == 0.0:
        raise ValueError("reference signal has zero energy; SDR is undefined")
    diff = est - ref
    err_energy = float(np.dot(diff, diff))
    if err_energy == 0.0:
        return float(cap_db)
    return float(10.0 * np.log10(ref_energy / err_energy))


@dataclass(frozen=True, eq=False)
class Assignment:
    """An optimal pairing of estimated sources to reference sources.

    ``pairs`` holds ``(estimate_index, reference_index)`` tuples sorted by
    reference index and forms a partial bijection: when the two sides differ
    in size, the smaller side is fully matched and leftover indices stay
    unmatched. ``sdr_matrix[r, e]`` is the SDR of estimate ``e`` against
    reference ``r``; ``total_sdr_db`` is the sum over the matched pairs, and
    no other complete matching has a strictly greater total.
    """

    pairs: tuple[tuple[int, int], ...]
    sdr_matrix: np.ndarray
    total_sdr_db: float


def best_assignment(
    estimates: Sequence[AudioSignal],
    references: Sequence[AudioSignal],
    cap_db: float = DEFAULT_SDR_CAP_DB,
) -> Assignment:
    """Match estimates to references so the summed pairwise SDR is maximal.

    Ties between equally good matchings are broken toward the lowest
    lexicographic pair sequence, so the identity pairing wins whenever it is
    among the optima (guaranteed on the exhaustive search path, which covers
    every square problem up to 8x8).

    Args:
        estimates: non-empty list of estimated signals.
        references: non-empty list of reference signals.
        cap_db: zero-error SDR cap forwarded to the pairwise SDR.

    Raises:
        ValueError: if either list is empty or any two signals are
            incompatible in length or sample rate.
    """
    if not estimates or not references:
        raise ValueError("estimates and references must both be non-empty")
    all_signals = list(estimates) + list(references)
    for other in all_signals[1:]:
        _check_compatible(all_signals[0], other)

    n_ref, n_est = len(references), len(estimates)
    matrix = np.empty((n_ref, n_est))
    for r, ref in enumerate(references):
        for e, est in enumerate(estimates):
            matrix[r, e] = _sdr_samples(est.samples, ref.samples, cap_db)

    if _n_candidate_matchings(n_ref, n_est) <= _EXHAUSTIVE_LIMIT:
        pairs = _exhaustive_matching(matrix)
    else:
        rows, cols = linear_sum_assignment(matrix, maximize=True)
        pairs = tuple(
            sorted(((int(e), int(r)) for r, e in zip(rows, cols)), key=lambda p: p[1])
        )
    total = float(sum(matrix[r, e] for e, r in pairs))
    return Assignment(pairs=pairs, sdr_matrix=matrix, total_sdr_db=total)


def _n_candidate_matchings(n_ref: int, n_est: int) -> int:
    hi, lo = max(n_ref, n_est), min(n_ref, n_est)
    count = 1
    for i in range(lo):
        count *= hi - i
        if count > _EXHAUSTIVE_LIMIT:
            break
    return count


def _exhaustive_matching(matrix: np.ndarray) -> tuple[tuple[int, int], ...]:
    # Enumeration order is lexicographic over the smaller side's choices, and
    # only strict improvements replace the incumbent, so the first optimum in
    # lexicographic order (identity, when optimal) is the one returned.
    n_ref, n_est = matrix.shape
    rows = matrix.tolist()
    best_total = -np.inf
    best_pairs: tuple[tuple[int, int], ...] = ()
    if n_est >= n_ref:
        for est_for_ref in itertools.permutations(range(n_est), n_ref):
            total = 0.0
            for r in range(n_ref):
                total += rows[r][est_for_ref[r]]
            if total > best_total:
                best_total = total
                best_pairs = tuple((est_for_ref[r], r) for r in range(n_ref))
    else:
        for ref_for_est in itertools.permutations(range(n_ref), n_est):
            total = 0.0
            for e in range(n_est):
                total += rows[ref_for_est[e]][e]
            if total > best_total:
                best_total = total
                best_pairs = tuple(
                    sorted(((e, ref_for_est[e]) for e in range(n_est)), key=lambda p: p[1])
                )
    return best_pairs
