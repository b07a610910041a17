"""RMS, relative error, amplitude spectra and stick-slip validity."""

import numpy as np
from scipy.signal import find_peaks

from friction_pinn.models.mechanics import Regime
from friction_pinn.models.trajectory import Trajectory

CHATTER_STEPS = 5
PEAK_FRACTION = 0.05
FORWARD_SLIP = 3


class MetricError(Exception):
    """Raised when a metric is undefined for its input."""

    pass


def rms(series: np.ndarray | list[float]) -> float:
    """
    Root mean square of a series.

    Example:
        >>> round(rms([3.0, 4.0]) ** 2, 6)
        12.5
    """
    values = np.asarray(series, dtype=float).ravel()
    if values.size == 0:
        raise MetricError("rms of an empty series")
    return float(np.sqrt(np.mean(values**2)))


def relative_error(value: float, reference: float) -> float:
    """
    ``100 |value - reference| / |reference|`` in percent.

    Example:
        >>> round(relative_error(1716.0, 1790.0), 2)
        4.13
    """
    if reference == 0:
        raise MetricError("relative error against a zero reference")
    return 100.0 * abs(value - reference) / abs(reference)


def spectrum(series: np.ndarray | list[float], dt: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Single-sided amplitude spectrum of a uniformly sampled series.

    The mean is removed first and no window is applied.

    Returns:
        ``(frequencies in Hz, amplitudes)``
    """
    values = np.asarray(series, dtype=float).ravel()
    if values.size < 2:
        raise MetricError("spectrum needs at least two samples")
    if dt <= 0:
        raise MetricError("spectrum needs a positive sample spacing")
    values = values - values.mean()
    amplitudes = 2.0 * np.abs(np.fft.rfft(values)) / values.size
    amplitudes[0] /= 2.0
    return np.fft.rfftfreq(values.size, d=dt), amplitudes


def peaks(
    frequencies: np.ndarray, amplitudes: np.ndarray, fraction: float = PEAK_FRACTION
) -> list[tuple[float, float]]:
    """Local maxima above ``fraction`` of the largest amplitude, strongest first."""
    if amplitudes.size == 0 or np.max(amplitudes) <= 0:
        return []
    index, _ = find_peaks(amplitudes, height=fraction * float(np.max(amplitudes)))
    ranked = sorted(index, key=lambda i: -amplitudes[i])
    return [(float(frequencies[i]), float(amplitudes[i])) for i in ranked]


def regime_runs(codes: np.ndarray, min_steps: int = CHATTER_STEPS) -> list[int]:
    """
    Sequence of regime kinds after merging short runs.

    Runs shorter than ``min_steps`` samples are absorbed into the preceding
    run (or the following one at the start); neighbouring runs of the same
    kind are then joined.
    """
    runs: list[list[int]] = []
    for code in np.asarray(codes, dtype=int):
        if runs and runs[-1][0] == code:
            runs[-1][1] += 1
        else:
            runs.append([int(code), 1])

    merged: list[list[int]] = []
    for code, length in runs:
        if length < min_steps and merged:
            merged[-1][1] += length
        elif merged and merged[-1][0] == code:
            merged[-1][1] += length
        else:
            merged.append([code, length])
    if len(merged) > 1 and merged[0][1] < min_steps:
        merged[1][1] += merged.pop(0)[1]
    return [code for code, _ in merged]


def transition_codes(trajectory: Trajectory) -> np.ndarray:
    """
    Regime codes with slip split by direction.

    Slip with ``gamma_T > 0`` gets ``FORWARD_SLIP``, so a reversal of the
    slip direction counts as a transition.
    """
    codes = trajectory.regimes.copy()
    gamma_t = np.array([s.gamma_t for s in trajectory.states])
    codes[(codes == int(Regime.SLIP)) & (gamma_t > 0)] = FORWARD_SLIP
    return codes


def _sequences_match(a: list[int], b: list[int]) -> bool:
    if a == b:
        return True
    shorter, longer = sorted((a, b), key=len)
    return len(longer) == len(shorter) + 1 and longer[: len(shorter)] == shorter


def validity_check(
    trajectory: Trajectory, oracle: Trajectory, min_steps: int = CHATTER_STEPS
) -> bool:
    """
    Whether a trajectory reproduces the oracle's sequence of regime kinds.

    Each contact's :func:`transition_codes` are reduced with
    :func:`regime_runs`, using the same physical chatter duration on both
    grids. A single extra or missing final run is tolerated; it stands for a
    transition within a step of the horizon.
    """
    ours, theirs = transition_codes(trajectory), transition_codes(oracle)
    if ours.shape[1] != theirs.shape[1]:
        raise MetricError("trajectories have different contact counts")
    oracle_steps = max(1, int(round(min_steps * trajectory.dt / oracle.dt)))
    return all(
        _sequences_match(
            regime_runs(ours[:, k], min_steps), regime_runs(theirs[:, k], oracle_steps)
        )
        for k in range(ours.shape[1])
    )
