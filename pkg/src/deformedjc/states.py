"""Initial field states as truncated Fock-amplitude vectors.

Amplitudes are built from their term ratios accumulated in log space, so no
factorial is ever formed and nothing overflows for large photon numbers.
Every constructor measures the probability mass lost to truncation, refuses
to build a state whose tail exceeds ``tail_tol`` and renormalises the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TAIL_TOL = 1e-12
FAMILIES = ("coherent", "squeezed_vacuum", "pair_coherent", "two_mode_squeezed_vacuum")


class TruncationError(ValueError):
    """The requested cutoff drops more probability than allowed."""


@dataclass(frozen=True)
class FockVector:
    """Single-mode amplitudes c_n for n = 0..n_max."""

    amplitudes: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-D array")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class PairedFockVector(FockVector):
    """Two-mode state on the paired basis: entry n is the amplitude of |n, n>."""


def _log_abs_cumulative(log_first: float, log_ratios: np.ndarray) -> np.ndarray:
    out = np.empty(log_ratios.size + 1)
    out[0] = log_first
    np.cumsum(log_ratios, out=out[1:])
    out[1:] += log_first
    return out


def _finish(cls, amps: np.ndarray, tail: float, tail_tol: float, what: str):
    if tail > tail_tol:
        raise TruncationError(
            f"{what}: n_max={amps.size - 1} leaves tail mass {tail:.3e} > {tail_tol:.1e}"
        )
    norm = np.sqrt(np.sum(np.abs(amps) ** 2))
    return cls(amps / norm, tail_mass=max(tail, 0.0))


def _check_nmax(n_max: int) -> int:
    if int(n_max) != n_max or n_max < 0:
        raise ValueError(f"n_max must be a nonnegative integer, got {n_max!r}")
    return int(n_max)


def coherent(alpha: complex, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """|alpha> with c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    n_max = _check_nmax(n_max)
    alpha = complex(alpha)
    mod = abs(alpha)
    amps = np.zeros(n_max + 1, dtype=complex)
    if mod == 0.0:
        amps[0] = 1.0
        return FockVector(amps)
    n = np.arange(1, n_max + 1)
    # c_n / c_{n-1} = alpha / sqrt(n)
    logs = _log_abs_cumulative(-0.5 * mod**2, math.log(mod) - 0.5 * np.log(n))
    phase = np.exp(1j * np.angle(alpha) * np.arange(n_max + 1))
    amps = np.exp(logs) * phase
    tail = 1.0 - float(np.sum(np.exp(2.0 * logs)))
    return _finish(FockVector, amps, tail, tail_tol, "coherent state")


def squeezed_vacuum(r: float, theta: float = 0.0, n_max: int = 2,
                    tail_tol: float = DEFAULT_TAIL_TOL) -> FockVector:
    """Single-mode squeezed vacuum; only even photon numbers are populated."""
    n_max = _check_nmax(n_max)
    if r < 0:
        raise ValueError("squeeze parameter r must be nonnegative")
    amps = np.zeros(n_max + 1, dtype=complex)
    if r == 0.0:
        amps[0] = 1.0
        return FockVector(amps)
    t = math.tanh(r)
    lmax = n_max // 2
    l = np.arange(1, lmax + 1)
    # |c_{2l} / c_{2l-2}| = tanh(r) sqrt((2l - 1) / (2l))
    logs = _log_abs_cumulative(-0.5 * math.log(math.cosh(r)),
                               math.log(t) + 0.5 * (np.log(2 * l - 1) - np.log(2 * l)))
    ls = np.arange(lmax + 1)
    phase = (-1.0) ** ls * np.exp(1j * theta * ls)
    amps[0::2] = np.exp(logs) * phase
    tail = 1.0 - float(np.sum(np.exp(2.0 * logs)))
    return _finish(FockVector, amps, tail, tail_tol, "squeezed vacuum")


def _log_bessel_i0_series(x2: float) -> float:
    """log I0(2x) from sum_n x^(2n) / (n!)^2, with x2 = x^2, summed to convergence."""
    if x2 == 0.0:
        return 0.0
    terms = [0.0]
    peak = 0.0
    n = 0
    lx2 = math.log(x2)
    while True:
        n += 1
        terms.append(terms[-1] + lx2 - 2.0 * math.log(n))
        peak = max(peak, terms[-1])
        if n * n > x2 and terms[-1] < peak - 80.0:
            break
    t = np.array(terms)
    m = t.max()
    return m + math.log(np.sum(np.exp(t - m)))


def pair_coherent(zeta: complex, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> PairedFockVector:
    """Pair coherent state, c_n = N0 zeta^n / n! with N0 = I0(2|zeta|)^(-1/2)."""
    n_max = _check_nmax(n_max)
    zeta = complex(zeta)
    mod = abs(zeta)
    amps = np.zeros(n_max + 1, dtype=complex)
    if mod == 0.0:
        amps[0] = 1.0
        return PairedFockVector(amps)
    log_i0 = _log_bessel_i0_series(mod**2)
    n = np.arange(1, n_max + 1)
    logs = _log_abs_cumulative(-0.5 * log_i0, math.log(mod) - np.log(n))
    amps = np.exp(logs) * np.exp(1j * np.angle(zeta) * np.arange(n_max + 1))
    tail = 1.0 - float(np.sum(np.exp(2.0 * logs)))
    return _finish(PairedFockVector, amps, tail, tail_tol, "pair coherent state")


def two_mode_squeezed_vacuum(r: float, n_max: int,
                             tail_tol: float = DEFAULT_TAIL_TOL) -> PairedFockVector:
    """Two-mode squeezed vacuum sqrt(1 - mu^2) sum mu^n |n, n> with mu = tanh(r)."""
    n_max = _check_nmax(n_max)
    if r < 0:
        raise ValueError("squeeze parameter r must be nonnegative")
    amps = np.zeros(n_max + 1, dtype=complex)
    if r == 0.0:
        amps[0] = 1.0
        return PairedFockVector(amps)
    mu = math.tanh(r)
    n = np.arange(n_max + 1)
    amps = math.sqrt(1.0 - mu * mu) * mu**n + 0j
    tail = mu ** (2 * (n_max + 1))
    return _finish(PairedFockVector, amps, tail, tail_tol, "two-mode squeezed vacuum")


def mean_photon_number(state: FockVector) -> float:
    """Mean photon number; for paired states the total over both modes."""
    p = np.abs(state.amplitudes) ** 2
    n = np.arange(p.size)
    factor = 2.0 if isinstance(state, PairedFockVector) else 1.0
    return float(factor * np.sum(n * p) / np.sum(p))


# --- truncation -----------------------------------------------------------

def amplitude_for_mean(family: str, mean: float) -> float:
    """Real amplitude parameter of ``family`` whose (total) mean photon number is ``mean``."""
    if mean < 0:
        raise ValueError("mean photon number must be nonnegative")
    if family == "coherent":
        return math.sqrt(mean)
    if family == "squeezed_vacuum":
        return math.asinh(math.sqrt(mean))
    if family == "two_mode_squeezed_vacuum":
        return math.asinh(math.sqrt(mean / 2.0))
    if family == "pair_coherent":
        if mean == 0:
            return 0.0
        lo, hi = 0.0, max(1.0, mean)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _pc_total_mean(mid) < mean:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)
    raise ValueError(f"unknown state family {family!r}")


def _pc_total_mean(zeta: float) -> float:
    lp = _log_probabilities("pair_coherent", zeta)
    p = np.exp(lp - lp.max())
    return float(2.0 * np.sum(np.arange(p.size) * p) / np.sum(p))


def _log_probabilities(family: str, amp: float) -> np.ndarray:
    """log |c_n|^2 out to where the distribution is negligible (< 1e-40 of the peak)."""
    chunk = 256
    n_top = chunk
    while True:
        n = np.arange(1, n_top + 1)
        if family == "coherent":
            if amp == 0:
                return np.array([0.0])
            lp = _log_abs_cumulative(-amp * amp, 2 * math.log(amp) - np.log(n))
        elif family == "squeezed_vacuum":
            if amp == 0:
                return np.array([0.0])
            t = math.tanh(amp)
            half = _log_abs_cumulative(-math.log(math.cosh(amp)),
                                       2 * math.log(t) + np.log(2 * n - 1) - np.log(2 * n))
            lp = np.full(2 * n_top + 1, -np.inf)
            lp[0::2] = half
        elif family == "pair_coherent":
            if amp == 0:
                return np.array([0.0])
            lp = _log_abs_cumulative(-_log_bessel_i0_series(amp * amp),
                                     2 * math.log(amp) - 2 * np.log(n))
        elif family == "two_mode_squeezed_vacuum":
            if amp == 0:
                return np.array([0.0])
            mu = math.tanh(amp)
            lp = math.log(1 - mu * mu) + 2 * math.log(mu) * np.arange(n_top + 1)
        else:
            raise ValueError(f"unknown state family {family!r}")
        finite = lp[np.isfinite(lp)]
        if finite[-1] < finite.max() - 92.0 and np.argmax(finite) < finite.size - 1:
            return lp
        n_top *= 2


def tail_masses(family: str, mean: float) -> np.ndarray:
    """Entry N is the probability beyond photon (pair) number N for ``family`` at ``mean``."""
    lp = _log_probabilities(family, amplitude_for_mean(family, mean))
    p = np.exp(lp)
    return np.concatenate([np.cumsum(p[::-1])[::-1][1:], [0.0]])


def auto_truncation(target_mean: float, tail_tol: float = DEFAULT_TAIL_TOL,
                    family: str | None = None) -> int:
    """Smallest cutoff ``mean + c sqrt(mean) + 16`` (c = 0, 1, ...) with tail below ``tail_tol``.

    With ``family=None`` the cutoff must hold for all four families; the
    squeezed vacuum has a geometric tail and dominates by far at large means.
    """
    if target_mean < 0 or not (0.0 < tail_tol < 1.0):
        raise ValueError("need target_mean >= 0 and 0 < tail_tol < 1")
    families = FAMILIES if family is None else (family,)
    tails = [tail_masses(f, target_mean) for f in families]
    root = math.sqrt(target_mean)
    c = 0
    while True:
        n_max = int(math.ceil(target_mean + c * root)) + 16
        if all(n_max >= t.size - 1 or t[n_max] < tail_tol for t in tails):
            return n_max
        c += 1
