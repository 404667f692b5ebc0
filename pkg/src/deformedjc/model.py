"""Model parameters and scalar spectral quantities.

The deformed creation operator is K^dag = a^dag sqrt(1 + k a^dag a), so the
Kerr strength is chi = k * omega and k = 0 recovers the ordinary
Jaynes-Cummings model.  All functions accept integer photon numbers or
integer arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _check_common(lam: float, k: float) -> None:
    if not (0.0 <= k <= 1.0):
        raise ValueError(f"deformation k must lie in [0, 1], got {k!r}")
    if not lam > 0.0:
        raise ValueError(f"coupling lambda must be positive, got {lam!r}")


@dataclass(frozen=True)
class SingleModeParams:
    """Single-mode model.  ``delta`` is nu - omega; nu is derived from it."""

    lam: float
    k: float = 0.0
    delta: float = 0.0
    omega: float = 1.0

    def __post_init__(self) -> None:
        _check_common(self.lam, self.k)
        if not self.omega > 0.0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")

    @property
    def nu(self) -> float:
        return self.delta + self.omega

    @property
    def chi(self) -> float:
        return self.k * self.omega


@dataclass(frozen=True)
class TwoModeParams:
    """Two-mode model with a shared deformation k1 = k2 = k.

    ``delta`` is nu - (omega1 + omega2).  The defaults omega1 = omega2 = 0.5
    put the total field frequency at 1.
    """

    lam: float
    k: float = 0.0
    delta: float = 0.0
    omega1: float = 0.5
    omega2: float = 0.5

    def __post_init__(self) -> None:
        _check_common(self.lam, self.k)
        if not (self.omega1 > 0.0 and self.omega2 > 0.0):
            raise ValueError("mode frequencies must be positive")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")

    @property
    def omega_total(self) -> float:
        return self.omega1 + self.omega2

    @property
    def nu(self) -> float:
        return self.delta + self.omega_total


@dataclass(frozen=True)
class SpectralPoint:
    n: int
    eta: float
    delta_n: float
    omega_n: float


def _photon_number(n):
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("photon number must be nonnegative")
    return n.astype(float)


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


# --- single mode ----------------------------------------------------------

def eta_single(n, k: float):
    """<n+1, g| K^dag sigma_- |e, n> = sqrt((1 + n)(1 + k n))."""
    n = _photon_number(n)
    return _scalar(np.sqrt((1.0 + n) * (1.0 + k * n)))


def detuning_single(n, params: SingleModeParams):
    n = _photon_number(n)
    return _scalar(params.delta - 2.0 * params.k * params.omega * n)


def rabi_single(n, params: SingleModeParams):
    d = detuning_single(n, params)
    e = eta_single(n, params.k)
    return _scalar(np.hypot(d, 2.0 * params.lam * np.asarray(e)))


def spectral_point_single(n: int, params: SingleModeParams) -> SpectralPoint:
    return SpectralPoint(int(n), eta_single(n, params.k), detuning_single(n, params), rabi_single(n, params))


def _require_deformed(k: float) -> None:
    if k == 0.0:
        raise ValueError(
            "critical detuning needs k > 0: without deformation the Rabi "
            "frequency has no minimum in the photon number"
        )


def critical_detuning_single(n_bar: float, params: SingleModeParams) -> float:
    """Detuning at which the Rabi-frequency minimum sits at photon number ``n_bar``.

    ``params.delta`` is ignored.
    """
    k, lam, w = params.k, params.lam, params.omega
    _require_deformed(k)
    return (n_bar * 2.0 * k * w * (k + lam**2) + lam**2 * w**2 * (1.0 + k)) / k


def n_bar_single(delta: float, params: SingleModeParams) -> float:
    """Photon number of the Rabi-frequency minimum at detuning ``delta``.

    Negative results mean the minimum lies outside the physical range.
    """
    k, lam, w = params.k, params.lam, params.omega
    _require_deformed(k)
    return (k * delta - lam**2 * w**2 * (1.0 + k)) / (2.0 * k * w * (k + lam**2))


# --- two modes (paired states |n, n>) --------------------------------------

def eta_two(n, k: float):
    """Paired-state matrix element (1 + n)(1 + k n); note: no square root."""
    n = _photon_number(n)
    return _scalar((1.0 + n) * (1.0 + k * n))


def detuning_two(n, params: TwoModeParams):
    n = _photon_number(n)
    return _scalar(params.delta - 2.0 * params.k * (params.omega1 + params.omega2) * n)


def rabi_two(n, params: TwoModeParams):
    d = detuning_two(n, params)
    e = eta_two(n, params.k)
    return _scalar(np.hypot(d, 2.0 * params.lam * np.asarray(e)))


def spectral_point_two(n: int, params: TwoModeParams) -> SpectralPoint:
    return SpectralPoint(int(n), eta_two(n, params.k), detuning_two(n, params), rabi_two(n, params))


def critical_detuning_two(N_bar: float, params: TwoModeParams) -> float:
    """Two-mode critical detuning for total mean photon number ``N_bar``.

    ``omega`` in the closed expression is the total field frequency
    omega1 + omega2 and the coupling plays the role of g.
    """
    k, g, w = params.k, params.lam, params.omega_total
    _require_deformed(k)
    N = N_bar
    bracket = (1.0 + k) * (2.0 + N + k * N + 1.5 * N**2 * k) + 0.5 * N**3 * k**2
    return k * w * N + g**2 / (k * w) * bracket
