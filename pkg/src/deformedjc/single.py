"""Closed-form single-mode evolution and its observables.

Each invariant pair (|e, n>, |g, n+1>) rotates under its own 2x2 unitary
with generalised Rabi frequency Omega_n.  Amplitudes are kept in the
interaction picture of the free part omega K^dag K + nu sigma_z / 2, the
picture in which the textbook coefficient formulas hold.  Observables that
only involve |C|^2 and C_{e,n}^* C_{g,n} are the same in either picture.

Amplitude arrays have one more slot than the initial field (length
n_max + 2): the top excited slot stays empty, so the partner of the highest
populated excited level is always inside the array and the truncated
evolution is exactly unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import model, spectral
from .model import SingleModeParams
from .states import FockVector

# time samples evaluated together when averaging
CHUNK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class SingleJointAmplitudes:
    """C_{e,n}(t), C_{g,n}(t); arrays are (M,) for one time or (T, M) for a grid."""

    c_e: np.ndarray
    c_g: np.ndarray
    time: float | np.ndarray


def _initial_arrays(field0: FockVector, ground0) -> tuple[np.ndarray, np.ndarray]:
    f = np.asarray(field0.amplitudes, dtype=complex)
    m = f.size + 1
    c_e = np.zeros(m, dtype=complex)
    c_e[:-1] = f
    c_g = np.zeros(m, dtype=complex)
    if ground0 is not None:
        g = np.asarray(ground0.amplitudes if isinstance(ground0, FockVector) else ground0, dtype=complex)
        if g.size != f.size:
            raise ValueError("ground-state amplitudes must match the field truncation")
        c_g[:-1] = g
    total = np.sum(np.abs(c_e) ** 2) + np.sum(np.abs(c_g) ** 2)
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"initial state is not normalised (norm^2 = {total:.12g})")
    return c_e, c_g


def block_rotation(delta_n, rabi_n, coupling_n, t):
    """Entries of the interaction-picture 2x2 propagator of each invariant pair.

    Returns (u_ee, u_eg, u_ge, u_gg) with
    C_e(t) = u_ee C_e(0) + u_eg C_g'(0) and C_g'(t) = u_ge C_e(0) + u_gg C_g'(0),
    where ``coupling_n`` is lambda * eta_n and C_g' is the partner ground amplitude.
    """
    t = np.asarray(t, dtype=float)[..., None]
    half = 0.5 * rabi_n * t
    cos, sin = np.cos(half), np.sin(half)
    ratio = np.divide(delta_n, rabi_n, out=np.zeros_like(delta_n), where=rabi_n > 0)
    mix = np.divide(2.0 * coupling_n, rabi_n, out=np.zeros_like(delta_n), where=rabi_n > 0)
    ph_e = np.exp(0.5j * delta_n * t)
    u_ee = ph_e * (cos - 1j * ratio * sin)
    u_eg = ph_e * (-1j * mix * sin)
    u_gg = np.conj(ph_e) * (cos + 1j * ratio * sin)
    u_ge = np.conj(ph_e) * (-1j * mix * sin)
    return u_ee, u_eg, u_ge, u_gg


def _propagate(c_e0, c_g0, delta_n, rabi_n, coupling_n, t):
    u_ee, u_eg, u_ge, u_gg = block_rotation(delta_n, rabi_n, coupling_n, t)
    shape = np.shape(t) + c_e0.shape
    c_e = np.zeros(shape, dtype=complex)
    c_g = np.zeros(shape, dtype=complex)
    e0, g1 = c_e0[:-1], c_g0[1:]
    c_e[..., :-1] = u_ee * e0 + u_eg * g1
    c_g[..., 1:] = u_ge * e0 + u_gg * g1
    c_g[..., 0] = c_g0[0]
    c_e[..., -1] = c_e0[-1]
    return c_e, c_g


def _block_parameters(size: int, params: SingleModeParams):
    n = np.arange(size - 1)
    delta_n = np.asarray(model.detuning_single(n, params), dtype=float)
    eta = np.asarray(model.eta_single(n, params.k), dtype=float)
    rabi = np.hypot(delta_n, 2.0 * params.lam * eta)
    return delta_n, rabi, params.lam * eta


def evolve_single(field0: FockVector, params: SingleModeParams, t, ground0=None) -> SingleJointAmplitudes:
    """State at time(s) ``t`` (absolute, not scaled) for an atom starting excited.

    ``ground0`` optionally supplies C_{g,n}(0); by default the atom starts in
    |e> with the field in ``field0``.
    """
    c_e0, c_g0 = _initial_arrays(field0, ground0)
    if np.any(np.asarray(t) < 0):
        raise ValueError("time must be nonnegative")
    c_e, c_g = _propagate(c_e0, c_g0, *_block_parameters(c_e0.size, params), t)
    return SingleJointAmplitudes(c_e, c_g, t)


def free_energies(size: int, params: SingleModeParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal energies of |e, n> and |g, n> under omega K^dag K + nu sigma_z / 2."""
    n = np.arange(size, dtype=float)
    field = params.omega * (n + params.k * n * (n - 1.0))
    return field + 0.5 * params.nu, field - 0.5 * params.nu


def to_schrodinger(amps: SingleJointAmplitudes, params: SingleModeParams) -> SingleJointAmplitudes:
    e_e, e_g = free_energies(amps.c_e.shape[-1], params)
    t = np.asarray(amps.time, dtype=float)[..., None]
    return SingleJointAmplitudes(amps.c_e * np.exp(-1j * e_e * t),
                                 amps.c_g * np.exp(-1j * e_g * t), amps.time)


# --- observables ------------------------------------------------------------

def norm_single(amps: SingleJointAmplitudes):
    return np.sum(np.abs(amps.c_e) ** 2 + np.abs(amps.c_g) ** 2, axis=-1)


def inversion_single(amps: SingleJointAmplitudes):
    return np.sum(np.abs(amps.c_e) ** 2 - np.abs(amps.c_g) ** 2, axis=-1)


def atomic_density_single(amps: SingleJointAmplitudes) -> np.ndarray:
    """Reduced atomic density matrix in the (e, g) basis; shape (..., 2, 2)."""
    pe = np.sum(np.abs(amps.c_e) ** 2, axis=-1)
    pg = np.sum(np.abs(amps.c_g) ** 2, axis=-1)
    off = np.sum(np.conj(amps.c_e) * amps.c_g, axis=-1)
    rho = np.empty(np.shape(pe) + (2, 2), dtype=complex)
    rho[..., 0, 0] = pe
    rho[..., 0, 1] = off
    rho[..., 1, 0] = np.conj(off)
    rho[..., 1, 1] = pg
    return rho


def coherence_single(amps: SingleJointAmplitudes):
    """|sum_n C_{e,n}^* C_{g,n}|, the magnitude of the atomic off-diagonal element."""
    return np.abs(np.sum(np.conj(amps.c_e) * amps.c_g, axis=-1))


def linear_entropy_single(amps: SingleJointAmplitudes):
    return spectral.linear_entropy_of(atomic_density_single(amps))


def time_grid(lam: float, scaled_T: float, scaled_dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grid in lambda*t from 0 to ``scaled_T``; returns (lambda_t, t)."""
    if scaled_T <= 0 or scaled_dt <= 0:
        raise ValueError("T and dt must be positive")
    steps = int(round(scaled_T / scaled_dt))
    if abs(steps * scaled_dt - scaled_T) > 1e-9 * scaled_T:
        raise ValueError("T must be an integer multiple of dt")
    lt = np.linspace(0.0, scaled_T, steps + 1)
    return lt, lt / lam


def trapezoid_mean(y: np.ndarray, x: np.ndarray) -> float:
    return float(np.trapezoid(y, x) / (x[-1] - x[0]))


def iter_chunks(n_times: int, width: int):
    step = max(1, CHUNK_ELEMENTS // max(width, 1))
    for start in range(0, n_times, step):
        yield slice(start, min(start + step, n_times))


def series_single(field0: FockVector, params: SingleModeParams, scaled_T: float,
                  scaled_dt: float) -> dict[str, np.ndarray]:
    """Inversion, linear entropy and coherence on a lambda*t grid."""
    lt, t = time_grid(params.lam, scaled_T, scaled_dt)
    out = {name: np.empty(lt.size) for name in ("W_S", "L", "coherence", "norm")}
    width = field0.amplitudes.size + 1
    for sl in iter_chunks(lt.size, width):
        amps = evolve_single(field0, params, t[sl])
        out["W_S"][sl] = inversion_single(amps)
        out["L"][sl] = linear_entropy_single(amps)
        out["coherence"][sl] = coherence_single(amps)
        out["norm"][sl] = norm_single(amps)
    out["lambda_t"] = lt
    return out


def mean_linear_entropy(field0: FockVector, params: SingleModeParams,
                        scaled_T: float = 100.0, scaled_dt: float = 0.01) -> float:
    """Time average of the linear entropy over 0 <= lambda t <= scaled_T (trapezoid rule)."""
    s = series_single(field0, params, scaled_T, scaled_dt)
    return trapezoid_mean(s["L"], s["lambda_t"])
