"""Closed-form two-mode evolution over paired states and the tripartite measures.

Only paired states |n, n> ever appear, so the joint state is two arrays
C_{e,n,n}, C_{g,n,n} and every reduced density matrix has a compact form:

* atom: 2x2, same structure as the single-mode case;
* atom + one mode: block diagonal with one rank-one 2x2 block per n;
* one mode: diagonal with p_n = |C_{e,n,n}|^2 + |C_{g,n,n}|^2;
* both modes: dense a_{nm} = C_{e,n} C_{e,m}^* + C_{g,n} C_{g,m}^*.

Entropies of the last three are base 2.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import model, spectral
from .model import TwoModeParams
from .single import _propagate, iter_chunks, time_grid, trapezoid_mean
from .states import PairedFockVector


@dataclass(frozen=True)
class PairedJointAmplitudes:
    c_e: np.ndarray
    c_g: np.ndarray
    time: float | np.ndarray


@dataclass(frozen=True)
class EntanglementRecord:
    time: float
    w_t: float
    tangle_a_ff: float
    tangle_af1_f2: float
    tangle_af2_f1: float
    relative_entropy: float
    coherence: float


def _initial_arrays(field0: PairedFockVector, ground0):
    if not isinstance(field0, PairedFockVector):
        raise TypeError("two-mode evolution needs a PairedFockVector (paired states only)")
    f = np.asarray(field0.amplitudes, dtype=complex)
    c_e = np.zeros(f.size + 1, dtype=complex)
    c_e[:-1] = f
    c_g = np.zeros_like(c_e)
    if ground0 is not None:
        if not isinstance(ground0, PairedFockVector):
            raise TypeError("ground amplitudes must be a PairedFockVector")
        if ground0.amplitudes.size != f.size:
            raise ValueError("ground-state amplitudes must match the field truncation")
        c_g[:-1] = ground0.amplitudes
    total = np.sum(np.abs(c_e) ** 2) + np.sum(np.abs(c_g) ** 2)
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"initial state is not normalised (norm^2 = {total:.12g})")
    return c_e, c_g


def _block_parameters(size: int, params: TwoModeParams):
    n = np.arange(size - 1)
    delta_n = np.asarray(model.detuning_two(n, params), dtype=float)
    eta = np.asarray(model.eta_two(n, params.k), dtype=float)
    return delta_n, np.hypot(delta_n, 2.0 * params.lam * eta), params.lam * eta


def evolve_two(field0: PairedFockVector, params: TwoModeParams, t, ground0=None) -> PairedJointAmplitudes:
    """Paired-state amplitudes at absolute time(s) ``t`` (interaction picture)."""
    c_e0, c_g0 = _initial_arrays(field0, ground0)
    if np.any(np.asarray(t) < 0):
        raise ValueError("time must be nonnegative")
    c_e, c_g = _propagate(c_e0, c_g0, *_block_parameters(c_e0.size, params), t)
    return PairedJointAmplitudes(c_e, c_g, t)


def free_energies(size: int, params: TwoModeParams) -> tuple[np.ndarray, np.ndarray]:
    """Energies of |e,n,n> and |g,n,n> under w1 K1^dag K1 + w2 K2^dag K2 + nu sigma_z / 2."""
    n = np.arange(size, dtype=float)
    field = params.omega_total * (n + params.k * n * (n - 1.0))
    return field + 0.5 * params.nu, field - 0.5 * params.nu


def to_schrodinger(amps: PairedJointAmplitudes, params: TwoModeParams) -> PairedJointAmplitudes:
    e_e, e_g = free_energies(amps.c_e.shape[-1], params)
    t = np.asarray(amps.time, dtype=float)[..., None]
    return PairedJointAmplitudes(amps.c_e * np.exp(-1j * e_e * t),
                                 amps.c_g * np.exp(-1j * e_g * t), amps.time)


# --- observables ------------------------------------------------------------

def norm_two(amps):
    return np.sum(np.abs(amps.c_e) ** 2 + np.abs(amps.c_g) ** 2, axis=-1)


def inversion_two(amps):
    return np.sum(np.abs(amps.c_e) ** 2 - np.abs(amps.c_g) ** 2, axis=-1)


def atomic_density_two(amps) -> np.ndarray:
    pe = np.sum(np.abs(amps.c_e) ** 2, axis=-1)
    pg = np.sum(np.abs(amps.c_g) ** 2, axis=-1)
    off = np.sum(np.conj(amps.c_e) * amps.c_g, axis=-1)
    rho = np.empty(np.shape(pe) + (2, 2), dtype=complex)
    rho[..., 0, 0] = pe
    rho[..., 0, 1] = off
    rho[..., 1, 0] = np.conj(off)
    rho[..., 1, 1] = pg
    return rho


def coherence_two(amps):
    return np.abs(np.sum(np.conj(amps.c_e) * amps.c_g, axis=-1))


def tangle_a_ff(amps):
    """Atom versus both modes: linear entropy of the atomic density matrix."""
    return spectral.linear_entropy_of(atomic_density_two(amps))


def _atom_mode_blocks(amps) -> np.ndarray:
    """The 2x2 blocks (basis |e,n>, |g,n>) of rho_{A,F1}; shape (..., M, 2, 2)."""
    ce, cg = amps.c_e, amps.c_g
    blocks = np.empty(ce.shape + (2, 2), dtype=complex)
    blocks[..., 0, 0] = np.abs(ce) ** 2
    blocks[..., 0, 1] = ce * np.conj(cg)
    blocks[..., 1, 0] = cg * np.conj(ce)
    blocks[..., 1, 1] = np.abs(cg) ** 2
    return blocks


def rho_a_f1(amps) -> np.ndarray:
    """Dense reduced matrix of atom + mode 1, basis order |e,0>, |g,0>, |e,1>, |g,1>, ..."""
    if np.ndim(amps.c_e) != 1:
        raise ValueError("rho_a_f1 takes the amplitudes of a single time")
    blocks = _atom_mode_blocks(amps)
    m = blocks.shape[0]
    out = np.zeros((2 * m, 2 * m), dtype=complex)
    for n in range(m):
        out[2 * n:2 * n + 2, 2 * n:2 * n + 2] = blocks[n]
    return out


# For paired states exchanging the modes leaves the state unchanged, so the
# atom + mode 2 reduction is the same matrix in the relabelled basis.
rho_a_f2 = rho_a_f1


def _block_eigenvalues(blocks: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of hermitian 2x2 blocks, flattened along the last axis."""
    a = blocks[..., 0, 0].real
    d = blocks[..., 1, 1].real
    b = np.abs(blocks[..., 0, 1])
    mid = 0.5 * (a + d)
    rad = np.sqrt((0.5 * (a - d)) ** 2 + b * b)
    lam = np.stack([mid - rad, mid + rad], axis=-1)
    return lam.reshape(lam.shape[:-2] + (-1,))


def _entropy_atom_mode(amps):
    return spectral.von_neumann_entropy(_block_eigenvalues(_atom_mode_blocks(amps)))


def tangle_af1_f2(amps):
    """von Neumann entropy (bits) of the atom + mode-1 reduction."""
    return _entropy_atom_mode(amps)


def tangle_af2_f1(amps):
    """von Neumann entropy (bits) of the atom + mode-2 reduction."""
    return _entropy_atom_mode(amps)


def mode_populations(amps):
    """Diagonal of the single-mode reduction: p_n = |C_{e,n,n}|^2 + |C_{g,n,n}|^2."""
    return np.abs(amps.c_e) ** 2 + np.abs(amps.c_g) ** 2


def entropy_single_mode(amps):
    """Entropy of either single-mode reduction, read directly off its diagonal."""
    return spectral.shannon_bits(mode_populations(amps))


def rho_f1f2(amps) -> np.ndarray:
    """Field density matrix a_{nm} on the paired basis; shape (..., M, M)."""
    ce, cg = amps.c_e, amps.c_g
    return (ce[..., :, None] * np.conj(ce[..., None, :])
            + cg[..., :, None] * np.conj(cg[..., None, :]))


def field_entropy(amps, method: str = "lapack"):
    """S(rho_{F1,F2}) in bits from the eigenvalues of the dense field matrix."""
    a = rho_f1f2(amps)
    if method == "jacobi":
        if a.ndim != 2:
            raise ValueError("the Jacobi path takes one matrix at a time")
        return spectral.von_neumann_entropy(spectral.eigen_hermitian(a))
    if method != "lapack":
        raise ValueError(f"unknown eigen method {method!r}")
    return spectral.von_neumann_entropy(spectral.eigvalsh_batch(a))


def relative_entropy(amps, method: str = "lapack"):
    """Entropy of the dephased field diagonal minus the field entropy (bits)."""
    diag = np.real(np.diagonal(rho_f1f2(amps), axis1=-2, axis2=-1))
    return spectral.shannon_bits(diag) - field_entropy(amps, method)


def record(amps) -> EntanglementRecord:
    if np.ndim(amps.c_e) != 1:
        raise ValueError("record takes the amplitudes of a single time")
    return EntanglementRecord(
        time=float(amps.time),
        w_t=float(inversion_two(amps)),
        tangle_a_ff=float(tangle_a_ff(amps)),
        tangle_af1_f2=float(tangle_af1_f2(amps)),
        tangle_af2_f1=float(tangle_af2_f1(amps)),
        relative_entropy=float(relative_entropy(amps)),
        coherence=float(coherence_two(amps)),
    )


SERIES_COLUMNS = ("W_T", "T_A_FF", "T_AF1_F2", "T_AF2_F1", "E", "coherence")


def series_two(field0: PairedFockVector, params: TwoModeParams, scaled_T: float,
               scaled_dt: float) -> dict[str, np.ndarray]:
    """All two-mode measures on a lambda*t grid, plus the cross-check columns
    ``norm``, ``S_F2`` (entropy from the mode populations) and ``S_A``
    (atomic von Neumann entropy)."""
    lt, t = time_grid(params.lam, scaled_T, scaled_dt)
    names = SERIES_COLUMNS + ("norm", "S_F2", "S_A")
    out = {name: np.empty(lt.size) for name in names}
    width = (field0.amplitudes.size + 1) ** 2
    for sl in iter_chunks(lt.size, width):
        amps = evolve_two(field0, params, t[sl])
        out["W_T"][sl] = inversion_two(amps)
        out["T_A_FF"][sl] = tangle_a_ff(amps)
        out["T_AF1_F2"][sl] = tangle_af1_f2(amps)
        out["T_AF2_F1"][sl] = tangle_af2_f1(amps)
        out["E"][sl] = relative_entropy(amps)
        out["coherence"][sl] = coherence_two(amps)
        out["norm"][sl] = norm_two(amps)
        out["S_F2"][sl] = entropy_single_mode(amps)
        out["S_A"][sl] = spectral.von_neumann_entropy(spectral.eigvalsh_batch(atomic_density_two(amps)))
    out["lambda_t"] = lt
    return out


def mean_measures(field0: PairedFockVector, params: TwoModeParams, scaled_T: float = 20.0,
                  scaled_dt: float = 0.005) -> EntanglementRecord:
    """Trapezoid time averages of every record field over 0 <= lambda t <= scaled_T."""
    s = series_two(field0, params, scaled_T, scaled_dt)
    lt = s["lambda_t"]
    key = dict(w_t="W_T", tangle_a_ff="T_A_FF", tangle_af1_f2="T_AF1_F2",
               tangle_af2_f1="T_AF2_F1", relative_entropy="E", coherence="coherence")
    values = {f.name: trapezoid_mean(s[key[f.name]], lt) for f in fields(EntanglementRecord)
              if f.name != "time"}
    return EntanglementRecord(time=float(scaled_T), **values)
