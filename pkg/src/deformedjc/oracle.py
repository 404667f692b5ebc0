"""Brute-force reference: truncated Hamiltonians exponentiated exactly.

Nothing here uses the closed-form solutions.  Operators are assembled from
the annihilation matrix by matrix products, the Hamiltonians from Kronecker
(single mode) or paired-restriction (two modes) products of those operators,
and time evolution goes through a full Jacobi eigendecomposition.

Basis conventions:
  single mode  index n -> |e, n>,  index (n_max + 1) + n -> |g, n>
  two modes    same layout on the paired states |n, n>
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .model import SingleModeParams, TwoModeParams

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()


@dataclass(frozen=True)
class DeformedOps:
    K: np.ndarray
    K_dag: np.ndarray
    K0: np.ndarray
    k: float


@dataclass(frozen=True)
class Deviation:
    max_abs: float
    max_modulus: float  # phase-insensitive: max ||a| - |b||


def annihilation(n_max: int, dtype=complex) -> np.ndarray:
    real = np.finfo(dtype).dtype
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=real)), 1).astype(dtype)


def number(n_max: int, dtype=complex) -> np.ndarray:
    a = annihilation(n_max, dtype)
    return a.conj().T @ a


def build_deformed_ops(n_max: int, k: float, dtype=complex) -> DeformedOps:
    """K = sqrt(1 + k a^dag a) a, its adjoint, and K0 = k a^dag a + 1/2.

    ``dtype=np.clongdouble`` gives extended-precision matrices for checking
    the algebra well below double-precision round-off.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    real = np.finfo(dtype).dtype
    a = annihilation(n_max, dtype)
    num = number(n_max, dtype)
    kk = real.type(k)
    root = np.diag(np.sqrt(1 + kk * np.diag(num).real)).astype(dtype)
    K = root @ a
    K0 = kk * num + real.type(0.5) * np.eye(n_max + 1, dtype=real)
    return DeformedOps(K, K.conj().T, K0, kk)


def _comm(x, y):
    return x @ y - y @ x


def check_algebra(ops: DeformedOps, interior_dim: int) -> float:
    """Largest violation of the three deformed commutation relations on the
    leading ``interior_dim`` x ``interior_dim`` block (the truncation edge
    necessarily breaks them)."""
    n_max = ops.K.shape[0] - 1
    if not 1 <= interior_dim <= n_max - 2:
        raise ValueError("interior_dim must lie in [1, n_max - 2]")
    s = slice(0, interior_dim)
    residuals = (
        _comm(ops.K, ops.K_dag) - 2.0 * ops.K0,
        _comm(ops.K0, ops.K_dag) - ops.k * ops.K_dag,
        _comm(ops.K0, ops.K) + ops.k * ops.K,
    )
    return float(max(np.max(np.abs(r[s, s])) for r in residuals))


def build_hamiltonian_single(params: SingleModeParams, n_max: int) -> np.ndarray:
    ops = build_deformed_ops(n_max, params.k)
    eye_f = np.eye(n_max + 1)
    h = (params.omega * np.kron(np.eye(2), ops.K_dag @ ops.K)
         + 0.5 * params.nu * np.kron(SIGMA_Z, eye_f)
         + params.lam * (np.kron(SIGMA_MINUS, ops.K_dag) + np.kron(SIGMA_PLUS, ops.K)))
    return h


def _paired(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """<m,m| A (x) B |n,n> = A_mn B_mn."""
    return a * b


def build_hamiltonian_two(params: TwoModeParams, n_max: int) -> np.ndarray:
    """H restricted to the paired subspace {|e,n,n>, |g,n,n>}."""
    ops = build_deformed_ops(n_max, params.k)
    eye_f = np.eye(n_max + 1)
    field = (params.omega1 * _paired(ops.K_dag @ ops.K, eye_f)
             + params.omega2 * _paired(eye_f, ops.K_dag @ ops.K))
    raise_pair = _paired(ops.K_dag, ops.K_dag)
    lower_pair = _paired(ops.K, ops.K)
    return (np.kron(np.eye(2), field)
            + 0.5 * params.nu * np.kron(SIGMA_Z, eye_f)
            + params.lam * (np.kron(SIGMA_MINUS, raise_pair) + np.kron(SIGMA_PLUS, lower_pair)))


def build_hamiltonian_two_full(params: TwoModeParams, n_max: int) -> np.ndarray:
    """The two-mode Hamiltonian on the full (unpaired) truncated space; atom (x) mode1 (x) mode2."""
    ops = build_deformed_ops(n_max, params.k)
    eye_f = np.eye(n_max + 1)
    n1 = np.kron(ops.K_dag @ ops.K, eye_f)
    n2 = np.kron(eye_f, ops.K_dag @ ops.K)
    eye_ff = np.eye((n_max + 1) ** 2)
    return (np.kron(np.eye(2), params.omega1 * n1 + params.omega2 * n2)
            + 0.5 * params.nu * np.kron(SIGMA_Z, eye_ff)
            + params.lam * (np.kron(SIGMA_MINUS, np.kron(ops.K_dag, ops.K_dag))
                            + np.kron(SIGMA_PLUS, np.kron(ops.K, ops.K))))


def paired_embedding(n_max: int) -> np.ndarray:
    """Isometry from the paired basis {|e,n,n>, |g,n,n>} into the full space."""
    d = n_max + 1
    out = np.zeros((2 * d * d, 2 * d))
    for atom in range(2):
        for n in range(d):
            out[atom * d * d + n * d + n, atom * d + n] = 1.0
    return out


def paired_leakage(params: TwoModeParams, n_max: int) -> tuple[float, float]:
    """(weight H pushes out of the paired subspace, mismatch of the paired restriction).

    Both are zero when the paired subspace is invariant and
    ``build_hamiltonian_two`` is its exact restriction.
    """
    h = build_hamiltonian_two_full(params, n_max)
    p = paired_embedding(n_max)
    hp = h @ p
    leak = hp - p @ (p.T @ hp)
    mismatch = p.T @ hp - build_hamiltonian_two(params, n_max)
    return float(np.max(np.abs(leak))), float(np.max(np.abs(mismatch)))


class Propagator:
    """exp(-i H t) through one eigendecomposition of H, reusable for many times."""

    def __init__(self, h: np.ndarray, tol: float | None = None):
        spec = spectral.eigen_hermitian(h, tol=tol, vectors=True)
        self.energies = spec.eigenvalues
        self.vectors = spec.eigenvectors

    def __call__(self, psi0: np.ndarray, t):
        coeff = self.vectors.conj().T @ np.asarray(psi0, dtype=complex)
        t = np.asarray(t, dtype=float)
        phases = np.exp(-1j * self.energies * t[..., None])
        return (phases * coeff) @ self.vectors.T


def integrate(h: np.ndarray, psi0: np.ndarray, t) -> np.ndarray:
    """psi(t) = exp(-i H t) psi0; ``t`` may be a scalar or an array of times."""
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.vdot(psi0, psi0).real - 1.0) > 1e-10:
        raise ValueError("psi0 must be normalised")
    return Propagator(h)(psi0, t)


def joint_vector(c_e: np.ndarray, c_g: np.ndarray) -> np.ndarray:
    """Stack (c_e, c_g) into the oracle basis layout."""
    return np.concatenate([c_e, c_g], axis=-1)


def compare(closed_form, oracle_state) -> Deviation:
    """Deviation between two state vectors (or stacks) in the same basis."""
    a = np.asarray(closed_form)
    b = np.asarray(oracle_state)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return Deviation(float(np.max(np.abs(a - b))), float(np.max(np.abs(np.abs(a) - np.abs(b)))))
