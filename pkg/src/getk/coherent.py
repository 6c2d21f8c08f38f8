"""Coherent states for distinguished observable algebras.

Provides spin-J systems with physically normalized angular momentum
generators, spin coherent states as extremal eigenvectors, group-orbit
sampling through the matrix exponential, and a numerical estimator for the
maximal raw purity used as a rescaling reference.
"""

from dataclasses import dataclass, field

import numpy as np

from .operators import ObservableSpace, QuantumState, assert_hermitian, random_pure_state


def _validate_spin(j) -> float:
    j = float(j)
    if j < 0 or abs(2 * j - round(2 * j)) > 1e-12:
        raise ValueError(f"spin must be a nonnegative half-integer, got {j}")
    return round(2 * j) / 2.0


@dataclass(frozen=True)
class SpinSystem:
    """Spin-J generators in the basis |J,J>, |J,J-1>, ..., |J,-J>.

    Physical normalization: jz has eigenvalues J, J-1, ..., -J and the
    ladder operators act with the standard sqrt(J(J+1) - m(m+1)) weights.
    """

    j: float
    jx: np.ndarray = field(repr=False)
    jy: np.ndarray = field(repr=False)
    jz: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1

    @property
    def generators(self) -> list[np.ndarray]:
        return [self.jx, self.jy, self.jz]

    def basis_state(self, m) -> QuantumState:
        """The eigenstate |J, m> of jz."""
        index = int(round(self.j - m))
        if not 0 <= index < self.dim:
            raise ValueError(f"m={m} outside -J..J for J={self.j}")
        return QuantumState.basis_state(self.dim, index)


def spin_system(j) -> SpinSystem:
    """Build the spin-J system of dimension 2J+1 from ladder operators."""
    j = _validate_spin(j)
    dim = int(round(2 * j)) + 1
    m = j - np.arange(dim)  # m values top-down: J, J-1, ..., -J
    jz = np.diag(m).astype(complex)
    jplus = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        # |J, m[k]> -> sqrt(J(J+1) - m(m+1)) |J, m[k]+1>
        jplus[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jminus = jplus.conj().T
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    return SpinSystem(j=j, jx=jx, jy=jy, jz=jz)


def scs(system: SpinSystem, direction) -> QuantumState:
    """Spin coherent state: top eigenvector of n . J for a unit vector n.

    The phase is fixed by making the largest-magnitude amplitude real and
    positive.  The top eigenvalue is J and is simple for every unit n.
    """
    n = np.asarray(direction, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ValueError(f"direction must be a unit vector, norm {np.linalg.norm(n)!r}")
    h = n[0] * system.jx + n[1] * system.jy + n[2] * system.jz
    evals, evecs = np.linalg.eigh(h)
    if system.dim > 1 and evals[-1] - evals[-2] < 1e-9:
        raise ValueError("top eigenvalue of n.J is degenerate")
    if abs(evals[-1] - system.j) > 1e-10:
        raise ValueError(f"top eigenvalue {evals[-1]} differs from J={system.j}")
    v = evecs[:, -1]
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    resid = np.linalg.norm(h @ v - system.j * v)
    if resid > 1e-9:
        raise ValueError(f"coherent-state residual {resid:.3e} too large")
    return QuantumState(vector=v)


def exp_i_hermitian(h) -> np.ndarray:
    """Unitary exp(i h) of a Hermitian matrix via eigendecomposition."""
    h = assert_hermitian(h, tol=1e-10)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1.0j * w)) @ v.conj().T


def orbit_sample(omega: ObservableSpace, reference: QuantumState, angles) -> QuantumState:
    """Apply exp(i sum_a angles[a] X_a) to a pure reference state."""
    if not reference.is_pure:
        raise ValueError("orbit sampling needs a pure reference state")
    angles = np.asarray(angles, dtype=float).reshape(-1)
    if angles.size != omega.size:
        raise ValueError(f"expected {omega.size} angles, got {angles.size}")
    h = np.einsum("a,aij->ij", angles, omega.stack) if omega.size else np.zeros((omega.dim, omega.dim))
    u = exp_i_hermitian(h)
    v = u @ reference.vector
    return QuantumState(vector=v / np.linalg.norm(v))


def raw_purity_and_gradient(omega: ObservableSpace, psi: np.ndarray):
    """Raw purity sum_a <X_a>^2 of a unit vector and its Euclidean gradient.

    The gradient is taken with respect to the real and imaginary parts of
    the unnormalized amplitudes: grad = 4 sum_a <X_a> X_a psi.
    """
    xpsi = omega.stack @ psi
    evals = (psi.conj()[None, :] @ xpsi[..., None]).ravel().real
    value = float(np.dot(evals, evals))
    grad = 4.0 * np.einsum("a,ai->i", evals, xpsi)
    return value, grad


def max_purity_estimate(omega: ObservableSpace, restarts: int = 32, seed: int = 0,
                        step: float = 0.1, max_iter: int = 10_000,
                        ftol: float = 1e-10) -> float:
    """Maximize the raw traceless purity over pure states.

    Projected gradient ascent on the unit sphere with a fixed initial step,
    halving on non-improvement, stopping once the improvement drops below
    ``ftol``.  Deterministic for a fixed seed; the returned value is a lower
    bound on the true maximum.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if omega.size == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        psi = random_pure_state(omega.dim, rng).vector
        val, grad = raw_purity_and_gradient(omega, psi)
        cur_step = step
        for _ in range(max_iter):
            tangent = grad - np.real(np.vdot(psi, grad)) * psi
            trial = psi + cur_step * tangent
            trial /= np.linalg.norm(trial)
            tval, tgrad = raw_purity_and_gradient(omega, trial)
            if tval > val:
                improvement = tval - val
                psi, val, grad = trial, tval, tgrad
                if improvement < ftol:
                    break
            else:
                cur_step *= 0.5
                if cur_step < 1e-12:
                    break
        best = max(best, val)
    if omega.traceless:
        bound = 1.0 - 1.0 / omega.dim
        if best > bound + 1e-8:
            raise AssertionError(f"purity estimate {best} exceeds the bound {bound}")
    return best
