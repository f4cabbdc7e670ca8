"""Pure-state decompositions of mixed states and the minimum-average search.

Any rank-r state expands as rho = sum_j p_j |w_j><w_j| with D >= r terms,
one decomposition per D x D unitary mixing matrix; the average I-concurrence
over a decomposition is what the closed-form measures minimize.
"""

from dataclasses import dataclass

import numpy as np

from ._checks import as_density_matrix
from .errors import AngleOutOfRange, DTooLarge, DTooSmall, NotUnitary
from .measures import _pure_i_unnormalized
from .numerics import haar_unitary, hermitian_eig

RANK_TOL = 1e-12
ZERO_WEIGHT_TOL = 1e-14
_UNITARY_TOL = 1e-10
DEFAULT_GRID_BUDGET = 900
DEFAULT_SAMPLE_BUDGET = 1000


@dataclass(frozen=True)
class PureDecomposition:
    """weights sum to trace(rho); kets[j] is unit-norm (zero ket if weight ~ 0)."""

    weights: np.ndarray
    kets: np.ndarray  # shape (D, n), rows are kets

    def reconstruct(self):
        return (self.kets.T * self.weights) @ self.kets.conj()


@dataclass(frozen=True)
class MixerParams:
    """Parameters of the mixing unitary that achieved a search minimum."""

    d: int
    theta: float | None = None
    phi: float | None = None
    seed: int | None = None


def rank_of(rho):
    """Number of eigenvalues above the 1e-12 rank threshold."""
    rho = as_density_matrix(rho)
    return int(np.sum(np.linalg.eigvalsh(rho) > RANK_TOL))


def decompose(rho, mixer):
    """Decomposition of rho from a D x D unitary, D >= rank(rho).

    Weights are p_j = sum_k |U_jk|^2 lam_k over the rank-supporting
    eigenvalues; members with p_j <= 1e-14 keep a zero ket and are skipped
    in averages but retained for reconstruction accounting.
    """
    rho = as_density_matrix(rho)
    u = np.asarray(mixer, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary(f"mixer must be square, got shape {u.shape}")
    d = u.shape[0]
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > _UNITARY_TOL:
        raise NotUnitary("mixer is not unitary to 1e-10")
    eig = hermitian_eig(rho)
    r = int(np.sum(eig.values > RANK_TOL))
    if d < r:
        raise DTooSmall(f"D={d} below rank {r}")
    amp = u[:, :r] * np.sqrt(np.clip(eig.values[:r], 0.0, None))
    bars = amp @ eig.vectors[:, :r].T  # rows are subnormalized kets
    weights = np.sum(np.abs(amp) ** 2, axis=1)
    kets = np.zeros_like(bars)
    for j in range(d):
        if weights[j] > ZERO_WEIGHT_TOL:
            kets[j] = bars[j] / np.sqrt(weights[j])
    return PureDecomposition(weights=weights, kets=kets)


def mixer_2(theta, phi):
    """The two-parameter special unitary [[c, s e^{i phi}], [-s e^{-i phi}, c]]."""
    if not 0.0 <= theta <= np.pi / 2 + 1e-12:
        raise AngleOutOfRange(f"theta={theta} outside [0, pi/2]")
    if not 0.0 <= phi < 2 * np.pi:
        raise AngleOutOfRange(f"phi={phi} outside [0, 2*pi)")
    a = np.cos(theta)
    b = np.sin(theta) * np.exp(1j * phi)
    return np.array([[a, b], [-b.conjugate(), a]])


def average_entanglement(dec):
    """sum_j p_j * (pure I-concurrence of ket j) for a 2x3 decomposition."""
    total = 0.0
    for w, ket in zip(dec.weights, dec.kets):
        if w > ZERO_WEIGHT_TOL:
            total += w * _pure_i_unnormalized(ket)
    return float(total)


def iter_decomposition_samples(rho, d, budget=None, seed=0):
    """Yield (trial_index, params, average) over the standard search protocol.

    D = 2 sweeps a uniform (theta, phi) lattice of about ``budget`` points
    (default 30 x 30, endpoints included in theta); D >= 3 draws ``budget``
    Haar unitaries with per-trial seeds derived as seed XOR trial index.
    ``params`` is (theta, phi) for the grid, (trial_seed,) for sampling, and
    () for the trivial D = 1 case.
    """
    rho = as_density_matrix(rho, dim=6)
    r = rank_of(rho)
    if d < r:
        raise DTooSmall(f"D={d} below rank {r}")
    if d > r * r:
        raise DTooLarge(f"D={d} above rank^2 = {r * r}")
    if d == 1:
        dec = decompose(rho, np.eye(1, dtype=complex))
        yield 0, (), average_entanglement(dec)
        return
    if d == 2:
        budget = DEFAULT_GRID_BUDGET if budget is None else int(budget)
        n_theta = max(2, int(np.sqrt(budget)))
        n_phi = max(1, budget // n_theta)
        thetas = np.linspace(0.0, np.pi / 2, n_theta)
        phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
        index = 0
        for theta in thetas:
            for phi in phis:
                dec = decompose(rho, mixer_2(theta, phi))
                yield index, (float(theta), float(phi)), average_entanglement(dec)
                index += 1
        return
    budget = DEFAULT_SAMPLE_BUDGET if budget is None else int(budget)
    for index in range(budget):
        trial_seed = int(seed) ^ index
        dec = decompose(rho, haar_unitary(d, trial_seed))
        yield index, (trial_seed,), average_entanglement(dec)


def min_average_search(rho, d, budget=None, seed=0):
    """Smallest decomposition average found, with the achieving parameters.

    A stochastic upper-bound estimator for D >= 3 (not an optimizer); the
    result can never fall below the convex-roof value beyond round-off.
    """
    best = np.inf
    best_params = ()
    for _, params, avg in iter_decomposition_samples(rho, d, budget=budget, seed=seed):
        if avg < best:
            best, best_params = avg, params
    if d == 2:
        return best, MixerParams(d=2, theta=best_params[0], phi=best_params[1])
    if d == 1:
        return best, MixerParams(d=1)
    return best, MixerParams(d=d, seed=best_params[0])
