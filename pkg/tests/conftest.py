"""Shared random-input helpers for the test suite."""

import numpy as np

from qqent.numerics import haar_unitary

QUARTET_IDX = {
    (1, 2, 4, 5): np.array([0, 1, 3, 4]),
    (1, 3, 4, 6): np.array([0, 2, 3, 5]),
    (2, 3, 5, 6): np.array([1, 2, 4, 5]),
}


def random_spectrum(rng, n=6, rank=None):
    rank = int(rng.integers(1, n + 1)) if rank is None else rank
    lam = np.zeros(n)
    lam[:rank] = np.sort(rng.dirichlet(np.ones(rank)))[::-1]
    return lam


def random_density(rng, dim, rank=None):
    lam = random_spectrum(rng, dim, rank)
    v = haar_unitary(dim, rng)
    return (v * lam) @ v.conj().T


def random_ket(rng, dim=6):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_x_state(rng):
    """Random PSD 4x4 X-form density matrix."""
    d = rng.dirichlet(np.ones(4))
    m = np.zeros((4, 4), dtype=complex)
    np.fill_diagonal(m, d)
    m[0, 3] = rng.uniform() * np.sqrt(d[0] * d[3]) * np.exp(2j * np.pi * rng.uniform())
    m[1, 2] = rng.uniform() * np.sqrt(d[1] * d[2]) * np.exp(2j * np.pi * rng.uniform())
    m[3, 0] = m[0, 3].conjugate()
    m[2, 1] = m[1, 2].conjugate()
    return m


def quartet_embedded_unitary(u4, quartet=(1, 3, 4, 6)):
    """Embed a 4x4 unitary on the quartet levels, identity elsewhere."""
    big = np.eye(6, dtype=complex)
    idx = QUARTET_IDX[tuple(quartet)]
    big[np.ix_(idx, idx)] = u4
    return big


def rotated_min_sgx(base, unitary_seed):
    """Haar-rotate the {1,3,4,6} quartet of a canonical state into dense
    minimal SGX form."""
    big = quartet_embedded_unitary(haar_unitary(4, unitary_seed))
    return big @ base @ big.conj().T


def brute_force_negativity(rho):
    """Independent partial-transpose oracle via explicit index loops."""
    pt = np.zeros((6, 6), dtype=complex)
    for a in range(2):
        for b in range(3):
            for ap in range(2):
                for bp in range(3):
                    pt[3 * a + b, 3 * ap + bp] = rho[3 * ap + b, 3 * a + bp]
    eigs = np.linalg.eigvalsh(pt)
    return float(-eigs[eigs < 0].sum())


def reduction_purity_entanglement(psi):
    """Independent pure-state oracle: sqrt(2 (1 - purity of mode-1 reduction))."""
    m = np.asarray(psi, dtype=complex).reshape(2, 3)
    red = m @ m.conj().T
    return float(np.sqrt(max(2.0 * (1.0 - np.trace(red @ red).real), 0.0)))
