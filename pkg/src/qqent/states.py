"""Qubit-qutrit state families, quartet machinery, and classification.

Level convention: |1..6> = |1,1>,|1,2>,|1,3>,|2,1>,|2,2>,|2,3> (row-major
coincidence index).  All level and quartet indices in the public API are
1-based to match that labeling.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ._checks import as_density_matrix, as_spectrum
from .errors import (
    AngleOutOfRange,
    EtaOutOfRange,
    IndexOutOfRange,
    SpectrumMismatch,
    UnphysicalEntanglement,
)
from .numerics import hermitian_eig

#: The three 2x2 product subspaces of the 2x3 level set, in canonical order.
QUARTETS = ((1, 2, 4, 5), (1, 3, 4, 6), (2, 3, 5, 6))

#: Two-level supports of the maximally entangled TGX kets.
ME_TUPLES = ((1, 5), (1, 6), (2, 4), (2, 6), (3, 4), (3, 5))

#: Levels outside each quartet, index-aligned with QUARTETS.
COMPLEMENT_PAIRS = ((3, 6), (2, 5), (1, 4))

ZERO_TOL = 1e-10
DELTA_TOL = 1e-12

# allowed strictly-upper off-diagonal positions (0-based) per template
_TGX_POSITIONS = frozenset({(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)})
_MIN_TGX_TEMPLATES = (
    frozenset({(0, 4), (1, 3)}),
    frozenset({(0, 5), (2, 3)}),
    frozenset({(1, 5), (2, 4)}),
)
_X6_POSITIONS = frozenset({(0, 5), (1, 4), (2, 3)})


def _dense_quartet_positions(quartet):
    idx = [k - 1 for k in quartet]
    return frozenset((a, b) for a in idx for b in idx if a < b)


_MIN_SGX_TEMPLATES = tuple(
    _dense_quartet_positions(q) | {(p[0] - 1, p[1] - 1)}
    for q, p in zip(QUARTETS, COMPLEMENT_PAIRS)
)


@dataclass(frozen=True)
class StateClass:
    """Structural flags: each is a pure zero-pattern test at tolerance 1e-10."""

    is_x: bool
    is_tgx: bool
    is_min_tgx: bool
    is_min_sgx: bool
    is_epu_min_tgx: bool
    is_mems_form: bool
    is_diagonal: bool


@dataclass(frozen=True)
class EpuParams:
    """Case parameters of the spectrum/entanglement-preserving construction."""

    q: float
    omega: float
    delta: float


def quartets():
    """The three product quartets, canonical order."""
    return [tuple(q) for q in QUARTETS]


def subspace_extract(rho, levels):
    """Extract the (unnormalized) subspace matrix rho[levels, levels].

    ``levels`` are strictly increasing 1-based indices; the block is returned
    as-is, with trace <= 1.
    """
    rho = np.asarray(rho, dtype=complex)
    idx = [int(v) for v in levels]
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRange("levels must be strictly increasing")
    if not idx or idx[0] < 1 or idx[-1] > rho.shape[0]:
        raise IndexOutOfRange(f"levels must lie in 1..{rho.shape[0]}")
    sel = np.array(idx) - 1
    return rho[np.ix_(sel, sel)].copy()


def _offdiag_support(rho):
    n = rho.shape[0]
    return {
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(rho[i, j]) > ZERO_TOL
    }


def classify(rho):
    """Zero-pattern classification of a 2x3 state.

    Template flags are true iff every entry the template requires to vanish
    has magnitude <= 1e-10; values are never compared, so a diagonal state
    matches every template.  The minimal TGX / minimal SGX / EPU flags accept
    any of the local-permutation variants of their template.
    """
    rho = as_density_matrix(rho, dim=6)
    nz = _offdiag_support(rho)
    is_tgx = nz <= _TGX_POSITIONS
    # coherence confined to (at most) a single two-level ME support
    single = any(nz <= {pos} for pos in _TGX_POSITIONS)
    return StateClass(
        is_x=nz <= _X6_POSITIONS,
        is_tgx=is_tgx,
        is_min_tgx=any(nz <= t for t in _MIN_TGX_TEMPLATES),
        is_min_sgx=any(nz <= t for t in _MIN_SGX_TEMPLATES),
        is_epu_min_tgx=single,
        is_mems_form=single,
        is_diagonal=not nz,
    )


def matched_sgx_templates(rho):
    """Indices (into quartets()) of the minimal SGX templates a state fits."""
    rho = as_density_matrix(rho, dim=6)
    nz = _offdiag_support(rho)
    return [k for k, t in enumerate(_MIN_SGX_TEMPLATES) if nz <= t]


def enumerate_lpus():
    """All 2! * 3! = 12 local-permutation unitaries as 6x6 0/1 matrices."""
    out = []
    for p1 in permutations(range(2)):
        for p2 in permutations(range(3)):
            m = np.zeros((6, 6))
            for a in range(2):
                for b in range(3):
                    m[3 * p1[a] + p2[b], 3 * a + b] = 1.0
            out.append(m)
    return out


def me_tgx_states():
    """The twelve balanced two-level maximally entangled kets.

    Ordered so that states[:6] and states[6:] each form a complete
    orthonormal (maximally entangled) basis of the 6-level space.
    """
    out = []
    for a, b in ((1, 5), (2, 6), (3, 4), (1, 6), (2, 4), (3, 5)):
        for sign in (1.0, -1.0):
            ket = np.zeros(6, dtype=complex)
            ket[a - 1] = 1.0 / np.sqrt(2.0)
            ket[b - 1] = sign / np.sqrt(2.0)
            out.append(ket)
    return out


def e_mems(spectrum):
    """lam1 - lam5 - 2*sqrt(lam4*lam6): the spectral pre-entanglement.

    May be negative; max{0, .} is the largest entanglement any state with
    this spectrum can carry.
    """
    lam = as_spectrum(spectrum, 6)
    return float(lam[0] - lam[4] - 2.0 * np.sqrt(lam[3] * lam[5]))


def physical_entanglement(spectrum, eta):
    """eta * max{0, e_mems(spectrum)} for eta in [0, 1]."""
    if not 0.0 <= eta <= 1.0:
        raise EtaOutOfRange(f"eta={eta} outside [0, 1]")
    return float(eta * max(0.0, e_mems(spectrum)))


def _check_physical(e, cap, what="E"):
    if e < -DELTA_TOL or e > cap + DELTA_TOL:
        raise UnphysicalEntanglement(f"{what}={e} outside [0, {cap}]")
    return min(max(float(e), 0.0), cap)


def build_mems(spectrum):
    """Maximally entangled mixed state (wrt its spectrum), canonical orientation."""
    lam = as_spectrum(spectrum, 6)
    rho = np.zeros((6, 6), dtype=complex)
    np.fill_diagonal(
        rho,
        ((lam[0] + lam[4]) / 2, lam[1], lam[3], lam[5], lam[2], (lam[0] + lam[4]) / 2),
    )
    rho[0, 5] = rho[5, 0] = (lam[0] - lam[4]) / 2
    return rho


def build_epu_min_tgx(spectrum, entanglement):
    """State with the given spectrum and I-concurrence, minimal TGX form.

    Entanglement must be physical: 0 <= E <= max{0, e_mems(spectrum)}.
    Returns the 6x6 matrix and the case parameters (Q, Omega, Delta).  For
    Q >= 0 the minimal-TGX I-concurrence of the result is exactly E; for
    Q < 0 the only physical E is 0 and the result is separable.
    """
    lam = as_spectrum(spectrum, 6)
    e = _check_physical(entanglement, max(0.0, lam[0] - lam[4] - 2 * np.sqrt(lam[3] * lam[5])))
    gap = lam[0] - lam[4]
    q = gap**2 - (e + 2.0 * np.sqrt(lam[3] * lam[5])) ** 2
    omega = max(0.0, q)
    delta = gap + (1.0 if gap <= DELTA_TOL else 0.0)
    rho = np.zeros((6, 6), dtype=complex)
    np.fill_diagonal(
        rho,
        (
            (lam[0] + lam[4] + np.sqrt(omega)) / 2,
            lam[1],
            lam[3],
            lam[5],
            lam[2],
            (lam[0] + lam[4] - np.sqrt(omega)) / 2,
        ),
    )
    rho[0, 5] = rho[5, 0] = np.sqrt(max(gap**2 - omega, 0.0)) / 2
    return rho, EpuParams(q=q, omega=omega, delta=delta)


def build_epu_x_2x2(spectrum, concurrence):
    """Two-qubit analog: X state of given spectrum and concurrence."""
    lam = as_spectrum(spectrum, 4)
    c = _check_physical(
        concurrence, max(0.0, lam[0] - lam[2] - 2 * np.sqrt(lam[1] * lam[3])), what="C"
    )
    gap = lam[0] - lam[2]
    q = gap**2 - (c + 2.0 * np.sqrt(lam[1] * lam[3])) ** 2
    omega = max(0.0, q)
    rho = np.zeros((4, 4), dtype=complex)
    np.fill_diagonal(
        rho,
        (
            (lam[0] + lam[2] + np.sqrt(omega)) / 2,
            lam[1],
            lam[3],
            (lam[0] + lam[2] - np.sqrt(omega)) / 2,
        ),
    )
    rho[0, 3] = rho[3, 0] = np.sqrt(max(gap**2 - omega, 0.0)) / 2
    return rho


def build_alpha_beta(spectrum, alpha, beta):
    """Minimal TGX state from the two-angle eigenvector family.

    alpha rotates within the {1,6} pair, beta within {3,4}; at
    (alpha, beta) = (pi/4, 0) the result is exactly build_mems(spectrum).
    """
    lam = as_spectrum(spectrum, 6)
    for name, ang in (("alpha", alpha), ("beta", beta)):
        if not 0.0 <= ang <= np.pi / 2 + DELTA_TOL:
            raise AngleOutOfRange(f"{name}={ang} outside [0, pi/2]")
    ca2, sa2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    cb2, sb2 = np.cos(beta) ** 2, np.sin(beta) ** 2
    rho = np.zeros((6, 6), dtype=complex)
    np.fill_diagonal(
        rho,
        (
            lam[0] * ca2 + lam[4] * sa2,
            lam[1],
            lam[3] * cb2 + lam[5] * sb2,
            lam[3] * sb2 + lam[5] * cb2,
            lam[2],
            lam[0] * sa2 + lam[4] * ca2,
        ),
    )
    rho[0, 5] = rho[5, 0] = (lam[0] - lam[4]) / 2 * np.sin(2 * alpha)
    rho[2, 3] = rho[3, 2] = (lam[3] - lam[5]) / 2 * np.sin(2 * beta)
    return rho


def epu_unitary(rho, target):
    """Unitary U with U rho U^dagger = target for states of equal spectrum.

    Built from the two deterministic eigenvector matrices; works under
    degeneracy because the shared eigenvalues are block-scalar on each
    degenerate cluster, so any cluster basis reconstructs the target.
    """
    rho = as_density_matrix(rho)
    target = as_density_matrix(target, dim=rho.shape[0])
    er = hermitian_eig(rho)
    et = hermitian_eig(target)
    if np.max(np.abs(er.values - et.values)) > 1e-9:
        raise SpectrumMismatch("states do not share a spectrum to 1e-9")
    return et.vectors @ er.vectors.conj().T
