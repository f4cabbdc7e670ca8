"""Qubit-qutrit entanglement toolkit.

Constructs the special 2x3 state families, evaluates their closed-form
I-concurrence, synthesizes states for any physical spectrum-entanglement
pair, computes optimal entangled/separable splits, and verifies the
formulas as minimum averages over sampled decompositions.
"""

from .decompositions import (
    MixerParams,
    PureDecomposition,
    average_entanglement,
    decompose,
    iter_decomposition_samples,
    min_average_search,
    mixer_2,
    rank_of,
)
from .ls import (
    LSDecomposition,
    ls_explicit,
    ls_numeric,
    spin_flip_operator,
    tau_matrix,
    wootters_xkets_explicit,
    xi_explicit,
    xi_explicit_2x2,
)
from .measures import (
    alpha_solve,
    concurrence_2x2,
    e_alpha_beta,
    gen_concurrence_max,
    mems_entanglement,
    min_sgx_i_concurrence,
    min_tgx_i_concurrence,
    pure_i_concurrence,
    quartet_x_concurrence,
    sampled_gen_preconcurrence,
    subspace_concurrence_vector,
    x_concurrence,
)
from .numerics import (
    HermitianEig,
    TakagiFactorization,
    haar_unitary,
    hermitian_eig,
    partial_transpose_negativity,
    takagi_symmetric,
)
from .states import (
    EpuParams,
    StateClass,
    build_alpha_beta,
    build_epu_min_tgx,
    build_epu_x_2x2,
    build_mems,
    classify,
    e_mems,
    enumerate_lpus,
    epu_unitary,
    me_tgx_states,
    physical_entanglement,
    quartets,
    subspace_extract,
)

__version__ = "0.1.0"

__all__ = [
    "EpuParams",
    "HermitianEig",
    "LSDecomposition",
    "MixerParams",
    "PureDecomposition",
    "StateClass",
    "TakagiFactorization",
    "alpha_solve",
    "average_entanglement",
    "build_alpha_beta",
    "build_epu_min_tgx",
    "build_epu_x_2x2",
    "build_mems",
    "classify",
    "concurrence_2x2",
    "decompose",
    "e_alpha_beta",
    "e_mems",
    "enumerate_lpus",
    "epu_unitary",
    "gen_concurrence_max",
    "haar_unitary",
    "hermitian_eig",
    "iter_decomposition_samples",
    "ls_explicit",
    "ls_numeric",
    "me_tgx_states",
    "mems_entanglement",
    "min_average_search",
    "min_sgx_i_concurrence",
    "min_tgx_i_concurrence",
    "mixer_2",
    "partial_transpose_negativity",
    "physical_entanglement",
    "pure_i_concurrence",
    "quartet_x_concurrence",
    "quartets",
    "rank_of",
    "sampled_gen_preconcurrence",
    "spin_flip_operator",
    "subspace_concurrence_vector",
    "subspace_extract",
    "takagi_symmetric",
    "tau_matrix",
    "wootters_xkets_explicit",
    "x_concurrence",
    "xi_explicit",
    "xi_explicit_2x2",
]
