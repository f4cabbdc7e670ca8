"""Command-line front end.

Subcommands: construct, measure, ls, sample, verify.  States travel as JSON
documents with complex entries encoded as [re, im] pairs (row-major);
sample streams are CSV.  All floating-point output uses 17 significant
digits so every value round-trips exactly, and identical command lines with
identical seeds produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 input validation,
3 form precondition.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from ._checks import as_density_matrix
from .decompositions import iter_decomposition_samples
from .errors import (
    FormError,
    InvalidState,
    NotMinimalSGX,
    NotMinimalTGX,
    NotXForm,
    QQEntError,
    UnphysicalEntanglement,
)
from .ls import ls_explicit, ls_numeric
from .measures import (
    concurrence_2x2,
    gen_concurrence_max,
    mems_entanglement,
    min_sgx_i_concurrence,
    min_tgx_i_concurrence,
    pure_i_concurrence,
    sampled_gen_preconcurrence,
    x_concurrence,
)
from .numerics import _negativity_unchecked, hermitian_eig
from .states import (
    build_alpha_beta,
    build_epu_min_tgx,
    build_epu_x_2x2,
    build_mems,
    classify,
    e_mems,
    enumerate_lpus,
    physical_entanglement,
)

PURITY_TOL = 1e-10


# -- deterministic serialization ------------------------------------------

def _fmt(x):
    return format(float(x), ".17g")


def dumps_json(obj, indent=0):
    """Minimal JSON emitter with floats printed to 17 significant digits."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k))}: {dumps_json(v, indent + 2)}"
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (int, float, np.integer, np.floating)) for v in seq)
        if flat:
            return "[" + ", ".join(dumps_json(v) for v in seq) + "]"
        items = ",\n".join(f"{inner}{dumps_json(v, indent + 2)}" for v in seq)
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def matrix_to_wire(m):
    m = np.asarray(m, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in m.reshape(-1)]


def ket_to_wire(k):
    return [[float(z.real), float(z.imag)] for z in np.asarray(k, dtype=complex)]


def state_to_wire(rho, mode_dims):
    return {"mode_dims": list(mode_dims), "matrix": matrix_to_wire(rho)}


def state_from_wire(doc):
    """Parse a state document; accepts a record wrapping one under 'state'."""
    if "state" in doc and "matrix" not in doc:
        doc = doc["state"]
    if isinstance(doc.get("outputs"), dict) and "state" in doc["outputs"]:
        doc = doc["outputs"]["state"]
    try:
        n1, n2 = (int(v) for v in doc["mode_dims"])
        entries = np.array(
            [complex(re, im) for re, im in doc["matrix"]], dtype=complex
        )
        dim = n1 * n2
        rho = entries.reshape(dim, dim)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidState(f"malformed state file: {exc}") from exc
    return as_density_matrix(rho, dim=dim), (n1, n2)


def _write(text, output):
    if output is None or output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _load_state(path):
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidState(f"cannot read state file: {exc}") from exc
    return state_from_wire(doc)


def _record(args, inputs, outputs):
    return {
        "tool": "qqent",
        "version": __version__,
        "command": args.command_echo,
        "inputs": inputs,
        "outputs": outputs,
    }


def _parse_spectrum(text, n):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise InvalidState(f"cannot parse spectrum {text!r}") from exc
    if len(vals) != n:
        raise InvalidState(f"expected {n} eigenvalues, got {len(vals)}")
    arr = np.array(vals)
    srt = np.sort(arr)[::-1]
    if np.any(np.abs(srt - arr) > 0):
        print("warning: spectrum was not descending; sorted", file=sys.stderr)
    return srt


def _default_seed(args):
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("QQ_SEED", "0"))


# -- subcommands -----------------------------------------------------------

def cmd_construct(args):
    kind = args.kind
    n = 4 if kind == "epu-x-2x2" else 6
    lam = _parse_spectrum(args.spectrum, n)
    inputs = {"kind": kind, "spectrum": list(lam)}
    outputs = {}
    if kind == "mems":
        rho = build_mems(lam)
    elif kind == "alpha-beta":
        if args.alpha is None or args.beta is None:
            raise InvalidState("alpha-beta requires --alpha and --beta")
        inputs["alpha"] = args.alpha
        inputs["beta"] = args.beta
        rho = build_alpha_beta(lam, args.alpha, args.beta)
    else:
        if (args.entanglement is None) == (args.eta is None):
            raise InvalidState(f"{kind} requires exactly one of --entanglement/--eta")
        if kind == "epu-min-tgx":
            e = (
                args.entanglement
                if args.entanglement is not None
                else physical_entanglement(lam, args.eta)
            )
            inputs["entanglement"] = e
            if args.eta is not None:
                inputs["eta"] = args.eta
            rho, params = build_epu_min_tgx(lam, e)
            outputs.update({"q": params.q, "omega": params.omega, "delta": params.delta})
        else:  # epu-x-2x2
            cap = max(0.0, lam[0] - lam[2] - 2.0 * np.sqrt(max(lam[1] * lam[3], 0.0)))
            c = args.entanglement if args.entanglement is not None else args.eta * cap
            if args.eta is not None and not 0.0 <= args.eta <= 1.0:
                raise UnphysicalEntanglement(f"eta={args.eta} outside [0, 1]")
            inputs["concurrence"] = c
            rho = build_epu_x_2x2(lam, c)
    dims = (2, 2) if kind == "epu-x-2x2" else (2, 3)
    outputs["state"] = state_to_wire(rho, dims)
    _write(dumps_json(_record(args, inputs, outputs)), args.output)
    return 0


def cmd_measure(args):
    rho, dims = _load_state(args.input)
    flags = classify(rho) if dims == (2, 3) else None
    eig = hermitian_eig(rho)
    purity = float(np.trace(rho @ rho).real)
    outputs = {
        "mode_dims": list(dims),
        "spectrum": list(eig.values),
        "purity": purity,
        "negativity": _negativity_unchecked(rho, dims),
    }
    if dims == (2, 3):
        outputs["classification"] = {
            "is_x": flags.is_x,
            "is_tgx": flags.is_tgx,
            "is_min_tgx": flags.is_min_tgx,
            "is_min_sgx": flags.is_min_sgx,
            "is_epu_min_tgx": flags.is_epu_min_tgx,
            "is_mems_form": flags.is_mems_form,
            "is_diagonal": flags.is_diagonal,
        }
        outputs["e_mems"] = e_mems(eig.values)
        outputs["mems_entanglement"] = mems_entanglement(eig.values)
        outputs["gen_concurrence_max"] = gen_concurrence_max(eig.values)
        if flags.is_min_tgx:
            outputs["min_tgx_i_concurrence"] = min_tgx_i_concurrence(rho)
        else:
            outputs["min_tgx_i_concurrence"] = None
            outputs["min_tgx_reason"] = "NotMinimalTGX"
        if flags.is_min_sgx:
            outputs["min_sgx_i_concurrence"] = min_sgx_i_concurrence(rho)
        else:
            outputs["min_sgx_i_concurrence"] = None
            outputs["min_sgx_reason"] = "NotMinimalSGX"
        if purity >= 1.0 - PURITY_TOL:
            outputs["pure_i_concurrence"] = pure_i_concurrence(eig.vectors[:, 0])
    else:
        outputs["concurrence"] = concurrence_2x2(rho)
        try:
            outputs["x_concurrence"] = x_concurrence(rho)
        except NotXForm:
            outputs["x_concurrence"] = None
            outputs["x_concurrence_reason"] = "NotXForm"
    _write(dumps_json(_record(args, {"input": args.input}, outputs)), args.output)
    return 0


def _ls_residuals(rho, dec):
    recon = dec.p_e * dec.rho_e + (1.0 - dec.p_e) * dec.rho_s
    if dec.p_e > 1e-12:
        top = hermitian_eig(dec.rho_e).vectors[:, 0]
        optimality = abs(
            dec.p_e * pure_i_concurrence(top)
            - max(0.0, dec.xi[0] - dec.xi[1] - dec.xi[2] - dec.xi[3])
        )
    else:
        optimality = 0.0
    neg = 0.0 if dec.p_e >= 1.0 - 1e-12 else _negativity_unchecked(dec.rho_s)
    return {
        "reconstruction": float(np.max(np.abs(recon - rho))),
        "optimality": float(optimality),
        "separable_negativity": float(neg),
    }


def cmd_ls(args):
    rho, dims = _load_state(args.input)
    if dims != (2, 3):
        raise InvalidState("ls requires a 2x3 state")
    if args.route == "explicit":
        flags = classify(rho)
        if not flags.is_epu_min_tgx:
            raise NotMinimalTGX("explicit route requires the constructed single-coherence form")
        eig = hermitian_eig(rho)
        if not flags.is_min_tgx:
            raise NotMinimalTGX("explicit route requires minimal TGX form")
        e = min_tgx_i_concurrence(rho)
        ref, _ = build_epu_min_tgx(eig.values, e)
        if np.max(np.abs(rho - ref)) > 1e-8:
            raise NotMinimalSGX(
                "explicit route requires the canonical orientation (coherence at levels 1,6)"
            )
        dec = ls_explicit(eig.values, e)
        inputs = {"route": "explicit", "spectrum": list(eig.values), "entanglement": e}
    else:
        dec = ls_numeric(rho)
        inputs = {"route": "numeric"}
    outputs = {
        "p_e": dec.p_e,
        "xi": list(dec.xi),
        "x_kets": [ket_to_wire(k) for k in dec.x_kets],
        "rho_e": state_to_wire(dec.rho_e, dims),
        "rho_s": state_to_wire(dec.rho_s, dims),
        "residuals": _ls_residuals(rho, dec),
    }
    if dec.n1 is not None:
        outputs["n1"] = dec.n1
        outputs["n2"] = dec.n2
    _write(dumps_json(_record(args, inputs, outputs)), args.output)
    return 0


def _formula_value(rho):
    flags = classify(rho)
    if flags.is_min_tgx:
        return min_tgx_i_concurrence(rho)
    if flags.is_min_sgx:
        return min_sgx_i_concurrence(rho)
    if float(np.trace(rho @ rho).real) >= 1.0 - PURITY_TOL:
        return pure_i_concurrence(hermitian_eig(rho).vectors[:, 0])
    return None


def cmd_sample(args):
    rho, dims = _load_state(args.input)
    if dims != (2, 3):
        raise InvalidState("sample requires a 2x3 state")
    seed = _default_seed(args)
    if args.D == 2:
        header = ["trial_index", "theta", "phi", "avg_E"]
    elif args.D == 1:
        header = ["trial_index", "avg_E"]
    else:
        header = ["trial_index", "trial_seed", "avg_E"]
    best = np.inf
    rows = []
    for index, params, avg in iter_decomposition_samples(
        rho, args.D, budget=args.budget, seed=seed
    ):
        best = min(best, avg)
        rows.append((index, params, avg))
    formula = _formula_value(rho)
    if args.format == "json":
        outputs = {
            "columns": header,
            "rows": [
                [index, *[p for p in params], avg] for index, params, avg in rows
            ],
            "min_avg_E": best,
            "formula_E": formula,
        }
        inputs = {"input": args.input, "D": args.D, "budget": args.budget, "seed": seed}
        _write(dumps_json(_record(args, inputs, outputs)), args.output)
        return 0
    lines = [",".join(header)]
    for index, params, avg in rows:
        fields = [str(index)]
        for p in params:
            fields.append(str(p) if isinstance(p, int) else _fmt(p))
        fields.append(_fmt(avg))
        lines.append(",".join(fields))
    lines.append(
        "min_avg_E,%s,formula_E,%s" % (_fmt(best), "" if formula is None else _fmt(formula))
    )
    _write("\n".join(lines), args.output)
    return 0


# -- verification suites ---------------------------------------------------

def _random_spectrum(rng, rank=None):
    rank = int(rng.integers(1, 7)) if rank is None else rank
    lam = np.zeros(6)
    lam[:rank] = np.sort(rng.dirichlet(np.ones(rank)))[::-1]
    return lam


def _suite_epu(trials, seed):
    rng = np.random.default_rng(seed)
    worst = {"spectrum": 0.0, "entanglement": 0.0}
    for t in range(trials):
        lam = _random_spectrum(rng)
        e = physical_entanglement(lam, rng.uniform())
        rho, params = build_epu_min_tgx(lam, e)
        expected = e if params.q >= 0.0 else 0.0
        worst["spectrum"] = max(
            worst["spectrum"], float(np.max(np.abs(hermitian_eig(rho).values - lam)))
        )
        worst["entanglement"] = max(
            worst["entanglement"], abs(min_tgx_i_concurrence(rho) - expected)
        )
        if worst["spectrum"] > 1e-9 or worst["entanglement"] > 1e-9:
            return False, worst, f"trial {t}: spectrum={list(lam)} E={e}"
    return True, worst, ""


def _suite_ls(trials, seed):
    rng = np.random.default_rng(seed)
    worst = {"reconstruction": 0.0, "optimality": 0.0, "separable_negativity": 0.0}
    for t in range(trials):
        lam = _random_spectrum(rng)
        e = physical_entanglement(lam, rng.uniform())
        rho, params = build_epu_min_tgx(lam, e)
        dec = ls_explicit(lam, e)
        recon = dec.p_e * dec.rho_e + (1.0 - dec.p_e) * dec.rho_s
        expected = e if params.q >= 0.0 else 0.0
        if dec.p_e > 1e-12:
            top = hermitian_eig(dec.rho_e).vectors[:, 0]
            opt = abs(dec.p_e * pure_i_concurrence(top) - expected)
        else:
            opt = abs(expected)
        neg = 0.0 if dec.p_e >= 1.0 - 1e-12 else _negativity_unchecked(dec.rho_s)
        worst["reconstruction"] = max(
            worst["reconstruction"], float(np.max(np.abs(recon - rho)))
        )
        worst["optimality"] = max(worst["optimality"], opt)
        worst["separable_negativity"] = max(worst["separable_negativity"], neg)
        if (
            worst["reconstruction"] > 1e-9
            or worst["optimality"] > 1e-9
            or worst["separable_negativity"] > 1e-8
        ):
            return False, worst, f"trial {t}: spectrum={list(lam)} E={e}"
    return True, worst, ""


def _suite_formulas(trials, seed):
    rng = np.random.default_rng(seed)
    lpus = enumerate_lpus()
    worst = {"pure_consistency": 0.0, "x_equivalence": 0.0, "lpu_invariance": 0.0}
    for t in range(trials):
        psi = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        psi /= np.linalg.norm(psi)
        red = psi.reshape(2, 3) @ psi.reshape(2, 3).conj().T
        oracle = np.sqrt(max(2.0 * (1.0 - float(np.trace(red @ red).real)), 0.0))
        worst["pure_consistency"] = max(
            worst["pure_consistency"], abs(pure_i_concurrence(psi) - oracle)
        )
        lam4 = np.sort(rng.dirichlet(np.ones(4)))[::-1]
        c = rng.uniform() * max(0.0, lam4[0] - lam4[2] - 2 * np.sqrt(lam4[1] * lam4[3]))
        rho4 = build_epu_x_2x2(lam4, c)
        worst["x_equivalence"] = max(
            worst["x_equivalence"], abs(concurrence_2x2(rho4) - x_concurrence(rho4))
        )
        lam = _random_spectrum(rng)
        rho = build_alpha_beta(lam, rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi / 2))
        ref = min_tgx_i_concurrence(rho)
        u = lpus[int(rng.integers(len(lpus)))]
        worst["lpu_invariance"] = max(
            worst["lpu_invariance"], abs(min_tgx_i_concurrence(u @ rho @ u.T) - ref)
        )
        if (
            worst["pure_consistency"] > 1e-10
            or worst["x_equivalence"] > 1e-9
            or worst["lpu_invariance"] > 1e-10
        ):
            return False, worst, f"trial {t}"
    return True, worst, ""


def _suite_genconc(trials, seed):
    rng = np.random.default_rng(seed)
    worst = {"bound_excess": -np.inf}
    for t in range(trials):
        lam = _random_spectrum(rng)
        bound = gen_concurrence_max(lam)
        val = sampled_gen_preconcurrence(lam, 200, seed=int(rng.integers(2**31)))
        worst["bound_excess"] = max(worst["bound_excess"], val - bound)
        if worst["bound_excess"] > 1e-9:
            return False, worst, f"trial {t}: spectrum={list(lam)}"
    return True, worst, ""


_SUITES = {
    "epu": _suite_epu,
    "ls": _suite_ls,
    "formulas": _suite_formulas,
    "genconc": _suite_genconc,
}


def cmd_verify(args):
    if args.trials < 1:
        raise InvalidState("trials must be >= 1")
    seed = _default_seed(args)
    ok, worst, detail = _SUITES[args.suite](args.trials, seed)
    status = "PASS" if ok else "FAIL"
    residuals = " ".join(f"{k}={_fmt(v)}" for k, v in worst.items())
    print(f"{status} suite={args.suite} trials={args.trials} seed={seed} {residuals}")
    if not ok:
        print(f"  offending input: {detail}", file=sys.stderr)
        return 1
    return 0


# -- entry point ------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="qqent", description="Qubit-qutrit entanglement toolkit"
    )
    parser.add_argument("--version", action="version", version=f"qqent {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build a state file")
    p.add_argument("kind", choices=["epu-min-tgx", "mems", "alpha-beta", "epu-x-2x2"])
    p.add_argument("--spectrum", required=True, help="comma-separated descending eigenvalues")
    p.add_argument("--entanglement", type=float, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("measure", help="classify a state and report measures")
    p.add_argument("input", help="state file path or - for stdin")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("ls", help="entangled/separable optimal split")
    p.add_argument("input")
    p.add_argument("--route", choices=["explicit", "numeric"], default="numeric")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_ls)

    p = sub.add_parser("sample", help="stream decomposition averages as CSV")
    p.add_argument("input")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run a randomized invariant suite")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command_echo = argv
    try:
        return args.func(args)
    except FormError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except QQEntError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
