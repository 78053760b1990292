"""Batch command-line interface.

Subcommands: verify-constants, divergence, analyze-chain, mixing-time,
quantum-analyze.  Every run emits a JSON report on stdout: verify-constants
as JSON lines (header line plus one certificate per generator), the rest as a
single JSON document.  Exit codes: 0 on success, 2 when an asserted
inequality fails (the report is still emitted), 1 on input errors.

Numbers are printed with 17 significant digits; infinities appear as the
string "inf".  Values in divergence units are reported in nats unless
``--bits`` is given, which applies the 1/ln(2) conversion at presentation
time only.  The environment variable DIVLAB_SEED overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .contraction import (
    SampleBudget,
    contraction_rate_profile,
    eta_chi2,
    eta_f_estimate,
    eta_f_upper_bounds,
    mixing_time_bounds,
)
from .divergence import as_weight_vec, f_divergence, total_variation, chi_squared
from .generators import default_registry, from_spec
from .markov import as_channel, stationary_distribution, structure
from .pinsker import certify_constant
from .quantum import (
    KrausChannel,
    QuantumBudget,
    channel_structure,
    check_density_matrix,
    quantum_eta_bounds,
    quantum_eta_estimate,
    quantum_mixing_time_bounds,
)

SCHEMA_VERSION = "1"
LN2 = math.log(2.0)


class InputError(Exception):
    """Malformed files, dimension mismatches, non-stochastic matrices."""


# ---------------------------------------------------------------------------
# JSON emission: 17 significant digits, "inf" for infinities, deterministic


def _fmt(value):
    if value is None or isinstance(value, (str, bool, int)):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return RawFloat(v)
    if isinstance(value, np.ndarray):
        return [_fmt(x) for x in value.tolist()]
    if isinstance(value, complex):
        return [_fmt(value.real), _fmt(value.imag)]
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    return str(value)


class RawFloat:
    __slots__ = ("v",)

    def __init__(self, v: float):
        self.v = v


def _dumps(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, RawFloat):
        return f"{obj.v:.17g}"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(k)}: {_dumps(v, indent + 2)}" for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        inner = ", ".join(_dumps(v, indent) for v in obj)
        if len(inner) <= 100:
            return "[" + inner + "]"
        inner = ",\n".join(f"{pad}  {_dumps(v, indent + 2)}" for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"unserializable {type(obj)}")


def dumps_report(obj) -> str:
    return _dumps(_fmt(obj))


# ---------------------------------------------------------------------------
# parsing


def _parse_complex_matrix(obj) -> np.ndarray:
    """Accept {"re": [[..]], "im": [[..]]} or nested [re, im] entry pairs or
    a plain real matrix."""
    if isinstance(obj, dict):
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise InputError("re and im blocks must have equal shapes")
        return re + 1j * im
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 3 and arr.shape[2] == 2:
        return arr[:, :, 0] + 1j * arr[:, :, 1]
    if arr.ndim == 2:
        return arr.astype(complex)
    raise InputError("matrix entries must be scalars or [re, im] pairs")


def parse_matrix(path: str) -> np.ndarray:
    """Channel matrix from CSV (row-major, '#' comments, optional header) or
    JSON {"matrix": [[...]]}; validated column-stochastic at 1e-8."""
    try:
        text = open(path).read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = None
    if path.endswith(".json") or text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {path}: {exc}") from exc
        if "matrix" not in obj:
            raise InputError(f"{path}: JSON channel files need a 'matrix' key")
        rows = obj["matrix"]
    else:
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            cells = [c.strip() for c in line.split(",")]
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if not rows:
                    continue  # header row
                raise InputError(f"{path}: non-numeric row {line!r}")
    try:
        return as_channel(np.asarray(rows, dtype=float), column_sum_tol=1e-8)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_state(path: str) -> np.ndarray:
    """Density matrix from JSON ({"re": .., "im": ..} or [re, im] pairs)."""
    try:
        obj = json.loads(open(path).read())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc
    payload = obj.get("state", obj) if isinstance(obj, dict) else obj
    try:
        return check_density_matrix(_parse_complex_matrix(payload))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_kraus(path: str) -> KrausChannel:
    """Kraus channel from JSON {"kraus": [K, ...]}."""
    try:
        obj = json.loads(open(path).read())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(obj, dict) or "kraus" not in obj:
        raise InputError(f"{path}: JSON Kraus files need a 'kraus' key")
    try:
        return KrausChannel(
            kraus=tuple(_parse_complex_matrix(K) for K in obj["kraus"])
        )
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse_vector(text: str) -> np.ndarray:
    try:
        return as_weight_vec([float(c) for c in text.split(",")])
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}: {exc}") from exc


def _digest(args: argparse.Namespace, files: list[str]) -> str:
    h = hashlib.sha256()
    for key in sorted(vars(args)):
        if key in ("func",):
            continue
        h.update(f"{key}={vars(args)[key]!r};".encode())
    for path in files:
        try:
            h.update(open(path, "rb").read())
        except OSError:
            pass
    return h.hexdigest()


def _resolve_seed(args: argparse.Namespace) -> int:
    env = os.environ.get("DIVLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"DIVLAB_SEED must be an integer, got {env!r}") from exc
    return getattr(args, "seed", 0)


def _envelope(args, files, seed, results, warnings_list):
    return {
        "schema_version": SCHEMA_VERSION,
        "divlab_version": __version__,
        "command": [args.command] + getattr(args, "raw_args", []),
        "inputs_digest": _digest(args, files),
        "seed": seed,
        "units": "bits" if getattr(args, "bits", False) else "nats",
        "results": results,
        "warnings": warnings_list,
    }


def _units(value: float, bits: bool) -> float:
    return value / LN2 if bits else value


# ---------------------------------------------------------------------------
# subcommands


def _cmd_verify_constants(args) -> int:
    seed = _resolve_seed(args)
    header = {
        "schema_version": SCHEMA_VERSION,
        "divlab_version": __version__,
        "command": [args.command] + getattr(args, "raw_args", []),
        "inputs_digest": _digest(args, []),
        "seed": seed,
        "kind": "header",
    }
    print(dumps_report(header).replace("\n", " "))
    all_ok = True
    for g in default_registry():
        cert = certify_constant(g, grid_n=args.grid, boundary_eps=args.boundary_eps)
        ok = cert.certified
        all_ok &= ok
        line = {
            "bound_id": "pinsker-constant",
            "generator": cert.generator,
            "lambda": cert.lam,
            "claimed": cert.claimed_L,
            "grid_min": cert.grid_min,
            "refined_min": cert.refined_min,
            "argmin": list(cert.refined_argmin),
            "verdict": cert.verdict,
            "tight": cert.tight,
        }
        print(dumps_report(line).replace("\n", " "))
    return 0 if all_ok else 2


def _cmd_divergence(args) -> int:
    seed = _resolve_seed(args)
    g = from_spec(args.g)
    p = _parse_vector(args.p)
    q = _parse_vector(args.q)
    if p.shape != q.shape:
        raise InputError("p and q must have the same length")
    warnings_list = []
    if float(p[q <= 0.0].sum()) > 0.0:
        warnings_list.append(
            "p is not absolutely continuous with respect to q; value uses the "
            "f'(inf) convention"
        )
    value = f_divergence(g, p, q)
    results = {
        "generator": g.label,
        "divergence": {"bound_id": "f-divergence-value", "value": _units(value, args.bits)},
        "total_variation": total_variation(p, q),
        "chi_squared": chi_squared(p, q),
    }
    print(dumps_report(_envelope(args, [], seed, results, warnings_list)))
    return 0


def _structure_dict(info) -> dict:
    return {
        "scrambling": info.scrambling,
        "irreducible": info.irreducible,
        "aperiodic": info.aperiodic,
        "indecomposable": info.indecomposable,
        "stationary": info.stationary,
        "stationary_unique": info.stationary_unique,
        "positivity_index": info.positivity_index,
    }


def _cmd_analyze_chain(args) -> int:
    seed = _resolve_seed(args)
    W = parse_matrix(args.matrix)
    g = from_spec(args.generator)
    budget = SampleBudget(seed=seed)
    warnings_list: list[str] = []
    violations: list[str] = []

    info = structure(W)
    results: dict = {"structure": _structure_dict(info)}
    pi, unique = stationary_distribution(W)
    eta2 = eta_chi2(W, pi)
    est, witness = eta_f_estimate(W, pi, g, budget)
    nonlinear, linear = eta_f_upper_bounds(W, pi, g, budget)
    results["contraction"] = {
        "reference": pi,
        "eta_chi2": {"bound_id": "eta-chi2-second-singular-value", "value": eta2},
        "eta_f_estimate": {
            "bound_id": "eta-f-sampled-lower-estimate",
            "value": est,
            "witness": witness,
        },
        "nonlinear_upper": {"bound_id": "eta-f-nonlinear-upper", "value": nonlinear},
        "linear_upper": {"bound_id": "eta-f-linear-upper", "value": linear},
    }
    if math.isfinite(nonlinear) and est > nonlinear + 1e-9:
        violations.append("eta_f estimate exceeds nonlinear upper bound")
    if linear is not None and est > linear + 1e-9:
        violations.append("eta_f estimate exceeds linear upper bound")

    try:
        mix = mixing_time_bounds(W, args.delta, g if g.g_concave else None)
        results["mixing_time"] = {
            "tv_bound": {"bound_id": "chi2-mixing-time-tv", "value": mix.tv_bound},
            "f_bound": {"bound_id": "chi2-mixing-time-f", "value": mix.f_bound},
            "empirical_tv": mix.empirical_tv,
            "empirical_f": mix.empirical_f,
        }
        if not mix.empirical_within_bound:
            violations.append("empirical mixing time exceeds its bound")
    except ValueError as exc:
        warnings_list.append(f"mixing times unavailable: {exc}")

    try:
        profile = contraction_rate_profile(W, g, args.profile_n, budget)
        results["rate_profile"] = {
            "bound_id": "contraction-rate-vs-eta-chi2",
            "eta_chi2": eta2,
            "points": [
                {"n": pt.n, "eta_f_root": pt.eta_f_root, "envelope": pt.envelope}
                for pt in profile
            ],
        }
        if not all(pt.within_envelope for pt in profile):
            violations.append("rate profile exceeds its envelope")
    except ValueError as exc:
        warnings_list.append(f"rate profile unavailable: {exc}")

    report = _envelope(args, [args.matrix], seed, results, warnings_list)
    report["violations"] = violations
    print(dumps_report(report))
    return 2 if violations else 0


def _cmd_mixing_time(args) -> int:
    seed = _resolve_seed(args)
    W = parse_matrix(args.matrix)
    g = from_spec(args.generator) if args.generator else None
    mix = mixing_time_bounds(W, args.delta, g)
    results = {
        "eta_chi2": {"bound_id": "eta-chi2-second-singular-value", "value": mix.eta_chi2},
        "pi_min": mix.pi_min,
        "tv_bound": {"bound_id": "chi2-mixing-time-tv", "value": mix.tv_bound},
        "f_bound": {"bound_id": "chi2-mixing-time-f", "value": mix.f_bound},
        "empirical_tv": mix.empirical_tv,
        "empirical_f": mix.empirical_f,
    }
    violations = [] if mix.empirical_within_bound else ["empirical mixing time exceeds bound"]
    report = _envelope(args, [args.matrix], seed, results, list(mix.warnings))
    report["violations"] = violations
    print(dumps_report(report))
    return 2 if violations else 0


def _cmd_quantum_analyze(args) -> int:
    seed = _resolve_seed(args)
    channel = parse_kraus(args.channel)
    g = from_spec(args.generator)
    budget = QuantumBudget(seed=seed)
    warnings_list: list[str] = []
    violations: list[str] = []

    info = channel_structure(channel)
    results: dict = {
        "structure": {
            "fixed_point": info.fixed_point,
            "unique": info.unique,
            "mixing": info.mixing,
            "strongly_mixing": info.strongly_mixing,
            "positivity_index": info.positivity_index,
        }
    }
    if info.fixed_point is None or not info.mixing:
        warnings_list.append("channel is not mixing; contraction section skipped")
    else:
        pi = info.fixed_point
        est, _ = quantum_eta_estimate(channel, pi, g, budget)
        results["contraction"] = {
            "eta_f_estimate": {
                "bound_id": "petz-eta-f-sampled-lower-estimate",
                "value": est,
                "estimate_based": True,
            },
        }
        if g.operator_convex and g.pinsker_constant:
            nonlinear, linear = quantum_eta_bounds(channel, pi, g, budget)
            results["contraction"]["nonlinear_upper"] = {
                "bound_id": "petz-eta-f-nonlinear-upper",
                "value": nonlinear,
            }
            results["contraction"]["linear_upper"] = {
                "bound_id": "petz-eta-f-linear-upper",
                "value": linear,
            }
            if math.isfinite(nonlinear) and est > nonlinear + 1e-9:
                violations.append("quantum eta_f estimate exceeds nonlinear bound")
            if linear is not None and est > linear + 1e-9:
                violations.append("quantum eta_f estimate exceeds linear bound")
        else:
            warnings_list.append(
                "generator is not flagged operator convex; upper bounds skipped"
            )
        try:
            can_f = g.operator_convex and g.g_concave and math.isfinite(g.f_at_zero)
            qmix = quantum_mixing_time_bounds(
                channel, args.delta, g if can_f else None, budget
            )
            results["mixing_time"] = {
                "td_bound": {"bound_id": "petz-chi2-mixing-time-td", "value": qmix.td_bound},
                "f_bound": {"bound_id": "petz-chi2-mixing-time-f", "value": qmix.f_bound},
                "empirical_td": qmix.empirical_td,
                "empirical_f": qmix.empirical_f,
                "eta_chi2_estimate": qmix.eta_chi2_estimate,
                "estimate_based": qmix.estimate_based,
            }
            warnings_list.extend(qmix.warnings)
            if qmix.empirical_td is not None and qmix.empirical_td > qmix.td_bound:
                violations.append("empirical trace-distance mixing time exceeds bound")
        except ValueError as exc:
            warnings_list.append(f"quantum mixing times unavailable: {exc}")

    report = _envelope(args, [args.channel], seed, results, warnings_list)
    report["violations"] = violations
    print(dumps_report(report))
    return 2 if violations else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divlab",
        description="f-divergence inequalities, contraction coefficients, and "
        "mixing-time bounds over finite alphabets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-constants", help="certify all Pinsker constants")
    s.add_argument("--grid", type=int, default=512)
    s.add_argument("--boundary-eps", type=float, default=1e-4)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_verify_constants)

    s = sub.add_parser("divergence", help="evaluate one f-divergence")
    s.add_argument("--g", required=True, help="generator spec, e.g. hellinger:alpha=1.5")
    s.add_argument("--p", required=True, help="comma-separated vector")
    s.add_argument("--q", required=True, help="comma-separated vector")
    s.add_argument("--bits", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_divergence)

    s = sub.add_parser("analyze-chain", help="full classical chain report")
    s.add_argument("--matrix", required=True)
    s.add_argument("--generator", required=True)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--profile-n", type=int, default=6)
    s.add_argument("--bits", action="store_true")
    s.set_defaults(func=_cmd_analyze_chain)

    s = sub.add_parser("mixing-time", help="mixing-time bounds only")
    s.add_argument("--matrix", required=True)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--generator", default=None)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_mixing_time)

    s = sub.add_parser("quantum-analyze", help="Petz-divergence channel report")
    s.add_argument("--channel", required=True, help="JSON Kraus file")
    s.add_argument("--generator", required=True)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_quantum_analyze)
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.raw_args = argv[1:]
        return args.func(args)
    except (InputError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())
