"""Command-line interface: instance generation, checks and reports.

Exit codes: 0 all selected checks passed, 1 at least one failed, 2 usage or
parse errors.  Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from .checks import SUITES, run_checks
from .config import DEFAULT_CONFIG
from .frames import NotRieszError, dual_riesz_basis
from .generate import GEN_KINDS, GenerationError, gen
from .instances import InstanceFormatError, load, serialize
from .multipliers import SymbolTooSmallError, assemble, invert, norm_bounds
from .perturbation import CONTINUITY_KINDS, ContinuityViolation, continuity_suite


def _exponent(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad exponent {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _float_list(text: str) -> list[float]:
    return [_exponent(t) for t in text.split(",") if t.strip()]


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    # accepted before or after the subcommand; suppressed defaults keep the
    # subparser from clobbering values parsed at the top level
    d = (lambda v: argparse.SUPPRESS if suppress else v)
    p.add_argument("--seed", type=int, default=d(DEFAULT_CONFIG.seed))
    p.add_argument("--tol-exact", type=float, default=d(DEFAULT_CONFIG.tol_exact))
    p.add_argument("--tol-estimate", type=float, default=d(DEFAULT_CONFIG.tol_estimate))
    p.add_argument("--restarts", type=int, default=d(DEFAULT_CONFIG.restarts))
    p.add_argument("--output", choices=("json", "text"), default=d("text"))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pgframes",
        description="Operator frame sequences, Bessel multipliers and certified bounds.",
    )
    _add_globals(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance of a requested kind")
    _add_globals(g, suppress=True)
    g.add_argument("--kind", choices=GEN_KINDS, default="riesz-pair")
    g.add_argument("--x2-dim", type=int, required=True)
    g.add_argument("--y-dims", type=_int_list, required=True, metavar="D1,D2,...")
    g.add_argument("--x1-dim", type=int, default=None)
    g.add_argument("--frame-exponent", type=_exponent, default=2.0)
    g.add_argument("--x1-exponent", type=_exponent, default=2.0)
    g.add_argument("--x2-exponent", type=_exponent, default=2.0)
    g.add_argument("--y-exponents", type=_float_list, default=None, metavar="R1,R2,...")
    g.add_argument("--symbol-min", type=float, default=0.2)
    g.add_argument("--out", default=None, help="write to this path instead of stdout")

    c = sub.add_parser("check", help="run check suites over an instance file")
    _add_globals(c, suppress=True)
    c.add_argument("instance")
    c.add_argument("--suites", default=None, metavar=",".join(SUITES[:3]) + ",...")
    c.add_argument("--epsilon", type=float, default=0.01)
    c.add_argument("--n-max", type=int, default=None)

    for name, help_text in (
        ("bounds", "multiplier norm bounds and the direct estimate"),
        ("dual", "dual Riesz bases with residuals"),
        ("multiply", "assemble the multiplier matrix"),
        ("invert", "invert the multiplier via the dual bases"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p, suppress=True)
        p.add_argument("instance")
        if name == "multiply":
            p.add_argument("--apply", type=_float_list, default=None, metavar="G1,G2,...")

    p = sub.add_parser("perturb", help="perturbation bound report")
    _add_globals(p, suppress=True)
    p.add_argument("instance")
    p.add_argument("--epsilon", type=float, default=0.01)

    p = sub.add_parser("continuity", help="parameter-continuity traces")
    _add_globals(p, suppress=True)
    p.add_argument("instance")
    p.add_argument("--kind", choices=CONTINUITY_KINDS, default="joint")
    p.add_argument("--p1", type=_exponent, default=None)
    p.add_argument("--n-max", type=int, default=None)
    return ap


def _config_from(args) -> "DEFAULT_CONFIG.__class__":
    return dataclasses.replace(
        DEFAULT_CONFIG,
        seed=args.seed,
        tol_exact=args.tol_exact,
        tol_estimate=args.tol_estimate,
        restarts=args.restarts,
    )


def _emit(doc: dict, mode: str, text_renderer=None) -> None:
    if mode == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif text_renderer is not None:
        print(text_renderer())
    else:
        for k, v in doc.items():
            print(f"{k}: {v}")


def _cmd_gen(args, cfg) -> int:
    try:
        inst = gen(
            args.kind,
            x2_dim=args.x2_dim,
            y_dims=args.y_dims,
            x1_dim=args.x1_dim,
            frame_exponent=args.frame_exponent,
            x1_exponent=args.x1_exponent,
            x2_exponent=args.x2_exponent,
            y_exponents=args.y_exponents,
            seed=args.seed,
            symbol_min=args.symbol_min,
            cfg=cfg,
        )
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return 2
    text = serialize(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(text)
    return 0


def _cmd_check(args, cfg) -> int:
    inst = load(args.instance)
    suites = [s.strip() for s in args.suites.split(",")] if args.suites else None
    report = run_checks(inst, suites, cfg, epsilon=args.epsilon, n_max=args.n_max)
    _emit(report.to_dict(), args.output, report.render_text)
    return 0 if report.ok else 1


def _cmd_bounds(args, cfg) -> int:
    inst = load(args.instance)
    M = assemble(inst.symbol_obj(), inst.lam_sequence(), inst.theta_sequence())
    nb = norm_bounds(M, cfg)
    doc = {
        "upper": nb.upper.value,
        "upper_method": nb.upper.method,
        "estimate": nb.estimate.value,
        "estimate_upper": nb.estimate_upper.value,
        "lower": nb.lower.value if nb.lower else None,
        "lower_reason": nb.lower_reason,
    }
    _emit(doc, args.output)
    ok = nb.estimate.value <= nb.upper.value + 1e-9
    return 0 if ok else 1


def _cmd_dual(args, cfg) -> int:
    inst = load(args.instance)
    doc, code = {}, 0
    for tag, seq in (("lam", inst.lam_sequence()), ("theta", inst.theta_sequence())):
        try:
            dual = dual_riesz_basis(seq, cfg)
        except NotRieszError as exc:
            doc[tag] = f"skipped: {exc}"
            continue
        S = np.hstack([m.T for m in seq.mats])
        res = float(np.abs(np.vstack(dual.mats) @ S - np.eye(seq.domain.dim)).max())
        doc[f"{tag}.biorthogonality_residual"] = res
        doc[f"{tag}.mats"] = [m.tolist() for m in dual.mats]
        if res > 1e-9:
            code = 1
    _emit(doc, args.output)
    return code


def _cmd_multiply(args, cfg) -> int:
    inst = load(args.instance)
    M = assemble(
        inst.symbol_obj(), inst.lam_sequence(), inst.theta_sequence(), verify_bessel=True
    )
    doc = {
        "matrix": M.matrix.tolist(),
        "domain": {"dim": M.domain.dim, "exponent": str(M.domain.exponent)},
        "codomain": {"dim": M.codomain.dim, "exponent": str(M.codomain.exponent)},
        "advisories": list(M.advisories),
    }
    if args.apply is not None:
        doc["applied"] = M.apply(np.array(args.apply)).entries.tolist()
    _emit(doc, args.output)
    return 0


def _cmd_invert(args, cfg) -> int:
    inst = load(args.instance)
    try:
        inv = invert(inst.symbol_obj(), inst.lam_sequence(), inst.theta_sequence(), cfg)
    except (SymbolTooSmallError, NotRieszError) as exc:
        print(f"invert skipped: {exc}", file=sys.stderr)
        _emit({"status": "skipped", "reason": str(exc)}, args.output)
        return 0
    fwd = assemble(inst.symbol_obj(), inst.lam_sequence(), inst.theta_sequence())
    res_l = float(np.abs(inv.matrix @ fwd.matrix - np.eye(fwd.matrix.shape[1])).max())
    res_r = float(np.abs(fwd.matrix @ inv.matrix - np.eye(fwd.matrix.shape[0])).max())
    doc = {
        "inverse": inv.matrix.tolist(),
        "residual_left": res_l,
        "residual_right": res_r,
    }
    _emit(doc, args.output)
    return 0 if max(res_l, res_r) <= 1e-8 else 1


def _cmd_perturb(args, cfg) -> int:
    inst = load(args.instance)
    report = run_checks(inst, ["perturb"], cfg, epsilon=args.epsilon)
    _emit(report.to_dict(), args.output, report.render_text)
    return 0 if report.ok else 1


def _cmd_continuity(args, cfg) -> int:
    inst = load(args.instance)
    p1 = args.p1 or inst.p1 or 2.0
    try:
        traces = continuity_suite(
            args.kind,
            inst.symbol_obj(),
            inst.lam_sequence(),
            inst.theta_sequence(),
            p1,
            args.n_max,
            cfg,
        )
    except ContinuityViolation as exc:
        print(f"continuity violated: {exc}", file=sys.stderr)
        return 1
    doc = {
        "kind": args.kind,
        "p1": p1,
        "steps": [
            {
                "n": t.n,
                "deviation": t.deviation,
                "measured": t.measured,
                "bound": t.bound,
            }
            for t in traces
        ],
        "final_bound": traces[-1].bound,
    }

    def text():
        lines = [f"continuity kind={args.kind} p1={p1}"]
        for t in traces:
            lines.append(
                f"  n={t.n:3d}  deviation={t.deviation:.3e}  "
                f"measured={t.measured:.3e}  bound={t.bound:.3e}"
            )
        return "\n".join(lines)

    _emit(doc, args.output, text)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = _config_from(args)
    try:
        if args.command == "gen":
            return _cmd_gen(args, cfg)
        if args.command == "check":
            return _cmd_check(args, cfg)
        if args.command == "bounds":
            return _cmd_bounds(args, cfg)
        if args.command == "dual":
            return _cmd_dual(args, cfg)
        if args.command == "multiply":
            return _cmd_multiply(args, cfg)
        if args.command == "invert":
            return _cmd_invert(args, cfg)
        if args.command == "perturb":
            return _cmd_perturb(args, cfg)
        if args.command == "continuity":
            return _cmd_continuity(args, cfg)
    except InstanceFormatError as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"cannot read instance: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
