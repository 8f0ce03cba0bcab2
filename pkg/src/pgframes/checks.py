"""Check-suite orchestration over a problem instance.

Each suite re-derives one family of guarantees (classification agreement,
duality of the product norm, multiplier bounds, dual bases, inversion,
perturbation, continuity) and reports pass/fail/skipped with the values it
computed.  Reports are deterministic for a fixed (instance, seed, config)
triple, timing fields aside.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig
from .frames import NotRieszError, classify, dual_riesz_basis, riesz_equivalences_check
from .gridsearch import OracleBudgetError
from .instances import Instance
from .multipliers import Symbol, SymbolTooSmallError, assemble, invert, norm_bounds
from .operators import OperatorSequence, synthesis_matrix
from .perturbation import (
    CONTINUITY_KINDS,
    ContinuityViolation,
    continuity_suite,
    perturbation_check,
)
from .spaces import product_duality_gap

__all__ = ["CheckResult", "CheckReport", "SUITES", "run_checks"]

SUITES = (
    "classify",
    "equivalences",
    "duality",
    "bounds",
    "dual",
    "multiply",
    "invert",
    "perturb",
    "continuity",
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str              # pass | fail | skipped
    reason: str = ""
    values: dict = field(default_factory=dict)
    wall_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "reason": self.reason,
            "values": _plain(self.values),
            "wall_ms": round(self.wall_ms, 3),
        }


@dataclass(frozen=True)
class CheckReport:
    instance_summary: dict
    config_echo: dict
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def to_dict(self) -> dict:
        return {
            "instance": _plain(self.instance_summary),
            "config": _plain(self.config_echo),
            "checks": [r.to_dict() for r in self.results],
            "overall": "pass" if self.ok else "fail",
        }

    def render_text(self) -> str:
        lines = []
        for r in self.results:
            head = f"{r.status.upper():7s} {r.name}"
            if r.reason:
                head += f"  ({r.reason})"
            lines.append(head)
            for k, v in r.values.items():
                lines.append(f"        {k} = {_fmt(v)}")
        lines.append(f"overall: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _seeded(cfg: NumericsConfig, k: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, 0xC5EC, k])


def _unit_samples(space, count: int, rng) -> np.ndarray:
    x = rng.standard_normal((space.total_dim, count))
    norms = space.norm_many(x)
    good = norms > 0
    return x[:, good] / norms[good]


def _certificate_values(report) -> dict:
    vals = {
        "A": report.lower_bound.value,
        "A_kind": f"{report.lower_bound.kind}/{report.lower_bound.method}",
        "B": report.bessel_bound.value,
        "B_kind": f"{report.bessel_bound.kind}/{report.bessel_bound.method}",
        "is_frame": report.is_frame,
        "is_riesz": report.is_riesz,
        "g_complete": report.g_complete,
        "rank_synthesis": report.rank_synthesis,
    }
    if report.riesz_lower is not None:
        vals["riesz_A"] = report.riesz_lower.value
        vals["riesz_B"] = report.riesz_upper.value
    for name, w in report.witnesses.items():
        vals[f"witness.{name}"] = w
    return vals


def _check_classify(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    values, ok, notes = {}, True, []
    for tag, seq in (("lam", inst.lam_sequence()), ("theta", inst.theta_sequence())):
        report = classify(seq, cfg)
        for k, v in _certificate_values(report).items():
            values[f"{tag}.{k}"] = v
        if len(set(report.frame_routes)) != 1:
            ok = False
            notes.append(f"{tag}: frame routes disagree {report.frame_routes}")
        samples = _unit_samples(seq.domain, 200, _seeded(cfg, 1))
        ratios = seq.analysis_space().norm_many(seq.stacked() @ samples)
        lo, hi = report.lower_bound.value, report.bessel_bound.value
        if ratios.min(initial=np.inf) < lo - 1e-9 or ratios.max(initial=0.0) > hi + 1e-9:
            ok = False
            notes.append(
                f"{tag}: sampled ratios escape [{lo:.3e}, {hi:.3e}]"
            )
    return CheckResult("classify", "pass" if ok else "fail", "; ".join(notes), values)


def _check_equivalences(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    values, ok, notes = {}, True, []
    for tag, seq in (("lam", inst.lam_sequence()), ("theta", inst.theta_sequence())):
        eq = riesz_equivalences_check(seq, cfg)
        values[f"{tag}.conditions"] = [
            eq.riesz_inequality,
            eq.synthesis_injective,
            eq.analysis_onto,
        ]
        if not eq.agree:
            ok = False
            notes.append(f"{tag}: equivalence conditions disagree")
    return CheckResult("equivalences", "pass" if ok else "fail", "; ".join(notes), values)


def _check_duality(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    seq = inst.lam_sequence()
    coeff = seq.coefficient_space()
    rng = _seeded(cfg, 2)
    worst_witness = 0.0
    for _ in range(20):
        g = coeff.vector(rng.standard_normal(coeff.total_dim))
        scale = max(g.norm(), 1e-30)
        worst_witness = max(worst_witness, product_duality_gap(g, cfg) / scale)
    values = {"witness_gap_rel": worst_witness}
    ok = worst_witness <= 1e-10
    note = ""
    try:
        g = coeff.vector(rng.standard_normal(coeff.total_dim))
        gap = product_duality_gap(g, cfg, method="grid") / max(g.norm(), 1e-30)
        values["grid_gap_rel"] = gap
        ok = ok and gap <= 1e-3
    except OracleBudgetError as exc:
        note = f"grid skipped: {exc}"
    return CheckResult("duality", "pass" if ok else "fail", note, values)


def _check_bounds(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    M = assemble(inst.symbol_obj(), inst.lam_sequence(), inst.theta_sequence())
    nb = norm_bounds(M, cfg)
    values = {
        "upper": nb.upper.value,
        "estimate": nb.estimate.value,
        "estimate_upper": nb.estimate_upper.value,
    }
    ok = nb.estimate.value <= nb.upper.value + 1e-9
    notes = []
    if not ok:
        notes.append("estimate exceeds the certified upper bound")
    if nb.lower is not None:
        values["lower"] = nb.lower.value
        exact = inst.frame_exponent == 2.0 and all(
            c.exponent == 2.0 for c in inst.components
        ) and inst.x1.exponent == 2.0 and inst.x2.exponent == 2.0
        tol = 1e-9 if exact else 1e-3
        if nb.estimate.value < nb.lower.value - tol:
            ok = False
            notes.append("estimate fell below the certified lower bound")
        if nb.lower.value > nb.estimate_upper.value + 1e-9:
            ok = False
            notes.append("lower bound exceeds the certified estimate upper")
    else:
        values["lower"] = None
        notes.append(nb.lower_reason or "lower bound not applicable")
    return CheckResult("bounds", "pass" if ok else "fail", "; ".join(notes), values)


def _check_dual(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    values, ok, notes = {}, True, []
    rng = _seeded(cfg, 3)
    any_run = False
    for tag, seq in (("lam", inst.lam_sequence()), ("theta", inst.theta_sequence())):
        report = classify(seq, cfg)
        if not report.is_riesz:
            notes.append(f"{tag}: not a Riesz basis ({report.riesz_diagnosis})")
            continue
        any_run = True
        dual = dual_riesz_basis(seq, cfg)
        S = synthesis_matrix(seq)
        Sinv = np.vstack(dual.mats)
        n = seq.domain.dim
        biorth = float(np.abs(Sinv @ S - np.eye(n)).max())
        recon_mat = S @ Sinv - np.eye(n)
        xs = rng.standard_normal((n, 100))
        xstar = seq.domain.dual
        recon = max(
            float(xstar.norm(recon_mat @ xs[:, j])) / max(float(xstar.norm(xs[:, j])), 1e-30)
            for j in range(xs.shape[1])
        )
        dd = dual_riesz_basis(dual.as_operator_sequence(), cfg)
        double = max(
            float(np.abs(a - b).max()) for a, b in zip(dd.mats, seq.mats)
        )
        values[f"{tag}.biorth"] = biorth
        values[f"{tag}.reconstruction"] = recon
        values[f"{tag}.double_dual"] = double
        if max(biorth, recon, double) > 1e-9:
            ok = False
            notes.append(f"{tag}: dual residuals exceed 1e-9")
        a_safe = report.riesz_lower.value
        b_up = report.riesz_upper.value
        dual_seq = dual.as_operator_sequence()
        samples = _unit_samples(dual_seq.domain, 100, rng)
        ratios = dual_seq.analysis_space().norm_many(dual_seq.stacked() @ samples)
        if b_up > 0 and ratios.min(initial=np.inf) < 1.0 / b_up - 1e-9:
            ok = False
            notes.append(f"{tag}: dual ratios fall below 1/B")
        if a_safe > 0 and ratios.max(initial=0.0) > 1.0 / a_safe + 1e-9:
            ok = False
            notes.append(f"{tag}: dual ratios exceed 1/A")
    if not any_run:
        return CheckResult("dual", "skipped", "; ".join(notes), values)
    return CheckResult("dual", "pass" if ok else "fail", "; ".join(notes), values)


def _check_multiply(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    m = inst.symbol_obj()
    lam, theta = inst.lam_sequence(), inst.theta_sequence()
    M = assemble(m, lam, theta, verify_bessel=True, cfg=cfg)
    rng = _seeded(cfg, 4)
    perm = rng.permutation(len(m))
    lam_p = OperatorSequence(
        lam.domain,
        tuple(lam.codomains[i] for i in perm),
        tuple(lam.mats[i] for i in perm),
        lam.frame_exponent,
    )
    theta_p = OperatorSequence(
        theta.domain,
        tuple(theta.codomains[i] for i in perm),
        tuple(theta.mats[i] for i in perm),
        theta.frame_exponent,
    )
    M_p = assemble(Symbol(m.entries[perm]), lam_p, theta_p)
    identical = bool(np.array_equal(M.matrix, M_p.matrix))

    zero = assemble(Symbol(np.zeros(len(m))), lam, theta)
    zero_ok = bool(np.all(zero.matrix == 0.0))

    g = rng.standard_normal(M.domain.dim)
    direct = np.zeros(M.codomain.dim)
    for mi, ml, mt in zip(m.entries, lam.mats, theta.mats):
        direct = direct + mi * (ml.T @ (mt @ g))
    apply_res = float(np.abs(M.apply(g).entries - direct).max())
    scale = max(float(np.abs(direct).max()), 1e-30)

    ok = identical and zero_ok and apply_res <= 1e-10 * max(1.0, scale)
    values = {
        "permutation_identical": identical,
        "zero_symbol_zero": zero_ok,
        "apply_residual": apply_res,
        "advisories": list(M.advisories),
    }
    return CheckResult("multiply", "pass" if ok else "fail", "", values)


def _check_invert(inst: Instance, cfg: NumericsConfig) -> CheckResult:
    m = inst.symbol_obj()
    lam, theta = inst.lam_sequence(), inst.theta_sequence()
    try:
        inverse = invert(m, lam, theta, cfg)
    except SymbolTooSmallError as exc:
        return CheckResult("invert", "skipped", f"symbol-too-small: {exc}")
    except NotRieszError as exc:
        return CheckResult("invert", "skipped", f"not-riesz: {exc}")
    forward = assemble(m, lam, theta)
    n1 = forward.matrix.shape[1]
    n2 = forward.matrix.shape[0]
    res_l = float(np.abs(inverse.matrix @ forward.matrix - np.eye(n1)).max())
    res_r = float(np.abs(forward.matrix @ inverse.matrix - np.eye(n2)).max())
    ok = max(res_l, res_r) <= 1e-8
    return CheckResult(
        "invert",
        "pass" if ok else "fail",
        "",
        {"residual_left": res_l, "residual_right": res_r},
    )


def _check_perturb(inst: Instance, cfg: NumericsConfig, epsilon: float) -> CheckResult:
    lam = inst.lam_sequence()
    rng = _seeded(cfg, 5)
    mats = []
    for mat in lam.mats:
        noise = rng.standard_normal(mat.shape)
        mats.append(mat + epsilon * noise / max(np.linalg.norm(noise), 1e-30))
    theta = OperatorSequence(lam.domain, lam.codomains, tuple(mats), lam.frame_exponent)
    rep = perturbation_check(lam, theta, cfg)
    ok = rep.slack >= -1e-9
    notes = []
    if not ok:
        notes.append("Bessel-bound slack is negative")
    for name, gap in (("analysis", rep.analysis_gap), ("synthesis", rep.synthesis_gap)):
        if gap.value > rep.K.value + 1e-9:
            ok = False
            notes.append(f"{name} gap exceeds K")
    values = {
        "K": rep.K.value,
        "B_base": rep.B_base.value,
        "B_perturbed": rep.B_perturbed.value,
        "slack": rep.slack,
        "analysis_gap": rep.analysis_gap.value,
        "synthesis_gap": rep.synthesis_gap.value,
    }
    return CheckResult("perturb", "pass" if ok else "fail", "; ".join(notes), values)


def _check_continuity(inst: Instance, cfg: NumericsConfig, n_max: int | None) -> CheckResult:
    m = inst.symbol_obj()
    lam, theta = inst.lam_sequence(), inst.theta_sequence()
    p1 = inst.p1 or 2.0
    values, ok, notes = {}, True, []
    for kind in CONTINUITY_KINDS:
        try:
            traces = continuity_suite(kind, m, lam, theta, p1, n_max, cfg)
        except ContinuityViolation as exc:
            ok = False
            notes.append(f"{kind}: {exc}")
            continue
        worst = max((t.measured - t.bound for t in traces), default=0.0)
        values[f"{kind}.final_bound"] = traces[-1].bound
        values[f"{kind}.worst_excess"] = worst
    return CheckResult("continuity", "pass" if ok else "fail", "; ".join(notes), values)


def run_checks(
    inst: Instance,
    suites=None,
    cfg: NumericsConfig | None = None,
    epsilon: float = 0.01,
    n_max: int | None = None,
) -> CheckReport:
    """Run the selected suites (all of them by default) over an instance."""
    cfg = cfg or DEFAULT_CONFIG
    chosen = list(suites) if suites else list(SUITES)
    unknown = [s for s in chosen if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; expected a subset of {SUITES}")
    results = []
    for name in chosen:
        t0 = time.perf_counter()
        try:
            if name == "classify":
                res = _check_classify(inst, cfg)
            elif name == "equivalences":
                res = _check_equivalences(inst, cfg)
            elif name == "duality":
                res = _check_duality(inst, cfg)
            elif name == "bounds":
                res = _check_bounds(inst, cfg)
            elif name == "dual":
                res = _check_dual(inst, cfg)
            elif name == "multiply":
                res = _check_multiply(inst, cfg)
            elif name == "invert":
                res = _check_invert(inst, cfg)
            elif name == "perturb":
                res = _check_perturb(inst, cfg, epsilon)
            else:
                res = _check_continuity(inst, cfg, n_max)
        except Exception as exc:
            res = CheckResult(name, "fail", f"{type(exc).__name__}: {exc}")
        wall = (time.perf_counter() - t0) * 1000.0
        results.append(
            CheckResult(res.name, res.status, res.reason, res.values, wall)
        )
    summary = {
        "x1": {"dim": inst.x1.dim, "exponent": str(inst.x1.exponent)},
        "x2": {"dim": inst.x2.dim, "exponent": str(inst.x2.exponent)},
        "components": [
            {"dim": c.dim, "exponent": str(c.exponent)} for c in inst.components
        ],
        "frame_exponent": inst.frame_exponent,
        "index_count": len(inst.components),
        "seed": inst.seed,
    }
    echo = {
        "seed": cfg.seed,
        "tol_exact": cfg.tol_exact,
        "tol_estimate": cfg.tol_estimate,
        "restarts": cfg.restarts,
        "epsilon": epsilon,
        "n_max": n_max or cfg.n_max,
    }
    return CheckReport(summary, echo, tuple(results))
