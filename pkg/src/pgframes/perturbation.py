"""Perturbation bounds and parameter-continuity suites for multipliers.

``perturbation_check`` certifies that perturbing a sequence by operators with
aggregate gap K keeps the Bessel bound within B + K, and that the analysis
and synthesis operators of the pair differ by at most K in norm.

``continuity_suite`` drives a deviation schedule through one of four
parameter-convergence modes (symbol only, either sequence, or all three
jointly) and records, per step, the measured multiplier gap next to the
theorem bound it must respect.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig
from .multipliers import Symbol, assemble
from .operators import OperatorSequence, analysis_opnorm, synthesis_matrix
from .opnorm import (
    BoundCertificate,
    matrix_opnorm,
    operator_norm_bounds,
    upper_certificate_only,
)
from .spaces import DimensionMismatchError, conjugate_exponent, pnorm

__all__ = [
    "PerturbationReport",
    "ContinuityTrace",
    "ContinuityViolation",
    "CONTINUITY_KINDS",
    "perturbation_check",
    "continuity_suite",
    "default_generator",
]

CONTINUITY_KINDS = ("symbol", "theta", "lambda", "joint")


class ContinuityViolation(RuntimeError):
    """A measured multiplier gap exceeded its theorem bound."""


@dataclass(frozen=True)
class PerturbationReport:
    """Certified aggregate gap K and the Bessel bounds it controls."""

    K: BoundCertificate
    B_base: BoundCertificate        # certified upper bound for the base sequence
    B_perturbed: BoundCertificate   # witness-backed lower estimate for the perturbed one
    slack: float                    # B_base + K - B_perturbed, nonnegative up to tolerance
    analysis_gap: BoundCertificate  # lower estimate of ||U_pert - U_base||
    synthesis_gap: BoundCertificate  # lower estimate of ||T_pert - T_base||
    per_term: tuple[BoundCertificate, ...]


def _same_shape(lam: OperatorSequence, theta: OperatorSequence) -> None:
    if lam.domain != theta.domain or lam.frame_exponent != theta.frame_exponent:
        raise DimensionMismatchError("sequences live on different domains or exponents")
    if lam.codomains != theta.codomains:
        raise DimensionMismatchError("sequences have different codomain lists")


def perturbation_check(
    lam: OperatorSequence,
    theta: OperatorSequence,
    cfg: NumericsConfig | None = None,
) -> PerturbationReport:
    """Certify the Bessel-bound and operator-gap consequences of a perturbation."""
    cfg = cfg or DEFAULT_CONFIG
    _same_shape(lam, theta)
    p = lam.frame_exponent
    diffs = [ml - mt for ml, mt in zip(lam.mats, theta.mats)]
    per_term = tuple(
        upper_certificate_only(d, lam.domain.exponent, y.exponent, cfg)
        for d, y in zip(diffs, lam.codomains)
    )
    k_val = pnorm(np.array([c.value for c in per_term]), p)
    k_kind = "exact" if all(c.kind == "exact" for c in per_term) else "upper_certificate"
    K = BoundCertificate(k_val, k_kind, "per-term-aggregate")

    B_base = analysis_opnorm(lam, cfg).upper
    B_pert = analysis_opnorm(theta, cfg).lower
    slack = B_base.value + K.value - B_pert.value

    diff_seq = OperatorSequence(lam.domain, lam.codomains, tuple(diffs), p)
    analysis_gap = analysis_opnorm(diff_seq, cfg).lower
    synthesis_gap = operator_norm_bounds(
        synthesis_matrix(diff_seq),
        diff_seq.coefficient_space(),
        diff_seq.domain.dual,
        cfg,
        stream=41,
    ).lower
    return PerturbationReport(
        K=K,
        B_base=B_base,
        B_perturbed=B_pert,
        slack=slack,
        analysis_gap=analysis_gap,
        synthesis_gap=synthesis_gap,
        per_term=per_term,
    )


@dataclass(frozen=True)
class ContinuityTrace:
    """One step of a continuity run: deviation in, measured gap vs bound out."""

    n: int
    kind: str
    deviation: float        # the schedule input the bound is linear in
    measured: float         # witness-backed estimate of the multiplier gap norm
    bound: float            # theorem bound at this step
    p1: float
    q1: float
    components: tuple[float, ...] | None = None  # the three terms of the joint bound
    symbol_sup_gap: float | None = None          # ||m_n - m||_inf, next to the p1 norm


def _bump_matrix(shape) -> np.ndarray:
    e = np.zeros(shape)
    e[0, 0] = 1.0
    return e


def default_generator(
    kind: str,
    m: Symbol,
    lam: OperatorSequence,
    theta: OperatorSequence,
    cfg: NumericsConfig,
) -> Callable[[int], tuple[Symbol, OperatorSequence, OperatorSequence]]:
    """Schedule-driven deviations: a base^-n bump on the selected ingredients.

    The symbol is bumped in its first entry; sequences in the (0, 0) entry of
    their first member, a matrix of operator norm exactly one for every
    exponent pair.
    """
    base = cfg.deviation_base

    def bump_symbol(n: int) -> Symbol:
        e = m.entries.copy()
        e[0] += base ** (-n)
        return Symbol(e)

    def bump_seq(seq: OperatorSequence, n: int) -> OperatorSequence:
        mats = list(seq.mats)
        mats[0] = mats[0] + base ** (-n) * _bump_matrix(mats[0].shape)
        return OperatorSequence(seq.domain, seq.codomains, tuple(mats), seq.frame_exponent)

    def gen(n: int):
        mm = bump_symbol(n) if kind in ("symbol", "joint") else m
        ll = bump_seq(lam, n) if kind in ("lambda", "joint") else lam
        tt = bump_seq(theta, n) if kind in ("theta", "joint") else theta
        return mm, ll, tt

    return gen


def _seq_gap_q1(base: OperatorSequence, new: OperatorSequence, q1: float, cfg) -> float:
    vals = [
        upper_certificate_only(mn - mb, base.domain.exponent, y.exponent, cfg).value
        for mn, mb, y in zip(new.mats, base.mats, base.codomains)
    ]
    return pnorm(np.array(vals), q1)


def continuity_suite(
    kind: str,
    m: Symbol,
    lam: OperatorSequence,
    theta: OperatorSequence,
    p1: float,
    n_max: int | None = None,
    cfg: NumericsConfig | None = None,
    generator: Callable[[int], tuple[Symbol, OperatorSequence, OperatorSequence]] | None = None,
) -> list[ContinuityTrace]:
    """Run one continuity mode and return its per-step traces.

    Every step asserts measured <= bound + 1e-9 (the finite-step form of the
    convergence statement) and the run asserts that the bounds decay; a
    violation raises :class:`ContinuityViolation`.
    """
    cfg = cfg or DEFAULT_CONFIG
    if kind not in CONTINUITY_KINDS:
        raise ValueError(f"kind must be one of {CONTINUITY_KINDS}, got {kind!r}")
    if p1 <= 1.0:
        raise ValueError(f"the auxiliary exponent p1 must exceed 1, got {p1}")
    n_max = n_max or cfg.n_max
    q1 = conjugate_exponent(p1)
    gen = generator or default_generator(kind, m, lam, theta, cfg)

    base_M = assemble(m, lam, theta)
    B_lam = analysis_opnorm(lam, cfg).upper.value
    B_theta = analysis_opnorm(theta, cfg).upper.value
    m_p1 = m.p_norm(p1)

    steps = []
    for n in range(1, n_max + 1):
        mm, ll, tt = gen(n)
        if ll.domain != lam.domain or tt.domain != theta.domain:
            raise DimensionMismatchError(f"generated term {n} changed the domains")
        if ll.codomains != lam.codomains or tt.codomains != theta.codomains:
            raise DimensionMismatchError(f"generated term {n} changed the codomains")
        if len(mm) != len(m):
            raise DimensionMismatchError(f"generated term {n} changed the index set")
        steps.append((n, mm, ll, tt))

    B1 = B2 = None
    if kind == "joint":
        B1 = max(analysis_opnorm(ll, cfg).upper.value for _, _, ll, _ in steps)
        B2 = max(analysis_opnorm(tt, cfg).upper.value for _, _, _, tt in steps)

    traces: list[ContinuityTrace] = []
    for n, mm, ll, tt in steps:
        Mn = assemble(mm, ll, tt)
        gap = Mn.matrix - base_M.matrix
        measured = matrix_opnorm(
            gap, base_M.domain.exponent, base_M.codomain.exponent, cfg
        ).lower.value

        sym_gap = pnorm(mm.entries - m.entries, p1)
        sup_gap = float(np.abs(mm.entries - m.entries).max())
        components = None
        if kind == "symbol":
            deviation = sym_gap
            bound = B_lam * B_theta * sym_gap
        elif kind == "theta":
            deviation = _seq_gap_q1(theta, tt, q1, cfg)
            bound = B_lam * m_p1 * deviation
        elif kind == "lambda":
            deviation = _seq_gap_q1(lam, ll, q1, cfg)
            bound = B_theta * m_p1 * deviation
        else:
            lam_gap = _seq_gap_q1(lam, ll, q1, cfg)
            theta_gap = _seq_gap_q1(theta, tt, q1, cfg)
            components = (
                B1 * B2 * sym_gap,
                B2 * m_p1 * lam_gap,
                B_lam * m_p1 * theta_gap,
            )
            deviation = max(sym_gap, lam_gap, theta_gap)
            bound = sum(components)

        if measured > bound + 1e-9:
            raise ContinuityViolation(
                f"step {n}: measured {measured:.3e} exceeds bound {bound:.3e}"
            )
        traces.append(
            ContinuityTrace(
                n=n,
                kind=kind,
                deviation=deviation,
                measured=measured,
                bound=bound,
                p1=p1,
                q1=q1,
                components=components,
                symbol_sup_gap=sup_gap if kind in ("symbol", "joint") else None,
            )
        )

    if len(traces) >= 2 and traces[0].bound > 0.0:
        if traces[-1].bound > 0.5 * traces[0].bound:
            raise ContinuityViolation(
                f"bounds do not decay: {traces[0].bound:.3e} -> {traces[-1].bound:.3e}"
            )
    return traces
