"""Random instance generation with rejection conditioning.

Matrices are drawn with i.i.d. standard normal entries and resampled until
the requested classification holds; Riesz kinds additionally cap the
condition number of the synthesis matrix so downstream inversions stay well
inside the acceptance tolerances.
"""
from __future__ import annotations

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig
from .frames import classify
from .instances import Instance
from .operators import OperatorSequence
from .spaces import SpaceSpec, conjugate_exponent

__all__ = ["GenerationError", "GEN_KINDS", "gen"]

GEN_KINDS = ("bessel", "frame", "riesz", "riesz-pair")


class GenerationError(RuntimeError):
    """Generation failed (infeasible request or retry cap exceeded)."""


def _draw_mats(rng, y_dims, n):
    return tuple(rng.standard_normal((m, n)) for m in y_dims)


def _synthesis_cond(mats) -> float:
    return float(np.linalg.cond(np.hstack([m.T for m in mats])))


def gen(
    kind: str,
    x2_dim: int,
    y_dims,
    x1_dim: int | None = None,
    frame_exponent: float = 2.0,
    x1_exponent: float = 2.0,
    x2_exponent: float = 2.0,
    y_exponents=None,
    seed: int = 0,
    symbol_min: float = 0.2,
    cfg: NumericsConfig | None = None,
) -> Instance:
    """Generate an instance whose left family classifies as ``kind``.

    ``riesz`` conditions the left family; ``riesz-pair`` conditions both
    families and floors the symbol at ``symbol_min`` in absolute value.
    Raises :class:`GenerationError` (echoing the seed) when the request is
    infeasible or the retry cap runs out.
    """
    cfg = cfg or DEFAULT_CONFIG
    if kind not in GEN_KINDS:
        raise GenerationError(f"unknown kind {kind!r}; expected one of {GEN_KINDS}")
    y_dims = tuple(int(m) for m in y_dims)
    if not y_dims or any(m < 1 for m in y_dims):
        raise GenerationError(f"y_dims must be positive integers, got {y_dims}")
    x1_dim = int(x1_dim) if x1_dim is not None else x2_dim
    if y_exponents is None:
        y_exponents = (2.0,) * len(y_dims)
    y_exponents = tuple(float(r) for r in y_exponents)
    total = sum(y_dims)
    if kind in ("riesz", "riesz-pair") and total != x2_dim:
        raise GenerationError(
            f"riesz needs sum(y_dims) == x2_dim, got {total} != {x2_dim} (seed={seed})"
        )
    if kind == "riesz-pair" and total != x1_dim:
        raise GenerationError(
            f"riesz-pair needs sum(y_dims) == x1_dim, got {total} != {x1_dim} (seed={seed})"
        )

    x1 = SpaceSpec(x1_dim, x1_exponent)
    x2 = SpaceSpec(x2_dim, x2_exponent)
    components = tuple(SpaceSpec(m, r) for m, r in zip(y_dims, y_exponents))
    rng = np.random.default_rng([seed, GEN_KINDS.index(kind)])
    fast = cfg.fast()

    def lam_ok(mats) -> bool:
        seq = OperatorSequence(x2, components, mats, frame_exponent)
        if kind == "bessel":
            return classify(seq, fast).is_bessel
        if kind == "frame":
            return classify(seq, fast).is_frame
        if _synthesis_cond(mats) > cfg.max_condition:
            return False
        return classify(seq, fast).is_riesz

    def theta_ok(mats) -> bool:
        if kind != "riesz-pair":
            return True
        seq = OperatorSequence(
            x1.dual,
            tuple(c.dual for c in components),
            mats,
            conjugate_exponent(frame_exponent),
        )
        if _synthesis_cond(mats) > cfg.max_condition:
            return False
        return classify(seq, fast).is_riesz

    lam = theta = None
    for _ in range(cfg.retry_cap):
        cand = _draw_mats(rng, y_dims, x2_dim)
        if lam_ok(cand):
            lam = cand
            break
    if lam is None:
        raise GenerationError(
            f"retry cap {cfg.retry_cap} exceeded while drawing a {kind} family (seed={seed})"
        )
    for _ in range(cfg.retry_cap):
        cand = _draw_mats(rng, y_dims, x1_dim)
        if theta_ok(cand):
            theta = cand
            break
    if theta is None:
        raise GenerationError(
            f"retry cap {cfg.retry_cap} exceeded while drawing the paired family (seed={seed})"
        )

    if kind == "riesz-pair":
        signs = np.where(rng.random(len(y_dims)) < 0.5, -1.0, 1.0)
        symbol = signs * rng.uniform(symbol_min, 1.0 + symbol_min, len(y_dims))
    else:
        symbol = rng.standard_normal(len(y_dims))

    return Instance(
        x1=x1,
        x2=x2,
        components=components,
        frame_exponent=float(frame_exponent),
        lam=lam,
        theta=theta,
        symbol=symbol,
        seed=seed,
    )
