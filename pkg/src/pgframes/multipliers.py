"""Bessel multipliers: assembly, norm bounds, injectivity and inversion.

The multiplier of a symbol m and two operator sequences L (contributing
adjoints) and T (applied directly) is the finite sum

    M = sum_i m_i L_i^T @ T_i,

acting between the dual coordinate spaces of the two domains.  Summation is
entrywise compensated (fsum), so reordering the index set reproduces the
matrix bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig
from .frames import NotRieszError, classify, dual_riesz_basis
from .operators import OperatorSequence, analysis_opnorm
from .opnorm import BoundCertificate, matrix_opnorm
from .spaces import DimensionMismatchError, SpaceError, SpaceSpec, Vector

__all__ = [
    "Symbol",
    "MultiplierOperator",
    "NormBounds",
    "SymbolTooSmallError",
    "assemble",
    "norm_bounds",
    "invert",
    "injectivity_witness",
]


class SymbolTooSmallError(ValueError):
    """Inversion refused: the symbol has entries too close to zero."""


@dataclass(frozen=True)
class Symbol:
    """A finite scalar weight sequence."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float).ravel()
        if e.size == 0:
            raise SpaceError("a symbol needs at least one entry")
        if not np.all(np.isfinite(e)):
            raise SpaceError("symbol entries must be finite")
        object.__setattr__(self, "entries", e)

    def __len__(self) -> int:
        return self.entries.size

    @property
    def sup_norm(self) -> float:
        return float(np.abs(self.entries).max())

    @property
    def inf_abs(self) -> float:
        return float(np.abs(self.entries).min())

    def p_norm(self, p: float) -> float:
        from .spaces import pnorm

        return pnorm(self.entries, p)

    def reciprocal(self) -> "Symbol":
        if self.inf_abs == 0.0:
            raise SymbolTooSmallError("cannot invert a symbol with zero entries")
        return Symbol(1.0 / self.entries)


@dataclass(frozen=True)
class MultiplierOperator:
    """Assembled multiplier matrix with its ingredients.

    ``matrix`` maps the dual of the right sequence's domain into the dual of
    the left sequence's domain; ``domain``/``codomain`` carry the dual
    exponents under the standard identification.
    """

    matrix: np.ndarray
    symbol: Symbol
    left: OperatorSequence
    right: OperatorSequence
    domain: SpaceSpec
    codomain: SpaceSpec
    advisories: tuple[str, ...] = ()

    def apply(self, g) -> Vector:
        e = g.entries if isinstance(g, Vector) else np.asarray(g, dtype=float).ravel()
        if e.size != self.domain.dim:
            raise DimensionMismatchError(
                f"input dim {e.size} does not match domain dim {self.domain.dim}"
            )
        return Vector(self.matrix @ e, self.codomain)


def _fsum_stack(terms: list[np.ndarray]) -> np.ndarray:
    """Entrywise compensated sum of equally shaped matrices (order-invariant)."""
    stack = np.stack(terms)
    flat = stack.reshape(len(terms), -1)
    out = np.fromiter(
        (math.fsum(flat[:, j]) for j in range(flat.shape[1])),
        dtype=float,
        count=flat.shape[1],
    )
    return out.reshape(terms[0].shape)


def assemble(
    m: Symbol,
    left: OperatorSequence,
    right: OperatorSequence,
    verify_bessel: bool = False,
    cfg: NumericsConfig | None = None,
) -> MultiplierOperator:
    """Sum the weighted products m_i left_i^T @ right_i into one matrix.

    Shapes must pair up (same index count, matching codomain dims).  The
    Bessel hypotheses behind the defining series are vacuous at finite
    truncation; ``verify_bessel=True`` still records advisory notes (zero
    members, mismatched aggregation exponents) instead of failing.
    """
    cfg = cfg or DEFAULT_CONFIG
    if len(m) != len(left) or len(left) != len(right):
        raise DimensionMismatchError(
            f"index sets differ: symbol {len(m)}, left {len(left)}, right {len(right)}"
        )
    for i, (yl, yr) in enumerate(zip(left.codomains, right.codomains)):
        if yl.dim != yr.dim:
            raise DimensionMismatchError(
                f"member {i}: left codomain dim {yl.dim} != right codomain dim {yr.dim}"
            )
    terms = [
        mi * (ml.T @ mr)
        for mi, ml, mr in zip(m.entries, left.mats, right.mats)
    ]
    matrix = _fsum_stack(terms)
    advisories: list[str] = []
    if verify_bessel:
        from .spaces import conjugate_exponent

        if not math.isclose(
            right.frame_exponent, conjugate_exponent(left.frame_exponent)
        ):
            advisories.append(
                "aggregation exponents are not conjugate: "
                f"left p={left.frame_exponent}, right {right.frame_exponent}"
            )
        for tag, seq in (("left", left), ("right", right)):
            zeros = seq.zero_members()
            if zeros:
                advisories.append(f"{tag} sequence has zero members at {zeros}")
    return MultiplierOperator(
        matrix=matrix,
        symbol=m,
        left=left,
        right=right,
        domain=right.domain,
        codomain=left.domain.dual,
        advisories=tuple(advisories),
    )


@dataclass(frozen=True)
class NormBounds:
    """Upper/lower theorem bounds and the directly estimated norm."""

    upper: BoundCertificate
    lower: BoundCertificate | None
    estimate: BoundCertificate
    estimate_upper: BoundCertificate
    lower_reason: str | None = None


def norm_bounds(
    M: MultiplierOperator,
    cfg: NumericsConfig | None = None,
    left_report=None,
    right_report=None,
    compute_lower: bool = True,
) -> NormBounds:
    """Bound the multiplier norm three ways.

    upper: product of the certified Bessel bounds with the symbol sup norm.
    lower: product of the certified Riesz lower constants with the sup norm,
    present only when both ingredient sequences verify as Riesz bases
    (``compute_lower=False`` skips that verification entirely).
    estimate: the multiplier matrix's own norm between the dual exponents,
    as a witness-backed lower estimate plus a certified upper companion.
    """
    cfg = cfg or DEFAULT_CONFIG
    b_left = analysis_opnorm(M.left, cfg)
    b_right = analysis_opnorm(M.right, cfg)
    sup = M.symbol.sup_norm
    upper = BoundCertificate(
        b_left.upper.value * b_right.upper.value * sup,
        "upper_certificate",
        "bessel-product",
    )
    est_pair = matrix_opnorm(M.matrix, M.domain.exponent, M.codomain.exponent, cfg)

    if not compute_lower:
        return NormBounds(
            upper=upper,
            lower=None,
            estimate=est_pair.lower,
            estimate_upper=est_pair.upper,
            lower_reason="skipped",
        )

    lower = None
    reason = None
    left_report = left_report or classify(M.left, cfg)
    right_report = right_report or classify(M.right, cfg)
    if left_report.is_riesz and right_report.is_riesz:
        lower = BoundCertificate(
            left_report.riesz_lower.value * right_report.riesz_lower.value * sup,
            "lower_estimate",
            "riesz-product",
        )
    else:
        sides = []
        if not left_report.is_riesz:
            sides.append("left")
        if not right_report.is_riesz:
            sides.append("right")
        reason = f"not-riesz: {', '.join(sides)}"
    return NormBounds(
        upper=upper,
        lower=lower,
        estimate=est_pair.lower,
        estimate_upper=est_pair.upper,
        lower_reason=reason,
    )


def invert(
    m: Symbol,
    left: OperatorSequence,
    right: OperatorSequence,
    cfg: NumericsConfig | None = None,
) -> MultiplierOperator:
    """Inverse multiplier via the dual bases: weights 1/m, roles swapped.

    The inverse of the multiplier of (m, L, T) is the multiplier of
    (1/m, dual(T), dual(L)): the adjoint slot is filled by the dual of the
    *right* sequence and the apply slot by the dual of the *left* one.  Both
    composition residuals are verified before returning.
    """
    cfg = cfg or DEFAULT_CONFIG
    if m.inf_abs <= cfg.min_symbol:
        raise SymbolTooSmallError(
            f"symbol-too-small: inf |m_i| = {m.inf_abs:.3e} <= {cfg.min_symbol:.3e}"
        )
    fast = cfg.fast()
    if not classify(left, fast).is_riesz:
        raise NotRieszError("left sequence is not a Riesz basis")
    if not classify(right, fast).is_riesz:
        raise NotRieszError("right sequence is not a Riesz basis")
    left_dual = dual_riesz_basis(left, cfg).as_operator_sequence()
    right_dual = dual_riesz_basis(right, cfg).as_operator_sequence()
    forward = assemble(m, left, right)
    inverse = assemble(m.reciprocal(), right_dual, left_dual)
    n1, n2 = forward.matrix.shape[1], forward.matrix.shape[0]
    res_left = float(np.abs(inverse.matrix @ forward.matrix - np.eye(n1)).max())
    res_right = float(np.abs(forward.matrix @ inverse.matrix - np.eye(n2)).max())
    tol = max(1e-8, 100 * cfg.tol_exact)
    if max(res_left, res_right) > tol:
        raise NotRieszError(
            f"inverse verification failed: residuals {res_left:.2e}, {res_right:.2e}"
        )
    return inverse


def injectivity_witness(
    left: OperatorSequence,
    right: OperatorSequence,
    m: Symbol,
    cfg: NumericsConfig | None = None,
) -> Vector:
    """A vector g with multiplier(m, left, right) g != 0 for a nonzero symbol.

    Requires the left sequence to be a Riesz basis and every right member to
    be nonzero.  The witness targets the heaviest symbol entry k: g is the
    largest row of right_k, so right_k g != 0 and injectivity of the synthesis
    map keeps the whole sum away from zero.  Falls back to a brute-force
    search over coordinate vectors.
    """
    cfg = cfg or DEFAULT_CONFIG
    if m.sup_norm == 0.0:
        raise ValueError("the symbol is identically zero")
    zeros = right.zero_members()
    if zeros:
        raise ValueError(f"right sequence has zero members at {zeros}")
    if not classify(left, cfg.fast()).is_riesz:
        raise NotRieszError("left sequence is not a Riesz basis")
    M = assemble(m, left, right)
    k = int(np.argmax(np.abs(m.entries)))
    rows = np.linalg.norm(right.mats[k], axis=1)
    g = right.mats[k][int(np.argmax(rows))]
    if float(np.abs(M.matrix @ g).max()) > 0.0:
        return Vector(g, M.domain)
    for j in range(M.domain.dim):
        e = np.zeros(M.domain.dim)
        e[j] = 1.0
        if float(np.abs(M.matrix @ e).max()) > 0.0:
            return Vector(e, M.domain)
    raise ValueError("no coordinate witness found; hypotheses violated")
