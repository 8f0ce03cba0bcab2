"""Finite-dimensional l^p coordinate spaces, duals, pairings and mixed-norm products.

The dual of (R^n, l^p) is represented concretely as (R^n, l^q) with
1/p + 1/q = 1 under the standard coordinate pairing <x, g> = sum_i x_i g_i.
Product spaces carry one l^p norm per component plus an outer aggregation
exponent; their duals swap every exponent for its conjugate.  Real scalars
throughout.

All values are immutable after construction and every operation is a pure
function of its inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig

INF = math.inf

__all__ = [
    "INF",
    "SpaceError",
    "DimensionMismatchError",
    "SpaceSpec",
    "Vector",
    "ProductVector",
    "ProductSpaceSpec",
    "as_exponent",
    "conjugate_exponent",
    "pnorm",
    "pnorm_many",
    "p_norm",
    "dual_pairing",
    "mixed_norm",
    "holder_witness",
    "product_duality_gap",
]


class SpaceError(ValueError):
    """Invalid space parameter (dimension or exponent)."""


class DimensionMismatchError(SpaceError):
    """Operands live in incompatible spaces."""


def as_exponent(p: float) -> float:
    """Validate an l^p exponent; any value in [1, inf] is accepted."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise SpaceError(f"exponent must lie in [1, inf], got {p!r}")
    return p


def conjugate_exponent(p: float) -> float:
    """The q with 1/p + 1/q = 1, with conj(1) = inf and conj(inf) = 1."""
    p = as_exponent(p)
    if p == 1.0:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def pnorm(entries, p: float) -> float:
    """(sum |a_i|^p)^(1/p); max |a_i| for p = inf.  Scaled against overflow."""
    a = np.abs(np.asarray(entries, dtype=float)).ravel()
    if a.size == 0:
        return 0.0
    m = float(a.max())
    if m == 0.0 or math.isinf(p):
        return m
    if p == 1.0:
        return float(a.sum())
    if p == 2.0:
        return float(np.linalg.norm(a))
    return m * float(np.power(a / m, p).sum()) ** (1.0 / p)


def pnorm_many(cols: np.ndarray, p: float) -> np.ndarray:
    """p-norms of the columns of a (d, N) array, vectorized."""
    a = np.abs(np.asarray(cols, dtype=float))
    if math.isinf(p):
        return a.max(axis=0)
    if p == 1.0:
        return a.sum(axis=0)
    if p == 2.0:
        return np.sqrt((a * a).sum(axis=0))
    m = a.max(axis=0)
    safe = np.where(m > 0.0, m, 1.0)
    s = np.power(a / safe, p).sum(axis=0)
    return np.where(m > 0.0, safe * s ** (1.0 / p), 0.0)


@dataclass(frozen=True)
class SpaceSpec:
    """A coordinate space R^dim equipped with the l^exponent norm."""

    dim: int
    exponent: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise SpaceError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "exponent", as_exponent(self.exponent))

    @property
    def dual(self) -> "SpaceSpec":
        return SpaceSpec(self.dim, conjugate_exponent(self.exponent))

    @property
    def total_dim(self) -> int:
        return self.dim

    @property
    def is_euclidean(self) -> bool:
        return self.exponent == 2.0

    def norm(self, entries) -> float:
        return pnorm(entries, self.exponent)

    def norm_many(self, cols: np.ndarray) -> np.ndarray:
        return pnorm_many(cols, self.exponent)

    def witness(self, functional) -> np.ndarray:
        return holder_witness(functional, self.exponent)

    def witness_many(self, functionals: np.ndarray) -> np.ndarray:
        return holder_witness_many(functionals, self.exponent)

    def vector(self, entries) -> "Vector":
        return Vector(np.asarray(entries, dtype=float), self)


def _check_entries(entries: np.ndarray, dim: int) -> np.ndarray:
    e = np.asarray(entries, dtype=float)
    if e.shape != (dim,):
        raise DimensionMismatchError(f"expected shape ({dim},), got {e.shape}")
    if not np.all(np.isfinite(e)):
        raise SpaceError("vector entries must be finite")
    return e


@dataclass(frozen=True)
class Vector:
    """Entries together with the space they live in."""

    entries: np.ndarray
    space: SpaceSpec

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_entries(self.entries, self.space.dim))

    def norm(self) -> float:
        return self.space.norm(self.entries)


def p_norm(v: Vector) -> float:
    """Norm of a vector in its own space."""
    return v.norm()


def dual_pairing(x: Vector, g: Vector) -> float:
    """Coordinate pairing sum_i x_i g_i; requires equal dimensions."""
    if x.space.dim != g.space.dim:
        raise DimensionMismatchError(
            f"pairing needs equal dims, got {x.space.dim} and {g.space.dim}"
        )
    return float(np.dot(x.entries, g.entries))


@dataclass(frozen=True)
class ProductSpaceSpec:
    """Mixed-norm product: tuples (x_1, ..., x_k), x_i in R^{d_i} with its own
    l^{r_i} norm, aggregated by the outer l^p norm of (||x_1||, ..., ||x_k||)."""

    components: tuple[SpaceSpec, ...]
    outer_exponent: float

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise SpaceError("a product space needs at least one component")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "outer_exponent", as_exponent(self.outer_exponent))

    @property
    def total_dim(self) -> int:
        return sum(c.dim for c in self.components)

    @property
    def offsets(self) -> tuple[int, ...]:
        offs, at = [], 0
        for c in self.components:
            offs.append(at)
            at += c.dim
        return tuple(offs)

    @property
    def dual(self) -> "ProductSpaceSpec":
        return ProductSpaceSpec(
            tuple(c.dual for c in self.components),
            conjugate_exponent(self.outer_exponent),
        )

    @property
    def is_euclidean(self) -> bool:
        return self.outer_exponent == 2.0 and all(c.is_euclidean for c in self.components)

    def split(self, flat: np.ndarray) -> list[np.ndarray]:
        flat = np.asarray(flat, dtype=float).ravel()
        if flat.size != self.total_dim:
            raise DimensionMismatchError(
                f"expected flat dim {self.total_dim}, got {flat.size}"
            )
        return [flat[o : o + c.dim] for o, c in zip(self.offsets, self.components)]

    def join(self, parts: Sequence[np.ndarray]) -> np.ndarray:
        return np.concatenate([np.asarray(p, dtype=float).ravel() for p in parts])

    def norm(self, flat) -> float:
        inner = np.array([c.norm(b) for c, b in zip(self.components, self.split(flat))])
        return pnorm(inner, self.outer_exponent)

    def norm_many(self, cols: np.ndarray) -> np.ndarray:
        cols = np.asarray(cols, dtype=float)
        inner = np.vstack(
            [c.norm_many(cols[o : o + c.dim]) for o, c in zip(self.offsets, self.components)]
        )
        return pnorm_many(inner, self.outer_exponent)

    def witness(self, functional) -> np.ndarray:
        return _product_holder_witness(self, functional)

    def witness_many(self, functionals: np.ndarray) -> np.ndarray:
        U = np.asarray(functionals, dtype=float)
        duals = np.vstack(
            [
                pnorm_many(U[o : o + c.dim], conjugate_exponent(c.exponent))
                for o, c in zip(self.offsets, self.components)
            ]
        )
        weights = holder_witness_many(duals, self.outer_exponent)
        out = np.empty_like(U)
        for i, (o, c) in enumerate(zip(self.offsets, self.components)):
            out[o : o + c.dim] = weights[i] * c.witness_many(U[o : o + c.dim])
        return out

    def vector(self, flat) -> "ProductVector":
        blocks = tuple(
            Vector(b, c) for b, c in zip(self.split(flat), self.components)
        )
        return ProductVector(blocks, self.outer_exponent)


@dataclass(frozen=True)
class ProductVector:
    """One vector per component space, normed by the outer aggregation."""

    blocks: tuple[Vector, ...]
    outer_exponent: float

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise SpaceError("a product vector needs at least one block")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "outer_exponent", as_exponent(self.outer_exponent))

    @property
    def space(self) -> ProductSpaceSpec:
        return ProductSpaceSpec(tuple(b.space for b in self.blocks), self.outer_exponent)

    def flatten(self) -> np.ndarray:
        return np.concatenate([b.entries for b in self.blocks])

    def norm(self) -> float:
        return mixed_norm(self)


def mixed_norm(pv: ProductVector) -> float:
    """(sum_i ||x_i||_{r_i}^p)^(1/p) with each block in its own norm."""
    inner = np.array([b.norm() for b in pv.blocks])
    return pnorm(inner, pv.outer_exponent)


def holder_witness(functional, p: float) -> np.ndarray:
    """Unit-l^p vector x attaining <x, u> = ||u||_q for the given functional u.

    For p in (1, inf): x_i proportional to sign(u_i) |u_i|^(q-1).  Endpoints:
    p = 1 uses a signed coordinate indicator at argmax |u_i|; p = inf uses the
    sign vector.  The zero functional returns the zero vector.
    """
    u = np.asarray(functional, dtype=float).ravel()
    p = as_exponent(p)
    top = float(np.abs(u).max(initial=0.0))
    if top == 0.0:
        return np.zeros_like(u)
    if p == 1.0:
        j = int(np.argmax(np.abs(u)))
        x = np.zeros_like(u)
        x[j] = math.copysign(1.0, u[j])
        return x
    if math.isinf(p):
        return np.sign(u)
    q = conjugate_exponent(p)
    w = np.sign(u) * np.power(np.abs(u) / top, q - 1.0)
    return w / pnorm(w, p)


def holder_witness_many(functionals: np.ndarray, p: float) -> np.ndarray:
    """Columnwise :func:`holder_witness` on a (d, N) array of functionals."""
    U = np.asarray(functionals, dtype=float)
    p = as_exponent(p)
    if p == 1.0:
        rows = np.abs(U).argmax(axis=0)
        cols = np.arange(U.shape[1])
        W = np.zeros_like(U)
        W[rows, cols] = np.sign(U[rows, cols])
        return W
    if math.isinf(p):
        return np.sign(U)
    q = conjugate_exponent(p)
    top = np.abs(U).max(axis=0)
    safe = np.where(top > 0.0, top, 1.0)
    W = np.sign(U) * np.power(np.abs(U) / safe, q - 1.0)
    norms = pnorm_many(W, p)
    return W / np.where(norms > 0.0, norms, 1.0)


def _product_holder_witness(space: ProductSpaceSpec, functional) -> np.ndarray:
    """Nested Hoelder witness on a mixed-norm product.

    Per block, the inner witness turns u_i into a unit-r_i vector attaining
    ||u_i|| in the dual block norm; the outer witness distributes weight over
    blocks so the total pairing equals the dual mixed norm.
    """
    parts = space.split(functional)
    duals = np.array(
        [pnorm(ui, conjugate_exponent(c.exponent)) for ui, c in zip(parts, space.components)]
    )
    if duals.max(initial=0.0) == 0.0:
        return np.zeros(space.total_dim)
    weights = holder_witness(duals, space.outer_exponent)
    out = []
    for w, ui, c in zip(weights, parts, space.components):
        out.append(w * holder_witness(ui, c.exponent))
    return space.join(out)


def product_duality_gap(
    g: ProductVector,
    cfg: NumericsConfig | None = None,
    method: str = "witness",
) -> float:
    """|sup_{||x|| <= 1} <x, g> - mixed_norm(g)| over the predual product sphere.

    ``g`` is read as a functional on the product whose component spaces are the
    duals of g's block spaces and whose outer exponent is the conjugate of g's.
    ``method='witness'`` computes the supremum from the extremal witness
    construction (exact up to rounding); ``method='grid'`` recomputes it by
    dense sampling, block by block, and is available while the configured
    sample budget suffices.
    """
    cfg = cfg or DEFAULT_CONFIG
    primal = ProductSpaceSpec(
        tuple(b.space.dual for b in g.blocks),
        conjugate_exponent(g.outer_exponent),
    )
    flat = g.flatten()
    target = mixed_norm(g)
    if method == "witness":
        x = primal.witness(flat)
        sup = float(np.dot(x, flat))
    elif method == "grid":
        from . import gridsearch

        sup = gridsearch.product_sup_pairing(
            primal, flat, cfg.grid_axis_points, cfg.grid_budget
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    return abs(sup - target)
