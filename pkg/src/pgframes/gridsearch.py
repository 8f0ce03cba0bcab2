"""Dense unit-sphere sampling oracles.

Used as the slow cross-check route next to closed forms and ascent estimates:
suprema by exhaustive sampling, and infima with a Lipschitz correction that
turns a sampled minimum into a certified lower bound.

Spheres are sampled by gridding the faces of the unit cube and renormalizing;
the renormalization map y -> y / ||y|| is 2-Lipschitz on the cube surface, so
a face grid of spacing h covers the sphere within h * ||ones|| in the target
norm.
"""
from __future__ import annotations

import numpy as np

from .spaces import ProductSpaceSpec, SpaceSpec

__all__ = [
    "OracleBudgetError",
    "sphere_samples",
    "sup_pairing",
    "certified_min_ratio",
    "product_sup_pairing",
]


class OracleBudgetError(RuntimeError):
    """The requested grid exceeds the configured sample budget."""


def _face_count(dim: int, axis_points: int) -> int:
    return dim * axis_points ** (dim - 1)


def sphere_samples(space, axis_points: int, budget: int):
    """Sample the unit sphere of ``space``; returns (samples, covering_radius).

    ``samples`` has one row per unit vector.  Only faces with one coordinate
    pinned at +1 are generated; objectives invariant under x -> -x (every norm
    ratio and |pairing| used here) lose nothing.
    """
    dim = space.total_dim
    if dim == 1:
        return np.array([[1.0]]), 0.0
    if axis_points < 2:
        raise OracleBudgetError("axis_points must be at least 2")
    total = _face_count(dim, axis_points)
    if total > budget:
        raise OracleBudgetError(
            f"sphere grid needs {total} samples, budget is {budget}"
        )
    axis = np.linspace(-1.0, 1.0, axis_points)
    grids = np.meshgrid(*([axis] * (dim - 1)), indexing="ij")
    face = np.stack([g.ravel() for g in grids], axis=1)  # (axis_points^(dim-1), dim-1)
    rows = []
    for k in range(dim):
        block = np.empty((face.shape[0], dim))
        block[:, k] = 1.0
        block[:, [j for j in range(dim) if j != k]] = face
        rows.append(block)
    y = np.vstack(rows)
    norms = space.norm_many(y.T)
    samples = y / norms[:, None]
    h = 2.0 / (axis_points - 1)
    covering = float(space.norm(np.ones(dim))) * h
    return samples, covering


def sup_pairing(space, functional, axis_points: int, budget: int) -> float:
    """max |<x, u>| over sampled unit vectors x; a lower bound on the dual norm."""
    samples, _ = sphere_samples(space, axis_points, budget)
    u = np.asarray(functional, dtype=float).ravel()
    return float(np.abs(samples @ u).max())


def certified_min_ratio(matrix, dom, cod, lipschitz: float, axis_points: int, budget: int):
    """Certified lower bound for min ||A x||_cod over the dom unit sphere.

    Returns (certified, argmin_sample, sampled_min) where
    certified = max(sampled_min - lipschitz * covering, 0).  ``lipschitz`` must
    upper-bound the dom->cod operator norm of A.
    """
    samples, covering = sphere_samples(dom, axis_points, budget)
    ratios = cod.norm_many(np.asarray(matrix, dtype=float) @ samples.T)
    i = int(np.argmin(ratios))
    sampled = float(ratios[i])
    return max(sampled - lipschitz * covering, 0.0), samples[i], sampled


def product_sup_pairing(
    primal: ProductSpaceSpec, functional, axis_points: int, budget: int
) -> float:
    """sup <x, u> over the mixed-norm product unit sphere, by sampling alone.

    The supremum separates: with s_i the per-block suprema over unit block
    spheres, it equals the supremum of sum t_i s_i over nonnegative weights t
    on the outer sphere.  Both layers are sampled exhaustively, so the value
    never relies on the witness formulas it is meant to check.
    """
    parts = primal.split(functional)
    sups = np.array(
        [
            sup_pairing(c, u, axis_points, budget)
            for c, u in zip(primal.components, parts)
        ]
    )
    outer = SpaceSpec(len(primal.components), primal.outer_exponent)
    if len(primal.components) == 1:
        return float(sups[0])
    return sup_pairing(outer, sups, axis_points, budget)
