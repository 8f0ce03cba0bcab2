"""Shared numeric configuration.

A single immutable config object feeds every tolerance, iteration budget and
random stream in the package, so that identical (input, seed, config) triples
reproduce identical results.
"""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class NumericsConfig:
    # tolerances
    tol_exact: float = 1e-10      # relative, for closed-form identities
    tol_estimate: float = 1e-6    # for optimization-based estimates
    frame_rel_threshold: float = 1e-8   # lower frame bound counts as positive if A > thr * B

    # multistart ascent (norm maximization)
    restarts: int = 16
    max_iterations: int = 500
    ratio_tol: float = 1e-12      # relative stop criterion on successive ratios
    seed: int = 0

    # descent / infimum estimation
    sample_batch: int = 2048      # vectorized random candidates for minima
    polish_starts: int = 2        # Nelder-Mead polish runs (0 disables)
    polish_maxfev: int = 200

    # exact sign enumeration for the l^inf -> l^r norm
    vertex_limit: int = 20

    # dense sphere-grid oracles
    grid_cert_max_dim: int = 3    # Lipschitz-certified minima up to this dimension
    grid_axis_points: int = 240   # per-axis resolution of sphere grids
    grid_budget: int = 2_000_000  # hard cap on grid samples

    # multiplier inversion
    min_symbol: float = 1e-12

    # instance generation
    retry_cap: int = 64
    max_condition: float = 200.0  # conditioning cap for generated Riesz syntheses

    # continuity suites
    n_max: int = 40
    deviation_base: float = 2.0   # deviation schedule base^-n

    def fast(self) -> "NumericsConfig":
        """Cheaper profile for inner loops (generation, precondition checks)."""
        return replace(self, restarts=6, polish_starts=0, grid_cert_max_dim=0)


DEFAULT_CONFIG = NumericsConfig()
