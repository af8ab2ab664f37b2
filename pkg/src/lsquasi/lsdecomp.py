"""Lewenstein-Sanpera decompositions of the Werner state rho_half = I/8 + |psi-><psi-|/2.

The quasi-optimal problem fixes the entangled component to
|psi(theta)> = cos(theta)|01> - sin(theta)|10> and searches the smallest x >= 0
for which the pseudo-mixture (1 + x) rho_half - x |psi(theta)><psi(theta)| is a
positive, PPT matrix. The separable weight is then delta = 1 / (1 + x).
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .entanglement import concurrence_pure, entanglement_pure_entropy, ppt_min_eigenvalue
from .numerics import DEFAULT_PSD_TOL, RejectedInputError, frobenius_distance, min_eigenvalue, min_eigenvalues
from .states import (
    NORM_TOL,
    SINGLET,
    DensityMatrix,
    PureState,
    ThetaParam,
    partial_transpose_b,
    pseudo_mixture,
    psi_theta,
    rho_half,
    werner,
)

log = logging.getLogger(__name__)

CLAIMED_THRESHOLD = 7.0 / 12.0
CLOSED_FORM_AGREEMENT = 1e-6
# margin slack for the solver; the eigenvalue error on these 4x4 matrices is ~1e-15
SOLVER_TOL = 1e-12


@dataclass(frozen=True)
class SolverOptions:
    grid: int = 4096
    x_cap: float = 3.0
    tol: float = SOLVER_TOL
    x_resolution: float = 1e-10
    chunk: int = 512

    def __post_init__(self):
        if self.grid < 2 or self.chunk < 1:
            raise RejectedInputError("grid size must be >= 2 and chunk >= 1")
        if not (self.x_cap > 0 and self.tol > 0 and self.x_resolution > 0):
            raise RejectedInputError("x_cap, tol and x_resolution must be positive")


@dataclass(frozen=True)
class LSDecomposition:
    lam: float
    separable_part: DensityMatrix
    entangled_part: PureState
    reconstruction_residual: float = float("nan")

    def reconstruct(self) -> np.ndarray:
        return self.lam * self.separable_part.matrix + (1 - self.lam) * self.entangled_part.projector()


@dataclass(frozen=True)
class Verdict:
    passed: bool
    reconstruction_residual: float
    state_margin: float  # min eigenvalue of the separable part
    ppt_margin: float  # min eigenvalue of its partial transpose
    norm_error: float  # | ||psi||^2 - 1 |
    failures: tuple = ()


@dataclass(frozen=True)
class FeasibilityResult:
    theta: ThetaParam
    feasible: bool
    x_min: float | None
    delta_max: float | None
    x_search_interval: tuple
    min_eig_at_solution: tuple | None  # (positivity margin, PPT margin) at x_min
    closed_form_x_min: float | None
    closed_form_agrees: bool | None
    bracket: tuple | None = None  # (infeasible x, x_min) after bisection
    near_cap: bool = False
    tol: float = SOLVER_TOL  # margin slack used for the feasibility decisions


@dataclass(frozen=True)
class ThresholdReport:
    boundary_sin2theta: float | None
    resolution: float
    lower_sample: float | None  # last infeasible sin 2theta below the boundary
    paper_claim: float
    agrees_with_paper: bool
    profile: tuple  # (sin2theta, feasible, x_min) descending

    def render(self) -> str:
        lines = []
        if self.boundary_sin2theta is None:
            lines.append("feasibility boundary: not bracketed in the scanned range")
        else:
            lines.append(f"numerical boundary sin2theta*: {self.boundary_sin2theta:.6f}")
            lines.append(f"bracket: ({self.lower_sample:.6f} infeasible, {self.boundary_sin2theta:.6f} feasible)")
        lines.append(f"paper claim: {self.paper_claim:.6f}")
        lines.append(f"resolution: {self.resolution:g}")
        lines.append(f"verdict: {'AGREES' if self.agrees_with_paper else 'DISAGREES'}")
        return "\n".join(lines)


def verify_decomposition(target: DensityMatrix, d: LSDecomposition, tol: float = 1e-10,
                         psd_tol: float = DEFAULT_PSD_TOL) -> Verdict:
    """Check reconstruction, validity and separability of ``d`` against ``target``."""
    if not isinstance(target, DensityMatrix) or not isinstance(d, LSDecomposition):
        raise RejectedInputError("verify_decomposition needs a DensityMatrix and an LSDecomposition")
    if not (0.0 <= d.lam <= 1.0):
        raise RejectedInputError(f"weight {d.lam!r} outside [0, 1]")
    if tol < 0 or psd_tol < 0:
        raise RejectedInputError("tolerances must be non-negative")

    residual = frobenius_distance(d.reconstruct(), target.matrix)
    state_margin = min_eigenvalue(d.separable_part.matrix)
    ppt_margin = ppt_min_eigenvalue(d.separable_part.matrix)
    norm_error = abs(float(np.sum(np.abs(d.entangled_part.amplitudes) ** 2)) - 1.0)

    failures = []
    if residual > tol:
        failures.append("reconstruction")
    if state_margin < -psd_tol:
        failures.append("positivity")
    if ppt_margin < -psd_tol:
        failures.append("separability")
    if norm_error > NORM_TOL:
        failures.append("normalization")
    return Verdict(not failures, residual, state_margin, ppt_margin, norm_error, tuple(failures))


def _margins(p: ThetaParam, xs) -> tuple[np.ndarray, np.ndarray]:
    rho_s = pseudo_mixture(p, np.atleast_1d(xs))
    return min_eigenvalues(rho_s), min_eigenvalues(partial_transpose_b(rho_s))


def feasibility_profile(p: ThetaParam, x: float) -> tuple[float, float]:
    """(min eigenvalue, min PT eigenvalue) of the pseudo-mixture at weight ``x``."""
    if x < 0:
        raise RejectedInputError(f"x = {x!r} must be non-negative")
    pos, ppt = _margins(p, x)
    return float(pos[0]), float(ppt[0])


def closed_form_x_min(p: ThetaParam) -> float | None:
    s = p.sin2theta
    return 1.0 / (4.0 * s - 1.0) if s > 0.25 else None


def closed_form_delta_max(p: ThetaParam) -> float | None:
    s = p.sin2theta
    return 1.0 - 1.0 / (4.0 * s) if s > 0.25 else None


def _solve_branch(p: ThetaParam, opts: SolverOptions) -> FeasibilityResult:
    tol = opts.tol
    xs = np.linspace(0.0, opts.x_cap, opts.grid)

    def ok(x: float) -> bool:
        pos, ppt = feasibility_profile(p, x)
        return pos >= -tol and ppt >= -tol

    first = None
    best_k, best_g = 0, -math.inf
    for start in range(0, opts.grid, opts.chunk):
        pos, ppt = _margins(p, xs[start:start + opts.chunk])
        good = (pos >= -tol) & (ppt >= -tol)
        if good.any():
            first = start + int(np.argmax(good))
            break
        g = np.minimum(pos, ppt)
        k = int(np.argmax(g))
        if g[k] > best_g:
            best_k, best_g = start + k, float(g[k])

    if first is None:
        # min(pos, ppt) is concave in x (minimum eigenvalues of affine matrix pencils),
        # so its maximum lies between the neighbours of the best grid point.
        lo = xs[max(best_k - 1, 0)]
        hi = xs[min(best_k + 1, opts.grid - 1)]
        res = minimize_scalar(lambda x: -min(feasibility_profile(p, x)), bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-13})
        if -res.fun < -tol:
            return FeasibilityResult(p, False, None, None, (0.0, opts.x_cap), None,
                                     closed_form_x_min(p), None, tol=tol)
        lo, hi = float(lo), float(res.x)
    elif first == 0:
        lo = hi = 0.0
    else:
        lo, hi = float(xs[first - 1]), float(xs[first])

    while hi - lo > opts.x_resolution:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid

    x_min = hi
    near_cap = x_min >= 0.99 * opts.x_cap
    if near_cap:
        log.warning("feasible x_min=%.6g within 1%% of x_cap=%.3g; increase x_cap", x_min, opts.x_cap)
    closed = closed_form_x_min(p)
    return FeasibilityResult(
        theta=p,
        feasible=True,
        x_min=x_min,
        delta_max=1.0 / (1.0 + x_min),
        x_search_interval=(0.0, opts.x_cap),
        min_eig_at_solution=feasibility_profile(p, x_min),
        closed_form_x_min=closed,
        closed_form_agrees=None if closed is None else abs(x_min - closed) <= CLOSED_FORM_AGREEMENT,
        bracket=(lo, hi),
        near_cap=near_cap,
        tol=tol,
    )


@functools.lru_cache(maxsize=4096)
def _solve_cached(p: ThetaParam, opts: SolverOptions) -> FeasibilityResult:
    return _solve_branch(p, opts)


def solve_quasi_optimal(p: ThetaParam, opts: SolverOptions | None = None) -> FeasibilityResult:
    """Smallest x making the pseudo-mixture positive and PPT.

    A uniform grid on [0, x_cap] locates the first feasible point, which bisection then
    refines to ``x_resolution``. If no grid point is feasible, the best margin between
    grid points is maximised before declaring the instance infeasible. theta and
    pi/2 - theta give the same answer: the two pseudo-mixtures differ by a qubit swap.
    """
    return _solve_cached(p, opts or SolverOptions())


def _feasible_or_raise(p: ThetaParam, opts: SolverOptions | None) -> FeasibilityResult:
    result = solve_quasi_optimal(p, opts)
    if not result.feasible:
        raise RejectedInputError(f"no quasi-optimal decomposition at sin2theta = {p.sin2theta:.6g}")
    return result


def concurrence_product(p: ThetaParam, opts: SolverOptions | None = None) -> float:
    """(1 - delta_max) C(psi(theta)) with the numerically found delta_max."""
    result = _feasible_or_raise(p, opts)
    return (1.0 - result.delta_max) * concurrence_pure(psi_theta(result.theta))


def entropy_product(p: ThetaParam, opts: SolverOptions | None = None) -> float:
    result = _feasible_or_raise(p, opts)
    return (1.0 - result.delta_max) * entanglement_pure_entropy(psi_theta(result.theta))


def optimal_for_rho_half() -> LSDecomposition:
    """lambda = 3/4, rho_s = (2/3) I/4 + (1/3)|psi-><psi-|, entangled part |psi->."""
    d = LSDecomposition(0.75, werner(1.0 / 3.0), SINGLET)
    residual = frobenius_distance(d.reconstruct(), rho_half().matrix)
    return LSDecomposition(d.lam, d.separable_part, d.entangled_part, residual)


def quasi_optimal_decomposition(p: ThetaParam, opts: SolverOptions | None = None) -> LSDecomposition:
    result = _feasible_or_raise(p, opts)
    psi = psi_theta(result.theta)
    rho_s = DensityMatrix(pseudo_mixture(result.theta, result.x_min), psd_tolerance=max(
        DEFAULT_PSD_TOL, (opts or SolverOptions()).tol))
    d = LSDecomposition(result.delta_max, rho_s, psi)
    residual = frobenius_distance(d.reconstruct(), rho_half().matrix)
    return LSDecomposition(d.lam, rho_s, psi, residual)


def threshold_scan(resolution: float = 1e-4, s_range: tuple = (0.0, 1.0), coarse_steps: int = 41,
                   opts: SolverOptions | None = None) -> ThresholdReport:
    """Locate the smallest feasible sin 2theta by a descending scan plus bisection."""
    s_min, s_max = map(float, s_range)
    if not (resolution > 0):
        raise RejectedInputError("resolution must be positive")
    if not (0.0 <= s_min < s_max <= 1.0):
        raise RejectedInputError(f"sin2theta range {s_range!r} is empty or outside [0, 1]")
    if coarse_steps < 2:
        raise RejectedInputError("coarse_steps must be >= 2")

    samples = {}

    def feasible(s: float) -> bool:
        r = solve_quasi_optimal(ThetaParam.from_sin2theta(s), opts)
        samples[s] = (s, r.feasible, r.x_min)
        return r.feasible

    grid = np.linspace(s_max, s_min, coarse_steps)
    flags = [feasible(float(s)) for s in grid]
    lo = hi = None
    for i in range(1, len(grid)):
        if flags[i - 1] and not flags[i]:
            hi, lo = float(grid[i - 1]), float(grid[i])
            break

    if hi is None:
        boundary = s_min if all(flags) else None
        profile = tuple(sorted(samples.values(), reverse=True))
        return ThresholdReport(boundary, resolution, None, CLAIMED_THRESHOLD,
                               boundary is not None and abs(boundary - CLAIMED_THRESHOLD) <= resolution, profile)

    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid

    profile = tuple(sorted(samples.values(), reverse=True))
    return ThresholdReport(
        boundary_sin2theta=hi,
        resolution=resolution,
        lower_sample=lo,
        paper_claim=CLAIMED_THRESHOLD,
        agrees_with_paper=abs(hi - CLAIMED_THRESHOLD) <= resolution,
        profile=profile,
    )
