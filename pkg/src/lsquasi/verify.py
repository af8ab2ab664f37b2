"""Reproduction checks for the rho_half decompositions, shared by ``lsquasi verify``."""

from __future__ import annotations

from dataclasses import dataclass

from .entanglement import ls_entanglement_measure, ppt_min_eigenvalue, werner_ppt_boundary
from .lsdecomp import (
    closed_form_delta_max,
    closed_form_x_min,
    concurrence_product,
    entropy_product,
    optimal_for_rho_half,
    solve_quasi_optimal,
    verify_decomposition,
)
from .states import SINGLET, ThetaParam, rho_half

SIN2THETA_GRID = (0.70, 0.75, 0.80, 0.90, 1.00)


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    tol: float
    mode: str = "eq"  # "eq": |actual - expected| <= tol; "ge": actual >= expected - tol; "ne": |.| > tol

    @property
    def passed(self) -> bool:
        if self.actual is None:
            return False
        if self.mode == "ge":
            return self.actual >= self.expected - self.tol
        if self.mode == "ne":
            return abs(self.actual - self.expected) > self.tol
        return abs(self.actual - self.expected) <= self.tol

    def line(self) -> str:
        rel = {"eq": "=", "ge": ">=", "ne": "!="}[self.mode]
        actual = "n/a" if self.actual is None else f"{self.actual:.12g}"
        return (f"{'PASS' if self.passed else 'FAIL'}  {self.name}: expected {rel} {self.expected:.12g}, "
                f"actual {actual}, tol {self.tol:g}")


def _solved(s: float):
    r = solve_quasi_optimal(ThetaParam.from_sin2theta(s))
    return r


def fixture_checks() -> list[Check]:
    checks = []
    opt = optimal_for_rho_half()
    verdict = verify_decomposition(rho_half(), opt, tol=1e-12)
    checks.append(Check("optimal lambda_opt", 0.75, opt.lam, 0.0))
    checks.append(Check("optimal reconstruction residual", 0.0, verdict.reconstruction_residual, 1e-12))
    checks.append(Check("optimal rho_s PPT margin", 0.0, ppt_min_eigenvalue(opt.separable_part.matrix), 1e-12, "ge"))
    checks.append(Check("optimal decomposition verdict", 1.0, float(verdict.passed), 0.0))
    checks.append(Check("E(rho_half) = (1 - lambda_opt) E(psi-)", 0.25, ls_entanglement_measure(opt.lam, SINGLET), 1e-12))

    for s in SIN2THETA_GRID:
        p = ThetaParam.from_sin2theta(s)
        r = _solved(s)
        checks.append(Check(f"x_min at sin2theta={s:.2f}", closed_form_x_min(p), r.x_min, 1e-6))
        checks.append(Check(f"delta_max at sin2theta={s:.2f}", closed_form_delta_max(p), r.delta_max, 1e-6))
    for s in SIN2THETA_GRID:
        checks.append(Check(f"concurrence product at sin2theta={s:.2f}", 0.25,
                            concurrence_product(ThetaParam.from_sin2theta(s)), 1e-6))
    for s in SIN2THETA_GRID:
        e = entropy_product(ThetaParam.from_sin2theta(s))
        if s < 1.0:
            checks.append(Check(f"entropy product differs at sin2theta={s:.2f}", 0.25, e, 1e-3, "ne"))
        else:
            checks.append(Check("entropy product at sin2theta=1.00", 0.25, e, 1e-9))

    checks.append(Check("Werner PPT boundary epsilon", 1.0 / 3.0, werner_ppt_boundary(), 1e-9))
    return checks
