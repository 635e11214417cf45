"""Monogamy residuals: CKW differences, the powered four-qubit lower bound,
and the closed-form results for GHZ/W superposition states."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .qstate import DensityMatrix, PureState, partial_trace
from .tangles import TangleBoundResult, one_tangle, three_tangle_pure, three_tangle_upper, two_tangle


@dataclass(frozen=True)
class ExponentSchedule:
    """Exponents applied to the m-partite terms; the pairwise exponent is
    fixed at 1, the three-tangle exponent defaults to 3/2."""

    mu3: float = 1.5

    def __post_init__(self):
        if self.mu3 <= 0:
            raise ValueError("mu3 must be positive")

    @property
    def mu(self) -> dict:
        return {2: 1.0, 3: self.mu3}


@dataclass(frozen=True)
class SmReport:
    """Per-focus breakdown of the four-qubit monogamy budget."""

    focus: int
    tau1: float
    tau2_terms: dict  # partner qubit -> squared concurrence
    tau3_bounds: dict  # (qj, qk) -> TangleBoundResult
    residual_lower: float
    mu3: float

    def to_json_dict(self) -> dict:
        return {
            "focus": self.focus,
            "tau1": self.tau1,
            "tau2_terms": {str(k): v for k, v in self.tau2_terms.items()},
            "tau3_bounds": {f"{j}|{k}": b.to_json_dict() for (j, k), b in self.tau3_bounds.items()},
            "residual_lower": self.residual_lower,
            "mu3": self.mu3,
        }


@dataclass(frozen=True)
class GhzwParams:
    """Coefficients of ``alpha |0..0> + beta |W_n> + gamma |1..1>``."""

    n: int
    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("GhzwParams requires n >= 3")
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.gamma) ** 2
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"|alpha|^2+|beta|^2+|gamma|^2 = {total}, expected 1")


def residual_three_tangle(psi3: PureState, focus: int) -> float:
    """CKW residual of a three-qubit pure state (equals the three-tangle)."""
    if psi3.n_qubits != 3:
        raise ValueError(f"expected 3 qubits, got {psi3.n_qubits}")
    partners = [q for q in (1, 2, 3) if q != focus]
    res = one_tangle(psi3, focus)
    for j in partners:
        res -= two_tangle(partial_trace(psi3, tuple(sorted((focus, j)))))
    if -1e-9 <= res < 0.0:
        res = 0.0
    return res


def ckw_residual(psi: PureState, focus: int) -> float:
    """One-tangle minus the sum of pairwise tangles; nonnegative by theorem."""
    if psi.n_qubits < 3:
        raise ValueError("ckw_residual needs at least 3 qubits")
    res = one_tangle(psi, focus)
    for j in range(1, psi.n_qubits + 1):
        if j != focus:
            res -= two_tangle(partial_trace(psi, tuple(sorted((focus, j)))))
    return res


def _assemble_report(
    focus: int,
    tau1: float,
    tau2_terms: dict,
    tau3_bounds: dict,
    sched: ExponentSchedule,
) -> SmReport:
    residual = tau1 - sum(tau2_terms.values())
    residual -= sum(b.value ** sched.mu3 for b in tau3_bounds.values())
    return SmReport(
        focus=focus,
        tau1=tau1,
        tau2_terms=tau2_terms,
        tau3_bounds=tau3_bounds,
        residual_lower=residual,
        mu3=sched.mu3,
    )


def tau4_lower_bound(
    psi4: PureState, focus: int, sched: ExponentSchedule = ExponentSchedule()
) -> SmReport:
    """Lower bound on the residual four-tangle for one focus qubit."""
    if psi4.n_qubits != 4:
        raise ValueError(f"expected 4 qubits, got {psi4.n_qubits}")
    partners = [q for q in (1, 2, 3, 4) if q != focus]
    tau1 = one_tangle(psi4, focus)
    tau2_terms = {
        j: two_tangle(partial_trace(psi4, tuple(sorted((focus, j))))) for j in partners
    }
    tau3_bounds = {
        (j, k): three_tangle_upper(partial_trace(psi4, tuple(sorted((focus, j, k)))))
        for j, k in combinations(partners, 2)
    }
    return _assemble_report(focus, tau1, tau2_terms, tau3_bounds, sched)


def sm_report_all_foci(
    psi4: PureState, sched: ExponentSchedule = ExponentSchedule()
) -> list[SmReport]:
    """Reports for all four foci, sharing the marginal computations."""
    if psi4.n_qubits != 4:
        raise ValueError(f"expected 4 qubits, got {psi4.n_qubits}")
    tau1 = {f: one_tangle(psi4, f) for f in range(1, 5)}
    tau2 = {
        pair: two_tangle(partial_trace(psi4, pair)) for pair in combinations(range(1, 5), 2)
    }
    tau3 = {
        triple: three_tangle_upper(partial_trace(psi4, triple))
        for triple in combinations(range(1, 5), 3)
    }
    reports = []
    for focus in range(1, 5):
        partners = [q for q in range(1, 5) if q != focus]
        tau2_terms = {j: tau2[tuple(sorted((focus, j)))] for j in partners}
        tau3_bounds = {
            (j, k): tau3[tuple(sorted((focus, j, k)))] for j, k in combinations(partners, 2)
        }
        reports.append(_assemble_report(focus, tau1[focus], tau2_terms, tau3_bounds, sched))
    return reports


def ghzw_analytic(p: GhzwParams) -> dict:
    """Closed-form one-tangle and term bounds for GHZ/W superpositions."""
    n = p.n
    a2 = abs(p.alpha) ** 2
    b2 = abs(p.beta) ** 2
    g2 = abs(p.gamma) ** 2
    return {
        "tau1": (4.0 / n**2) * (n**2 * a2 * g2 + (n - 1) * b2 * (b2 + n * g2)),
        "tau2_bound": 4.0 * b2**2 / n**2,
        "tau_nm1_bound": (4.0 / n) * b2 * g2,
        "residual_floor": 4.0 * a2 * g2,
    }


def ghzw_consistency_check(p: GhzwParams) -> dict:
    """Numerically cross-check the closed-form values on the built state."""
    from .states import ghzw  # local import to avoid a module cycle

    if p.n > 6:
        raise ValueError("consistency check constructs the state; n <= 6 only")
    ref = ghzw_analytic(p)
    psi = ghzw(p)
    failures = []
    t1 = one_tangle(psi, 1)
    if abs(t1 - ref["tau1"]) > 1e-9:
        failures.append(f"one_tangle {t1} vs analytic {ref['tau1']}")
    t2 = two_tangle(partial_trace(psi, (1, 2)))
    if t2 > ref["tau2_bound"] + 1e-9:
        failures.append(f"two_tangle {t2} exceeds bound {ref['tau2_bound']}")
    details = {"tau1": t1, "tau2": t2, **ref}
    if p.n == 4:
        residual = tau4_lower_bound(psi, 1).residual_lower
        details["residual_lower"] = residual
        if residual < ref["residual_floor"] - 1e-6:
            failures.append(
                f"residual_lower {residual} below floor {ref['residual_floor']}"
            )
    details["passed"] = not failures
    details["failures"] = failures
    return details
