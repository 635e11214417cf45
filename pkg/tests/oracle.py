"""Test-only numerical convex-roof minimizer for the mixed three-tangle.

Independent of the ray-extension bound: it searches directly over length-4
pure-state decompositions of a rank-2 state, parameterized by 4x2 isometries
applied to the weighted eigenvectors. Each restart runs a local descent on
the roof functional and then polishes through a smooth surrogate sharing its
zero set (the root-tangle objective has a kink exactly at its minimum); the
reported value is the functional minimum over every visited candidate.
"""

import numpy as np
from scipy.optimize import minimize

from qtangle.qstate import DensityMatrix, rank2_decompose
from qtangle.tangles import _tau3_quartic_form


def _members(x: np.ndarray, weighted: np.ndarray) -> np.ndarray:
    m = (x[:8] + 1j * x[8:]).reshape(4, 2)
    q, _ = np.linalg.qr(m)
    return q @ weighted  # rows: unnormalized decomposition members


def _quartic_rows(s: np.ndarray) -> np.ndarray:
    c = s.T
    return np.abs(_tau3_quartic_form(c))


def _roof_objective(x: np.ndarray, weighted: np.ndarray) -> float:
    # sqrt(tau3) is degree-2 homogeneous, so the probability weights are
    # already absorbed by the unnormalized member vectors.
    return float(np.sum(2.0 * np.sqrt(_quartic_rows(_members(x, weighted)))))


def _surrogate(x: np.ndarray, weighted: np.ndarray) -> float:
    return float(np.sum(_quartic_rows(_members(x, weighted)) ** 2))


def convex_roof_tau3(rho: DensityMatrix, restarts: int = 32, seed: int = 0) -> float:
    """Squared infimum of the decomposition-averaged root-three-tangle."""
    dec = rank2_decompose(rho)
    weighted = np.vstack(
        [np.sqrt(dec.lam) * dec.e1, np.sqrt(1.0 - dec.lam) * dec.e2]
    )  # 2 x 8
    rng = np.random.default_rng(seed)
    best = np.inf
    for _ in range(restarts):
        x0 = rng.normal(size=16)
        res = minimize(_roof_objective, x0, args=(weighted,), method="L-BFGS-B")
        best = min(best, res.fun)
        polished = minimize(
            _surrogate,
            res.x,
            args=(weighted,),
            method="L-BFGS-B",
            options={"ftol": 1e-18, "gtol": 1e-16, "maxiter": 500},
        )
        best = min(best, _roof_objective(polished.x, weighted))
        if best < 5e-4:  # squared value below 2.5e-7: the roof is zero
            break
    return float(best**2)
