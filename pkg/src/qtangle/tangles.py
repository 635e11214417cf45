"""Tangle measures: one-tangle, two-tangle, pure three-tangle, and the
ray-extension upper bound on the three-tangle of rank-2 three-qubit states.

The upper bound works in the Bloch ball of the rank-2 support: the four
W-class states spanned by the support (roots of a quartic) define a
zero-tangle simplex; states outside it are bounded by extending the ray
from the uniform W-mixture through the state to a pure surface state and
rescaling its exact three-tangle by squared trace-norm ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import nnls

from .qstate import (
    DensityMatrix,
    NumericalError,
    PureState,
    Rank2Decomposition,
    _phase_fix,
    partial_trace,
    rank2_decompose,
    trace_norm,
)

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SIGMA_YY = np.kron(_SIGMA_Y, _SIGMA_Y)

# Nodes for recovering the quartic coefficients of tau3(e1 + z e2) by
# exact interpolation; the inverse Vandermonde is fixed once.
_QUARTIC_NODES = np.array([0.0, 1.0, -1.0, 1.0j, -1.0j])
_QUARTIC_VINV = np.linalg.inv(np.vander(_QUARTIC_NODES, 5, increasing=True))

ZERO_TANGLE_TOL = 1e-9
WEIGHT_TOL = 1e-9
SUPPORT_TOL = 1e-8
DEGREE_TOL = 1e-12  # relative to the largest quartic coefficient


@dataclass(frozen=True)
class WSimplex:
    """Four W-class states of a rank-2 support and their uniform mixture."""

    z_states: tuple
    pi: DensityMatrix
    roots: tuple  # complex root, or None for a root at infinity
    all_zero: bool
    dec: Rank2Decomposition


@dataclass(frozen=True)
class TangleBoundResult:
    """Upper bound on the three-tangle of a rank-2 three-qubit state."""

    value: float
    method: str  # exact-pure | simplex-zero | pi-coincidence | rdl-line
    diagnostics: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "diagnostics": self.diagnostics}


def one_tangle(psi: PureState, focus: int) -> float:
    """4 det of the focus-qubit marginal (its linear entropy)."""
    rho = partial_trace(psi, (focus,))
    return float(np.clip(4.0 * np.linalg.det(rho.entries).real, 0.0, 1.0))


def two_tangle(rho_pair: DensityMatrix) -> float:
    """Squared concurrence of a two-qubit state via the spin-flipped spectrum."""
    if rho_pair.dim != 4:
        raise ValueError(f"two_tangle expects a 4x4 density matrix, got dim={rho_pair.dim}")
    rho = rho_pair.entries
    # The eigenvalues of rho (Syy rho* Syy) equal the squared singular values
    # of sqrt(rho) Syy sqrt(rho)*, which is the numerically stable route.
    evals, evecs = np.linalg.eigh(rho)
    b = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    lams = np.linalg.svd(b @ _SIGMA_YY @ b.conj(), compute_uv=False)
    c = max(0.0, lams[0] - lams[1] - lams[2] - lams[3])
    return float(min(c * c, 1.0))


def _tau3_quartic_form(c: np.ndarray) -> complex:
    """Degree-4 polynomial in the amplitudes whose modulus (times 4) is the
    three-tangle; index is the bitstring rst with qubit 1 most significant."""
    return (
        c[0] ** 2 * c[7] ** 2
        + c[1] ** 2 * c[6] ** 2
        + c[2] ** 2 * c[5] ** 2
        + c[4] ** 2 * c[3] ** 2
        - 2.0
        * (
            c[0] * c[7] * c[1] * c[6]
            + c[0] * c[7] * c[2] * c[5]
            + c[0] * c[7] * c[4] * c[3]
            + c[1] * c[6] * c[2] * c[5]
            + c[1] * c[6] * c[3] * c[4]
            + c[4] * c[3] * c[2] * c[5]
        )
        + 4.0 * (c[0] * c[3] * c[5] * c[6] + c[7] * c[4] * c[2] * c[1])
    )


def three_tangle_pure(psi3: PureState | np.ndarray) -> float:
    """Closed-form three-tangle of a three-qubit pure state.

    Also accepts a raw (possibly unnormalized) length-8 amplitude vector,
    in which case the homogeneous value is returned without range clamping.
    """
    if isinstance(psi3, PureState):
        if psi3.n_qubits != 3:
            raise ValueError(f"three_tangle_pure expects 3 qubits, got {psi3.n_qubits}")
        return float(min(4.0 * abs(_tau3_quartic_form(psi3.amplitudes)), 1.0))
    amps = np.asarray(psi3, dtype=complex).ravel()
    if amps.size != 8:
        raise ValueError(f"expected 8 amplitudes, got {amps.size}")
    return float(4.0 * abs(_tau3_quartic_form(amps)))


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a polynomial (coefficients low to high, nonzero leading term)
    as eigenvalues of its companion matrix."""
    d = len(coeffs) - 1
    if d == 0:
        return np.array([], dtype=complex)
    monic = coeffs[:-1] / coeffs[-1]
    comp = np.zeros((d, d), dtype=complex)
    if d > 1:
        comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -monic
    return np.linalg.eigvals(comp)


def wclass_roots(dec: Rank2Decomposition) -> WSimplex:
    """Zero-tangle states of the rank-2 span and their uniform mixture.

    The quartic p(z) is the (pre-modulus) three-tangle polynomial of
    ``e1 + z e2``; degree deficiencies become roots at infinity (Z = e2).
    """
    if dec.pure:
        raise ValueError("wclass_roots requires a genuinely rank-2 decomposition")
    if dec.dim != 8:
        raise ValueError("wclass_roots expects a three-qubit support")
    vals = np.array([_tau3_quartic_form(dec.e1 + z * dec.e2) for z in _QUARTIC_NODES])
    coeffs = _QUARTIC_VINV @ vals
    scale = float(np.max(np.abs(coeffs)))
    if scale < 1e-14:
        # Polynomial vanishes identically: the whole span is W-class.
        roots: tuple = (0.0 + 0.0j, None, 1.0 + 0.0j, -1.0 + 0.0j)
        all_zero = True
    else:
        keep = np.flatnonzero(np.abs(coeffs) >= DEGREE_TOL * scale)
        degree = int(keep[-1])
        finite = np.sort_complex(_companion_roots(coeffs[: degree + 1]))
        roots = tuple(finite) + (None,) * (4 - degree)
        all_zero = False
    states = []
    for z in roots:
        if z is None:
            vec = dec.e2
        else:
            vec = dec.e1 + z * dec.e2
        states.append(PureState.from_amplitudes(vec, n_qubits=3))
    pi = np.mean([np.outer(s.amplitudes, s.amplitudes.conj()) for s in states], axis=0)
    return WSimplex(
        z_states=tuple(states),
        pi=DensityMatrix.from_entries(pi),
        roots=roots,
        all_zero=all_zero,
        dec=dec,
    )


def _support_matrix(rho: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """2x2 representation of an operator in the rank-2 support basis."""
    return basis.conj().T @ rho @ basis


def _bloch3(m: np.ndarray) -> np.ndarray:
    """Pauli coordinates (x, y, z) of a 2x2 Hermitian matrix."""
    return np.array([2.0 * m[0, 1].real, -2.0 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


def _tn2(m: np.ndarray) -> float:
    """Trace norm of a Hermitian 2x2 matrix."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def simplex_member(rho: DensityMatrix, ws: WSimplex) -> tuple[bool, np.ndarray]:
    """Whether rho is a convex mixture of the four simplex states.

    Solves the 4-unknown system (3 Bloch coordinates + normalization) in
    the support frame; rank-deficient systems (repeated roots) fall back
    to a nonnegative least-squares fit.
    """
    basis = ws.dec.support_basis()
    m_rho = _support_matrix(rho.entries, basis)
    recon = basis @ m_rho @ basis.conj().T
    if np.max(np.abs(rho.entries - recon)) > SUPPORT_TOL:
        raise ValueError("state is not supported on the simplex span")
    a = np.empty((4, 4))
    for l, zstate in enumerate(ws.z_states):
        v = basis.conj().T @ zstate.amplitudes
        a[:3, l] = _bloch3(np.outer(v, v.conj()))
        a[3, l] = 1.0
    b = np.concatenate([_bloch3(m_rho), [1.0]])
    weights, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.linalg.norm(a @ weights - b) < SUPPORT_TOL and weights.min() >= -WEIGHT_TOL:
        return True, weights
    # A rank-deficient system can hide a nonnegative solution from lstsq.
    weights_nn, resid = nnls(a, b)
    if resid < SUPPORT_TOL:
        return True, weights_nn
    return False, weights


def three_tangle_upper(rho3: DensityMatrix) -> TangleBoundResult:
    """Upper bound on the three-tangle of a rank <= 2 three-qubit state."""
    if rho3.dim != 8:
        raise ValueError(f"expected a three-qubit state, got dim={rho3.dim}")
    dec = rank2_decompose(rho3)
    if dec.pure:
        value = three_tangle_pure(PureState.from_amplitudes(dec.e1, n_qubits=3))
        return TangleBoundResult(value=value, method="exact-pure")
    ws = wclass_roots(dec)
    if ws.all_zero:
        return TangleBoundResult(value=0.0, method="simplex-zero")

    basis = dec.support_basis()
    m_rho = _support_matrix(rho3.entries, basis)
    m_pi = _support_matrix(ws.pi.entries, basis)
    dist = _tn2(m_rho - m_pi)
    if dist < 1e-9:
        return TangleBoundResult(value=0.0, method="pi-coincidence")
    member, weights = simplex_member(rho3, ws)
    if member:
        return TangleBoundResult(
            value=0.0, method="simplex-zero", diagnostics={"weights": [float(w) for w in weights]}
        )

    # Extend the ray from pi through rho to the Bloch surface:
    # det((1+t) rho - t pi) = 0 is quadratic in t; take the smallest t > 0.
    diff = m_rho - m_pi
    c0 = np.linalg.det(m_rho).real
    c2 = np.linalg.det(diff).real
    c1 = (np.trace(m_rho) * np.trace(diff) - np.trace(m_rho @ diff)).real
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        raise NumericalError("ray-surface quadratic has no real root")
    ts = []
    if abs(c2) > 1e-30:
        ts = [(-c1 - np.sqrt(disc)) / (2.0 * c2), (-c1 + np.sqrt(disc)) / (2.0 * c2)]
    elif abs(c1) > 1e-30:
        ts = [-c0 / c1]
    positive = sorted(t for t in ts if t > 0.0)
    if not positive:
        raise NumericalError("ray from the W-mixture never reaches the Bloch surface")
    t = positive[0]

    m_phi = m_rho + t * diff
    evals, evecs = np.linalg.eigh(m_phi)
    v = _phase_fix(evecs[:, int(np.argmax(evals))])
    phi = PureState.from_amplitudes(basis @ v, n_qubits=3)
    tau3_phi = three_tangle_pure(phi)
    denom = _tn2(np.outer(v, v.conj()) - m_pi)
    ratio = (dist / denom) ** 2
    raw = ratio * tau3_phi
    return TangleBoundResult(
        value=float(np.clip(raw, 0.0, 1.0)),
        method="rdl-line",
        diagnostics={
            "kappa": float(t * dist),
            "trace_norm_ratio": float(ratio),
            "tau3_phi": float(tau3_phi),
            "raw_value": float(raw),
        },
    )
