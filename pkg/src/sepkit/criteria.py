"""One-shot separability criteria, each returning a quantitative Verdict.

Every test is a necessary condition for separability: a failure certifies
entanglement, a pass is inconclusive on its own. Margins are signed distances
from the decision threshold (positive = pass). Logs are base 2 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .linalg import (
    DensityMatrix,
    partial_trace,
    partial_transpose,
    realign,
    singular_values,
    tensor,
)

SPECTRAL_REL_TOL = 1e-9
PREFIX_ABS_TOL = 1e-10
ENTROPY_ABS_TOL = 1e-9
CROSSNORM_ABS_TOL = 1e-9

_EIG_FLOOR = 1e-15


@dataclass(frozen=True)
class Verdict:
    criterion: str
    passed: bool
    margin: float
    details: dict[str, Any] = field(default_factory=dict)
    status: str = ""

    def __post_init__(self) -> None:
        if not self.status:
            object.__setattr__(self, "status", "pass" if self.passed else "fail")


def _spectral_verdict(name: str, tested: np.ndarray, extra: dict[str, Any]) -> Verdict:
    vals = np.linalg.eigvalsh(tested)
    margin = float(vals[0])
    tol = SPECTRAL_REL_TOL * float(np.max(np.abs(vals)))
    details = {"tol": tol, **extra}
    return Verdict(name, margin >= -tol, margin, details)


def ppt_test(rho: DensityMatrix) -> Verdict:
    """Positive partial transpose: rho^{T_B} must stay PSD."""
    pt = partial_transpose(rho.mat, rho.dims)
    vals = np.linalg.eigvalsh(pt)
    margin = float(vals[0])
    tol = SPECTRAL_REL_TOL * float(np.max(np.abs(vals)))
    details = {"tol": tol, "pt_eigenvalues": [float(v) for v in vals[::-1]]}
    return Verdict("ppt", margin >= -tol, margin, details)


def reduction_test(rho: DensityMatrix) -> Verdict:
    """Reduction criterion on both sides: I ⊗ rho_B >= rho and rho_A ⊗ I >= rho."""
    da, db = rho.dims
    rho_a = partial_trace(rho.mat, rho.dims, "A")
    rho_b = partial_trace(rho.mat, rho.dims, "B")
    side_b = tensor(np.eye(da), rho_b) - rho.mat
    side_a = tensor(rho_a, np.eye(db)) - rho.mat
    vals_b = np.linalg.eigvalsh(side_b)
    vals_a = np.linalg.eigvalsh(side_a)
    margin_b, margin_a = float(vals_b[0]), float(vals_a[0])
    margin = min(margin_b, margin_a)
    top = max(float(np.max(np.abs(vals_b))), float(np.max(np.abs(vals_a))))
    tol = SPECTRAL_REL_TOL * top
    details = {"tol": tol, "margin_b_side": margin_b, "margin_a_side": margin_a}
    return Verdict("reduction", margin >= -tol, margin, details)


def _renyi2(vals: np.ndarray) -> float:
    return -float(np.log2(float(np.sum(vals**2))))


def _von_neumann(vals: np.ndarray) -> float:
    vals = vals[vals > _EIG_FLOOR]
    return -float(np.sum(vals * np.log2(vals)))


def entropic_test(rho: DensityMatrix, alpha: int | str = 2) -> Verdict:
    """Entropy comparison S(rho_AB) >= S(rho_M) for both marginals M.

    alpha=2 uses the Renyi-2 entropy -log2 Tr(rho^2); alpha='vn' uses the von
    Neumann limit. Zero eigenvalues contribute nothing.
    """
    if alpha == 2:
        ent = _renyi2
        name = "entropic-2"
    elif alpha in ("vn", "von-neumann", 1):
        ent = _von_neumann
        name = "entropic-vn"
    else:
        raise ValueError(f"alpha must be 2 or 'vn', got {alpha!r}")
    vals_ab = np.clip(np.linalg.eigvalsh(rho.mat), 0.0, None)
    vals_a = np.clip(np.linalg.eigvalsh(partial_trace(rho.mat, rho.dims, "A")), 0.0, None)
    vals_b = np.clip(np.linalg.eigvalsh(partial_trace(rho.mat, rho.dims, "B")), 0.0, None)
    s_ab, s_a, s_b = ent(vals_ab), ent(vals_a), ent(vals_b)
    margin = min(s_ab - s_a, s_ab - s_b)
    details = {"tol": ENTROPY_ABS_TOL, "s_ab": s_ab, "s_a": s_a, "s_b": s_b}
    return Verdict(name, margin >= -ENTROPY_ABS_TOL, margin, details)


def majorization_test(rho: DensityMatrix) -> Verdict:
    """Marginal spectra must majorize the global spectrum (prefix-sum dominance)."""
    n = rho.dim
    lam_ab = np.sort(np.linalg.eigvalsh(rho.mat))[::-1]
    margin = np.inf
    prefix = {}
    for keep, label in (("A", "a"), ("B", "b")):
        lam_m = np.sort(np.linalg.eigvalsh(partial_trace(rho.mat, rho.dims, keep)))[::-1]
        lam_m = np.concatenate([lam_m, np.zeros(n - lam_m.size)])
        diffs = np.cumsum(lam_m) - np.cumsum(lam_ab)
        prefix[f"prefix_diffs_{label}"] = [float(x) for x in diffs]
        margin = min(margin, float(np.min(diffs)))
    details = {"tol": PREFIX_ABS_TOL, **prefix}
    return Verdict("majorization", margin >= -PREFIX_ABS_TOL, float(margin), details)


def cross_norm_test(rho: DensityMatrix) -> Verdict:
    """Realignment criterion: trace norm of the realigned state must be <= 1."""
    tn = float(np.sum(singular_values(realign(rho.mat, rho.dims))))
    margin = 1.0 - tn
    details = {"tol": CROSSNORM_ABS_TOL, "realigned_trace_norm": tn}
    return Verdict("crossnorm", margin >= -CROSSNORM_ABS_TOL, margin, details)


ONE_SHOT_TESTS = {
    "ppt": ppt_test,
    "reduction": reduction_test,
    "entropic-2": lambda rho: entropic_test(rho, 2),
    "entropic-vn": lambda rho: entropic_test(rho, "vn"),
    "majorization": majorization_test,
    "crossnorm": cross_norm_test,
}


def run_all(rho: DensityMatrix, symext_k: int = 2, **symext_opts) -> list[Verdict]:
    """All one-shot criteria plus the symmetric-extension search at copies=symext_k."""
    from .symext import has_symmetric_extension

    verdicts = [test(rho) for test in ONE_SHOT_TESTS.values()]
    res = has_symmetric_extension(rho, symext_k, **symext_opts)
    margin = res.tol - res.residual
    status = {"feasible": "pass", "infeasible-evidence": "fail", "inconclusive": "inconclusive"}[
        res.status
    ]
    details = {
        "tol": res.tol,
        "copies": symext_k,
        "solver_status": res.status,
        "iterations": res.iterations,
        "residual": res.residual,
    }
    if verdicts[0].passed and res.status == "infeasible-evidence":
        details["flag"] = "entangled by symmetric-extension evidence despite PPT pass"
    verdicts.append(Verdict(f"symext-{symext_k}", res.status == "feasible", margin, details, status))
    return verdicts
