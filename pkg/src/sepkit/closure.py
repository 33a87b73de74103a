"""Tensor-product closure checks for every implemented separability criterion.

Each criterion here has the property that two passing states yield a passing
tensor product (on the joined A:B cut). The sweep engine samples passing
pairs, re-runs the criterion on their product, and records margins; a single
violation is a bug, either in the criterion or in the closure argument. Each
check also verifies the structural identity that underlies the closure proof
(partial-transpose factorization, the reduction decomposition, entropy
additivity, prefix-sum dominance of Kronecker spectra, realignment
factorization, or constructive extension tensoring).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import ONE_SHOT_TESTS, Verdict
from .linalg import (
    DensityMatrix,
    partial_trace,
    partial_transpose,
    permute_systems,
    realign,
    tensor,
)
from .states import DEFAULT_DIM_CAP, ProductEnsemble, random_density, random_separable
from .symext import extend_separable, verify_extension

SUB_ASSERT_TOL = 1e-8
VIOLATION_TOL = 1e-8

CLOSURE_CRITERIA = ("ppt", "reduction", "entropic-2", "entropic-vn", "majorization", "crossnorm")


def _product_matrix(a: np.ndarray, dims_a, b: np.ndarray, dims_b) -> np.ndarray:
    """Kronecker product regrouped so A-parts precede B-parts."""
    da, db = dims_a
    da2, db2 = dims_b
    m = tensor(a, b)
    return permute_systems(m, [da, db, da2, db2], [0, 2, 1, 3])


def bipartite_product(rho: DensityMatrix, sigma: DensityMatrix, cap: int = DEFAULT_DIM_CAP) -> DensityMatrix:
    """Tensor product of two bipartite states on the joined AA':BB' cut."""
    total = rho.dim * sigma.dim
    if total > cap:
        raise ValueError(f"total dimension {total} exceeds cap {cap}")
    m = _product_matrix(rho.mat, rho.dims, sigma.mat, sigma.dims)
    return DensityMatrix(m, (rho.dim_a * sigma.dim_a, rho.dim_b * sigma.dim_b))


def realign_product_perms(dims_a, dims_b) -> tuple[np.ndarray, np.ndarray]:
    """Index permutations (pa, pb) with realign(product) = kron(realigns)[ix_(pa, pb)].

    Column-stacking vec obeys v(X ⊗ X') = v(X) ⊗ v(X') only up to a fixed
    interleaving that depends on the dimensions; these arrays pin it down.
    """
    da, db = dims_a
    da2, db2 = dims_b
    pa = np.arange((da * da2) ** 2).reshape(da, da, da2, da2).transpose(0, 2, 1, 3).reshape(-1)
    pb = np.arange((db * db2) ** 2).reshape(db, db, db2, db2).transpose(0, 2, 1, 3).reshape(-1)
    return pa, pb


def _entropy(vals: np.ndarray, alpha) -> float:
    vals = np.clip(vals, 0.0, None)
    if alpha == 2:
        return -float(np.log2(np.sum(vals**2)))
    vals = vals[vals > 1e-15]
    return -float(np.sum(vals * np.log2(vals)))


def _prefix_dominates(upper: np.ndarray, lower: np.ndarray, tol: float) -> float:
    """Most negative prefix-sum difference of two equal-length sorted lists."""
    return float(np.min(np.cumsum(upper) - np.cumsum(lower)))


def _closure_sub_assertions(criterion: str, rho: DensityMatrix, sigma: DensityMatrix) -> dict:
    """Structural identity behind the closure proof for one criterion."""
    out: dict[str, float | bool] = {}
    if criterion == "ppt":
        lhs = partial_transpose(
            _product_matrix(rho.mat, rho.dims, sigma.mat, sigma.dims),
            (rho.dim_a * sigma.dim_a, rho.dim_b * sigma.dim_b),
        )
        rhs = _product_matrix(
            partial_transpose(rho.mat, rho.dims),
            rho.dims,
            partial_transpose(sigma.mat, sigma.dims),
            sigma.dims,
        )
        out["pt_factorization_gap"] = float(np.max(np.abs(lhs - rhs)))
        out["ok"] = out["pt_factorization_gap"] <= SUB_ASSERT_TOL
    elif criterion == "reduction":
        x = tensor(partial_trace(rho.mat, rho.dims, "A"), np.eye(rho.dim_b))
        y = rho.mat
        z = tensor(partial_trace(sigma.mat, sigma.dims, "A"), np.eye(sigma.dim_b))
        w = sigma.mat
        term1 = tensor(x - y, z + w)
        term2 = tensor(x + y, z - w)
        m1 = float(np.linalg.eigvalsh(0.5 * (term1 + term1.conj().T))[0])
        m2 = float(np.linalg.eigvalsh(0.5 * (term2 + term2.conj().T))[0])
        out["decomposition_margins"] = (m1, m2)
        out["ok"] = min(m1, m2) >= -SUB_ASSERT_TOL
    elif criterion in ("entropic-2", "entropic-vn"):
        alpha = 2 if criterion == "entropic-2" else "vn"
        prod = bipartite_product(rho, sigma)
        s_prod = _entropy(np.linalg.eigvalsh(prod.mat), alpha)
        s_rho = _entropy(np.linalg.eigvalsh(rho.mat), alpha)
        s_sigma = _entropy(np.linalg.eigvalsh(sigma.mat), alpha)
        out["additivity_gap"] = abs(s_prod - (s_rho + s_sigma))
        out["ok"] = out["additivity_gap"] <= 1e-9
    elif criterion == "majorization":
        prod = bipartite_product(rho, sigma)
        n = prod.dim
        lam_global = np.sort(
            np.kron(np.linalg.eigvalsh(rho.mat), np.linalg.eigvalsh(sigma.mat))
        )[::-1]
        worst = np.inf
        for keep in ("A", "B"):
            lam_r = np.linalg.eigvalsh(partial_trace(rho.mat, rho.dims, keep))
            lam_s = np.linalg.eigvalsh(partial_trace(sigma.mat, sigma.dims, keep))
            lam_m = np.sort(np.kron(lam_r, lam_s))[::-1]
            lam_m = np.concatenate([lam_m, np.zeros(n - lam_m.size)])
            worst = min(worst, _prefix_dominates(lam_m, lam_global, SUB_ASSERT_TOL))
        out["kron_prefix_margin"] = float(worst)
        out["ok"] = worst >= -SUB_ASSERT_TOL
    elif criterion == "crossnorm":
        prod = bipartite_product(rho, sigma)
        lhs = realign(prod.mat, prod.dims)
        pa, pb = realign_product_perms(rho.dims, sigma.dims)
        rhs = tensor(realign(rho.mat, rho.dims), realign(sigma.mat, sigma.dims))
        out["realign_factorization_gap"] = float(np.max(np.abs(lhs - rhs[np.ix_(pa, pb)])))
        out["ok"] = out["realign_factorization_gap"] <= SUB_ASSERT_TOL
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    return out


def closure_check(criterion: str, rho: DensityMatrix, sigma: DensityMatrix) -> Verdict:
    """Run one criterion on the tensor product of two states that pass it."""
    test = ONE_SHOT_TESTS[criterion]
    v_rho, v_sigma = test(rho), test(sigma)
    if not (v_rho.passed and v_sigma.passed):
        raise ValueError(f"both inputs must pass {criterion} before a closure check")
    prod = bipartite_product(rho, sigma)
    verdict = test(prod)
    details = dict(verdict.details)
    details["inputs_margins"] = (v_rho.margin, v_sigma.margin)
    details["sub_assertions"] = _closure_sub_assertions(criterion, rho, sigma)
    return Verdict(verdict.criterion, verdict.passed, verdict.margin, details, verdict.status)


def symext_closure_check(
    ens_rho: ProductEnsemble, ens_sigma: ProductEnsemble, k: int = 2
) -> dict:
    """Constructively verify extension closure: tensored witnesses extend the product.

    Builds explicit k-extensions of two separable states, tensors and regroups
    them so paired B factors become one composite system per copy, and checks
    all extension constraints for the product state directly (no solver run).
    """
    rho, sigma = ens_rho.state(), ens_sigma.state()
    w_rho = extend_separable(ens_rho, k)
    w_sigma = extend_separable(ens_sigma, k)
    da, db = rho.dims
    da2, db2 = sigma.dims
    big = tensor(w_rho, w_sigma)
    # systems: [A, B_1..B_k, A', B'_1..B'_k] -> [A, A', B_1, B'_1, ..., B_k, B'_k]
    dims = [da] + [db] * k + [da2] + [db2] * k
    perm = [0, k + 1]
    for j in range(1, k + 1):
        perm += [j, k + 1 + j]
    witness = permute_systems(big, dims, perm)
    prod = bipartite_product(rho, sigma)
    residuals = verify_extension(witness, prod, k)
    ok = (
        residuals["symmetry_residual"] <= SUB_ASSERT_TOL
        and residuals["marginal_residual"] <= SUB_ASSERT_TOL
        and residuals["psd_margin"] >= -SUB_ASSERT_TOL
    )
    return {"ok": ok, **residuals}


@dataclass(frozen=True)
class SweepReport:
    criterion: str
    trials: int
    violations: int
    sub_assertion_failures: int
    min_margin: float
    margins: tuple[float, ...]


def _sample_passing_state(criterion: str, dims, rng: np.random.Generator) -> DensityMatrix:
    """A state passing the criterion: random separable, or a filtered PPT sample."""
    test = ONE_SHOT_TESTS[criterion]
    use_random = rng.random() < 0.5
    for _ in range(64):
        if use_random:
            cand = random_density(dims[0] * dims[1], int(rng.integers(2**31)), dims)
        else:
            cand, _ = random_separable(dims, int(rng.integers(1, 7)), int(rng.integers(2**31)))
        if test(cand).passed:
            return cand
        use_random = False
    raise RuntimeError(f"could not sample a state passing {criterion}")


def closure_sweep(
    criterion: str,
    trials: int,
    seed,
    dims=(2, 2),
    dims_other=(2, 2),
    symext_k: int = 2,
) -> SweepReport:
    """Sample passing pairs and count closure violations (expected: zero).

    A violation is a product margin below -1e-8 or a failed sub-assertion.
    For criterion='symext' the check is the constructive witness composition
    on separable pairs.
    """
    rng = np.random.default_rng(seed)
    margins = []
    violations = 0
    sub_failures = 0
    if criterion == "symext":
        for _ in range(trials):
            _, ens_rho = random_separable(dims, int(rng.integers(1, 5)), int(rng.integers(2**31)))
            _, ens_sigma = random_separable(
                dims_other, int(rng.integers(1, 5)), int(rng.integers(2**31))
            )
            res = symext_closure_check(ens_rho, ens_sigma, symext_k)
            margins.append(float(res["psd_margin"]))
            if not res["ok"]:
                violations += 1
        return SweepReport(
            "symext", trials, violations, 0, float(np.min(margins)), tuple(margins)
        )
    for _ in range(trials):
        rho = _sample_passing_state(criterion, dims, rng)
        sigma = _sample_passing_state(criterion, dims_other, rng)
        verdict = closure_check(criterion, rho, sigma)
        margins.append(verdict.margin)
        if verdict.margin < -VIOLATION_TOL:
            violations += 1
        if not verdict.details["sub_assertions"]["ok"]:
            sub_failures += 1
    return SweepReport(
        criterion, trials, violations, sub_failures, float(np.min(margins)), tuple(margins)
    )
