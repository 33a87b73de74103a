"""IC-POVM construction, linear-inversion tomography, and acceptance estimates.

An informationally complete POVM has d^2 elements spanning Hermitian space;
the dual frame {M_n*} satisfies Tr(M_n M_m*) = delta_nm, so any Hermitian X
equals sum_n Tr(X M_n) M_n*. Measuring N copies and feeding the outcome
frequencies through the dual frame gives the linear-inversion estimate
sum_i (r_i / N) M_i*. Estimates are kept raw (Hermitian but possibly
non-PSD): projecting onto states would change the acceptance statistic.

All Monte-Carlo entry points are deterministic per seed, with per-trial
generators derived from (seed, stream, trial index) so any evaluation order
gives identical aggregates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, tensor

POVM_SUM_TOL = 1e-9
DUALITY_TOL = 1e-8

_STREAM_POVM_A = 10
_STREAM_POVM_B = 11
_STREAM_TRIAL = 7
_STREAM_MEMBER = 17


def _entropy(seed, *keys: int) -> tuple[int, ...]:
    base = list(np.atleast_1d(np.asarray(seed, dtype=np.int64)))
    return tuple(int(e) for e in base) + tuple(int(k) for k in keys)


def _derived_rng(seed, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(list(_entropy(seed, *keys))))


@dataclass(frozen=True, eq=False)
class Povm:
    """IC-POVM: PSD elements summing to identity, with their dual frame."""

    elements: tuple[np.ndarray, ...]
    duals: tuple[np.ndarray, ...]
    dim: int

    def __post_init__(self) -> None:
        d = int(self.dim)
        if len(self.elements) != d * d:
            raise ValueError(f"need {d * d} elements for informational completeness")
        if len(self.duals) != len(self.elements):
            raise ValueError("element and dual counts differ")
        total = sum(self.elements)
        if float(np.max(np.abs(total - np.eye(d)))) > POVM_SUM_TOL:
            raise ValueError("POVM elements do not sum to identity within 1e-9")
        gram = np.array(
            [[np.trace(m @ md).real for md in self.duals] for m in self.elements]
        )
        if float(np.max(np.abs(gram - np.eye(d * d)))) > DUALITY_TOL:
            raise ValueError("dual frame fails Tr(M_n M_m*) = delta within 1e-8")
        frozen_e = []
        frozen_d = []
        for m, md in zip(self.elements, self.duals):
            m = np.asarray(m, dtype=complex).copy()
            md = np.asarray(md, dtype=complex).copy()
            m.setflags(write=False)
            md.setflags(write=False)
            frozen_e.append(m)
            frozen_d.append(md)
        object.__setattr__(self, "elements", tuple(frozen_e))
        object.__setattr__(self, "duals", tuple(frozen_d))
        object.__setattr__(self, "dim", d)

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class OutcomeCounts:
    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64).copy()
        if int(np.sum(counts)) != int(self.total):
            raise ValueError("counts do not sum to the shot total")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "total", int(self.total))


def build_ic_povm(d: int, seed, retries: int = 16) -> Povm:
    """Seeded IC-POVM from d^2 random rank-1 projectors P_n via S^{-1/2} P_n S^{-1/2}.

    Retries with a derived seed if the Gram matrix of the elements is rank
    deficient (astronomically unlikely; guards against degenerate draws).
    """
    if d < 2:
        raise ValueError("need dimension >= 2")
    for attempt in range(retries):
        rng = _derived_rng(seed, attempt)
        projs = []
        for _ in range(d * d):
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            v /= np.linalg.norm(v)
            projs.append(np.outer(v, v.conj()))
        s = sum(projs)
        vals, vecs = np.linalg.eigh(s)
        if float(vals[0]) < 1e-12 * float(vals[-1]):
            continue
        inv_sqrt = (vecs / np.sqrt(vals)) @ vecs.conj().T
        elements = []
        for p in projs:
            m = inv_sqrt @ p @ inv_sqrt
            elements.append(0.5 * (m + m.conj().T))
        gram = np.array([[np.trace(a @ b).real for b in elements] for a in elements])
        gvals = np.linalg.eigvalsh(gram)
        if float(gvals[0]) < 1e-10 * float(gvals[-1]):
            continue
        coeff = np.linalg.inv(gram)
        duals = []
        for m_idx in range(d * d):
            dual = sum(coeff[n_idx, m_idx] * elements[n_idx] for n_idx in range(d * d))
            duals.append(0.5 * (dual + dual.conj().T))
        return Povm(tuple(elements), tuple(duals), d)
    raise RuntimeError(f"no full-rank IC-POVM after {retries} seeds; RNG fault?")


def product_povm(pa: Povm, pb: Povm) -> Povm:
    """Local tensor POVM {P_n ⊗ Q_m}; duals factorize the same way."""
    elements = tuple(tensor(a, b) for a in pa.elements for b in pb.elements)
    duals = tuple(tensor(a, b) for a in pa.duals for b in pb.duals)
    return Povm(elements, duals, pa.dim * pb.dim)


def born_probabilities(rho: DensityMatrix, povm: Povm) -> np.ndarray:
    if rho.dim != povm.dim:
        raise ValueError(f"state dim {rho.dim} does not match POVM dim {povm.dim}")
    return np.array([np.trace(rho.mat @ m).real for m in povm.elements])


def sample_outcomes(rho: DensityMatrix, povm: Povm, shots: int, seed) -> OutcomeCounts:
    """i.i.d. categorical samples from the Born probabilities; deterministic per seed."""
    if shots < 1:
        raise ValueError("need at least one shot")
    p = born_probabilities(rho, povm)
    if float(np.min(p)) < -1e-12:
        raise ValueError(f"negative Born probability {np.min(p):.3e}; invalid inputs")
    p = np.clip(p, 0.0, None)
    p /= np.sum(p)
    rng = _derived_rng(seed)
    counts = rng.multinomial(shots, p)
    return OutcomeCounts(counts, shots)


def reconstruct(counts: OutcomeCounts, povm: Povm) -> np.ndarray:
    """Linear-inversion frame estimate sum_i (r_i / total) M_i*; raw Hermitian output."""
    if counts.total < 1:
        raise ValueError("need at least one recorded shot")
    freqs = counts.counts / counts.total
    return reconstruct_from_probabilities(freqs, povm)


def reconstruct_from_probabilities(probs: np.ndarray, povm: Povm) -> np.ndarray:
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (povm.n_outcomes,):
        raise ValueError("probability vector length does not match POVM")
    est = np.zeros((povm.dim, povm.dim), dtype=complex)
    for p, dual in zip(probs, povm.duals):
        if p != 0.0:
            est += p * dual
    return 0.5 * (est + est.conj().T)


def default_product_povm(dims, seed) -> Povm:
    """The product IC-POVM derived from a master seed (local tomography setup)."""
    pa = build_ic_povm(dims[0], _entropy(seed, _STREAM_POVM_A))
    pb = build_ic_povm(dims[1], _entropy(seed, _STREAM_POVM_B))
    return product_povm(pa, pb)


def _ball_distance(est: np.ndarray, target: DensityMatrix) -> float:
    vals = np.linalg.eigvalsh(est - target.mat)
    return 0.5 * float(np.sum(np.abs(vals)))


def acceptance_probability(
    target: DensityMatrix,
    source: DensityMatrix,
    n: int,
    eps: float,
    trials: int,
    seed,
    povm: Povm | None = None,
) -> float:
    """Probability that tomography of n-1 copies of source lands within eps/2 of target.

    Each trial measures the source n-1 times with a product IC-POVM, forms the
    linear-inversion estimate, and accepts when half the trace norm of
    (estimate - target) is at most eps/2. Standard error of the returned
    fraction is bounded by 1/(2 sqrt(trials)).
    """
    if n < 2:
        raise ValueError("need n >= 2 copies (n - 1 measured)")
    if trials < 1:
        raise ValueError("need at least one trial")
    if target.dims != source.dims:
        raise ValueError(f"shape mismatch: {target.dims} vs {source.dims}")
    if povm is None:
        povm = default_product_povm(target.dims, seed)
    accepted = 0
    for trial in range(trials):
        counts = sample_outcomes(source, povm, n - 1, _entropy(seed, _STREAM_TRIAL, trial))
        est = reconstruct(counts, povm)
        if _ball_distance(est, target) <= eps / 2.0:
            accepted += 1
    return accepted / trials


def mixture_acceptance(
    ens,
    target: DensityMatrix,
    n: int,
    eps: float,
    trials: int,
    seed,
    povm: Povm | None = None,
) -> float:
    """Weight-averaged acceptance probability over an ensemble of source states.

    The POVM is shared across members; per-member sampling seeds derive from
    the master seed.
    """
    if povm is None:
        povm = default_product_povm(target.dims, seed)
    value = 0.0
    for idx, (weight, member) in enumerate(ens.members):
        if weight == 0.0:
            continue
        value += weight * acceptance_probability(
            target, member, n, eps, trials, _entropy(seed, _STREAM_MEMBER, idx), povm
        )
    return value


def member_seed(seed, idx: int) -> tuple[int, ...]:
    """The per-member seed entropy mixture_acceptance uses (exposed for tests)."""
    return _entropy(seed, _STREAM_MEMBER, idx)
