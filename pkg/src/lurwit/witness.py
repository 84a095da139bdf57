"""Uncertainty-sum entanglement witnesses for two-qubit states.

A witness is a list of paired local observables {(a_i, b_i)}. Separable
states obey two families of bounds:

  * plain witness:     sum_i var(a_i + b_i)                 >= U_A + U_B
  * modified witness:  sum_i var(a_i) + var(b_i) - 2|cov_i| >= U_A + U_B

where U_A (U_B) is the greatest lower bound of sum_i var(a_i) over
single-party states. A value below the bound certifies entanglement; the
modified form is sensitive only to the covariance magnitude, so it also
catches states whose covariances have unhelpful signs. The Peres
partial-transpose test gives the exact ground truth for two qubits and is
exposed as `ppt_min_eigenvalue`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import (
    NumericsError,
    as_operator,
    hermitian_eigenvalues,
    is_hermitian,
    partial_transpose_second,
    tensor_product,
)
from .states import I2, SX, SY, SZ, Basis, DensityMatrix

EXPECTATION_IMAG_TOL = 1e-10
DECOMPOSITION_TOL = 1e-10
VERDICT_MARGIN = 1e-9
HERMITIAN_TOL = 1e-10


class Verdict(enum.Enum):
    ENTANGLEMENT_DETECTED = "ENTANGLEMENT_DETECTED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """Paired local observables plus the single-party bounds they must beat.

    `pairs` holds (a_i, b_i, label) triples of Hermitian 2x2 operators;
    `bound_a + bound_b` is the separable bound for both witness families.
    The lifted two-qubit operators are precomputed once per set because
    Monte Carlo studies evaluate the same set on very many states.
    """

    pairs: tuple
    bound_a: float
    bound_b: float

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("observable set needs at least one pair")
        checked = []
        lifted = []
        for a, b, label in self.pairs:
            a = as_operator(a, dim=2)
            b = as_operator(b, dim=2)
            if not is_hermitian(a, HERMITIAN_TOL) or not is_hermitian(b, HERMITIAN_TOL):
                raise ValueError(f"observables for {label!r} must be Hermitian")
            checked.append((a, b, str(label)))
            a4 = np.kron(a, I2)
            b4 = np.kron(I2, b)
            s = a4 + b4
            lifted.append((a4, a4 @ a4, b4, b4 @ b4, np.kron(a, b), s, s @ s))
        if self.bound_a < 0 or self.bound_b < 0:
            raise ValueError("single-party bounds must be nonnegative")
        object.__setattr__(self, "pairs", tuple(checked))
        object.__setattr__(self, "_lifted", tuple(lifted))

    @property
    def separable_bound(self) -> float:
        return self.bound_a + self.bound_b


@dataclass(frozen=True)
class PairStats:
    label: str
    var_a: float
    var_b: float
    var_sum: float
    covariance: float


@dataclass(frozen=True)
class WitnessReport:
    """Per-pair statistics plus both witness values and their verdicts."""

    pairs: tuple
    l_value: float
    ml_value: float
    separable_bound: float
    verdict_l: Verdict
    verdict_ml: Verdict


def _expect(rho: DensityMatrix, op: np.ndarray) -> float:
    value = np.trace(rho.matrix @ op)
    if abs(value.imag) >= EXPECTATION_IMAG_TOL:
        raise NumericsError(f"expectation of a Hermitian operator came out complex: {value}")
    return float(value.real)


def expectation(rho: DensityMatrix, obs) -> float:
    """<obs> = Tr(rho obs) for a Hermitian two-qubit operator."""
    return _expect(rho, as_operator(obs, dim=4))


def variance(rho: DensityMatrix, obs) -> float:
    o = as_operator(obs, dim=4)
    return _expect(rho, o @ o) - _expect(rho, o) ** 2


def covariance(rho: DensityMatrix, a, b) -> float:
    """cov(a, b) = <a x b> - <a x I><I x b> for local observables a, b."""
    a = as_operator(a, dim=2)
    b = as_operator(b, dim=2)
    joint = _expect(rho, tensor_product(a, b))
    return joint - _expect(rho, tensor_product(a, I2)) * _expect(rho, tensor_product(I2, b))


def variance_of_sum(rho: DensityMatrix, a, b) -> float:
    """Variance of (a x I + I x b), computed directly on the joint operator."""
    s = tensor_product(as_operator(a, dim=2), I2) + tensor_product(I2, as_operator(b, dim=2))
    return variance(rho, s)


def _pair_stats(rho: DensityMatrix, label: str, lifted) -> PairStats:
    a4, a4_sq, b4, b4_sq, ab, s, s_sq = lifted
    mean_a = _expect(rho, a4)
    mean_b = _expect(rho, b4)
    var_a = _expect(rho, a4_sq) - mean_a**2
    var_b = _expect(rho, b4_sq) - mean_b**2
    cov = _expect(rho, ab) - mean_a * mean_b
    var_sum = _expect(rho, s_sq) - _expect(rho, s) ** 2  # direct route, not the decomposition
    if abs(var_sum - (var_a + var_b + 2.0 * cov)) > DECOMPOSITION_TOL:
        raise NumericsError(
            f"variance decomposition failed for pair {label!r}: "
            f"{var_sum} vs {var_a + var_b + 2.0 * cov}"
        )
    return PairStats(label, var_a, var_b, var_sum, cov)


def lur_value(rho: DensityMatrix, oset: ObservableSet) -> float:
    """Sum of variances of the paired sums; compare against oset.separable_bound."""
    return sum(
        _pair_stats(rho, label, ops).var_sum
        for (_, _, label), ops in zip(oset.pairs, oset._lifted)
    )


def mlur_value(rho: DensityMatrix, oset: ObservableSet) -> float:
    """Sum of var(a_i) + var(b_i) - 2|cov_i|.

    The equivalent form sum_i var(a_i + b_i) - 4*max(0, cov_i) is computed
    alongside as an internal consistency check; the two must agree to
    within roundoff or the statistics code is broken.
    """
    primary = 0.0
    alternative = 0.0
    for (_, _, label), ops in zip(oset.pairs, oset._lifted):
        st = _pair_stats(rho, label, ops)
        primary += st.var_a + st.var_b - 2.0 * abs(st.covariance)
        alternative += st.var_sum - 4.0 * max(0.0, st.covariance)
    if abs(primary - alternative) > DECOMPOSITION_TOL:
        raise NumericsError(f"modified-witness forms disagree: {primary} vs {alternative}")
    return primary


def standard_sets() -> dict[str, ObservableSet]:
    """The two polarization witness sets.

    L2 pairs the 0/90 and 45/135 bases (separable bound 1 + 1 = 2); L3 adds
    the circular basis (bound 2 + 2 = 4). Identical Pauli measurements on
    both parties in every basis.
    """
    l2 = ObservableSet(
        pairs=((SZ, SZ, Basis.LIN_0_90.value), (SX, SX, Basis.LIN_45_135.value)),
        bound_a=1.0,
        bound_b=1.0,
    )
    l3 = ObservableSet(
        pairs=(
            (SZ, SZ, Basis.LIN_0_90.value),
            (SX, SX, Basis.LIN_45_135.value),
            (SY, SY, Basis.CIRC_R_L.value),
        ),
        bound_a=2.0,
        bound_b=2.0,
    )
    return {"L2": l2, "L3": l3}


def _variance_sum_grid(observables, theta, phi) -> np.ndarray:
    """Sum of single-qubit variances on a (theta, phi) Bloch grid."""
    c0 = np.cos(theta / 2.0)
    s1 = np.sin(theta / 2.0)
    phase = np.exp(1j * phi)
    total = np.zeros(np.broadcast(theta, phi).shape)
    for o in observables:
        o2 = o @ o
        cross = np.real(o[0, 1] * phase)  # <psi|O|psi> cross term, O Hermitian
        cross2 = np.real(o2[0, 1] * phase)
        mean = c0**2 * o[0, 0].real + s1**2 * o[1, 1].real + 2.0 * c0 * s1 * cross
        mean_sq = c0**2 * o2[0, 0].real + s1**2 * o2[1, 1].real + 2.0 * c0 * s1 * cross2
        total += mean_sq - mean**2
    return total


def local_bound(observables, grid: tuple[int, int] = (64, 128), tol: float = 1e-6) -> float:
    """Greatest lower bound of sum_i var(o_i) over single-qubit states.

    Each variance is concave in the state (<O^2> is linear, -<O>^2 concave),
    so the minimum of the sum over all states is attained on the pure-state
    boundary; it suffices to search the Bloch sphere. A coarse grid locates
    the basin and a shrinking local grid refines the minimizer until the
    value is converged to `tol`.
    """
    obs = [as_operator(o, dim=2) for o in observables]
    if not obs:
        raise ValueError("need at least one observable")
    for o in obs:
        if not is_hermitian(o, HERMITIAN_TOL):
            raise ValueError("observables must be Hermitian")

    n_theta, n_phi = grid
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    values = _variance_sum_grid(obs, theta[:, None], phi[None, :])
    i, j = np.unravel_index(np.argmin(values), values.shape)
    best = float(values[i, j])
    t_best, p_best = float(theta[i]), float(phi[j])

    # halve the search box until it is far below sqrt(tol); the value
    # converges quadratically in the box size near the minimizer
    dt = np.pi / (n_theta - 1)
    dp = 2.0 * np.pi / n_phi
    while dt > tol * 1e-3:
        t_grid = np.clip(np.linspace(t_best - dt, t_best + dt, 9), 0.0, np.pi)
        p_grid = p_best + np.linspace(-dp, dp, 9)  # phi is periodic, no clamping
        values = _variance_sum_grid(obs, t_grid[:, None], p_grid[None, :])
        i, j = np.unravel_index(np.argmin(values), values.shape)
        if float(values[i, j]) < best:
            best = float(values[i, j])
            t_best, p_best = float(t_grid[i]), float(p_grid[j])
        dt *= 0.5
        dp *= 0.5
    return best


def ppt_min_eigenvalue(rho: DensityMatrix) -> float:
    """Minimum eigenvalue of the partial transpose; negative iff entangled."""
    return float(hermitian_eigenvalues(partial_transpose_second(rho.matrix))[0])


def verdict_for(value: float, bound: float) -> Verdict:
    # margin keeps boundary separable states from being flagged by roundoff
    if value < bound - VERDICT_MARGIN:
        return Verdict.ENTANGLEMENT_DETECTED
    return Verdict.INCONCLUSIVE


def evaluate(rho: DensityMatrix, oset: ObservableSet) -> WitnessReport:
    """Full per-pair statistics plus both witness values and verdicts."""
    stats = [
        _pair_stats(rho, label, ops)
        for (_, _, label), ops in zip(oset.pairs, oset._lifted)
    ]
    l_value = sum(st.var_sum for st in stats)
    ml_value = sum(st.var_a + st.var_b - 2.0 * abs(st.covariance) for st in stats)
    bound = oset.separable_bound
    return WitnessReport(
        pairs=tuple(stats),
        l_value=l_value,
        ml_value=ml_value,
        separable_bound=bound,
        verdict_l=verdict_for(l_value, bound),
        verdict_ml=verdict_for(ml_value, bound),
    )
