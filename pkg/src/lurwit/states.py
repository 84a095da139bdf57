"""Two-qubit polarization states and local unitaries.

Conventions used throughout the package:
  * basis order |HH>, |HV>, |VH>, |VV> with |H> = (1, 0), |V> = (0, 1);
  * measurement bases map to Paulis as 0/90 -> sigma_z, 45/135 -> sigma_x,
    R/L -> sigma_y (so H/V is the computational basis).

All constructors return immutable values; random constructors take an
explicit numpy Generator (see `lurwit.rng.stream`).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .linalg import NumericsError, as_operator, dagger, is_hermitian, tensor_product

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10


class Basis(enum.Enum):
    """Polarization measurement basis and its Pauli operator."""

    LIN_0_90 = "0/90"
    LIN_45_135 = "45/135"
    CIRC_R_L = "R/L"

    @property
    def pauli(self) -> np.ndarray:
        return _BASIS_PAULI[self]


_BASIS_PAULI = {Basis.LIN_0_90: SZ, Basis.LIN_45_135: SX, Basis.CIRC_R_L: SY}

BELL_KINDS = ("psi+", "psi-", "phi+", "phi-")

_BELL_AMPLITUDES = {
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
}


def bell_state(kind: str) -> np.ndarray:
    """Amplitudes of a Bell state; `kind` is one of psi+/psi-/phi+/phi- ("singlet" = psi-)."""
    key = "psi-" if kind == "singlet" else kind
    if key not in _BELL_AMPLITUDES:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}")
    return _BELL_AMPLITUDES[key].copy()


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 4x4 two-qubit state: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_operator(self.matrix, dim=4)
        if not is_hermitian(m, HERMITIAN_TOL):
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} is not 1 within tolerance")
        # PSD validation only; the package's own eigensolver is reserved for
        # the entanglement oracle so the two stay independent.
        if float(np.linalg.eigvalsh(m)[0]) < -PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")
        object.__setattr__(self, "matrix", m)


def density_from_pure(psi) -> DensityMatrix:
    """Projector |psi><psi| for a normalized 4-component amplitude vector."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {v.shape}")
    norm_sq = float(np.sum(np.abs(v) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq}")
    return DensityMatrix(np.outer(v, v.conj()))


class NoiseKind(enum.Enum):
    WERNER = "werner"
    POLARIZED = "polarized"


# The polarized noise term is a single fully polarized product state
# |H,V><H,V|; under it L3(p) = 4 - 4p, so the witness threshold sits at p = 0.
_HV = np.array([0, 1, 0, 0], dtype=complex)

_NOISE_STATES = {
    NoiseKind.WERNER: np.eye(4, dtype=complex) / 4.0,
    NoiseKind.POLARIZED: np.outer(_HV, _HV.conj()),
}


def noise_mixture(p: float, kind: NoiseKind, base: str = "psi-") -> DensityMatrix:
    """Convex mixture p * |Bell><Bell| + (1 - p) * noise, 0 <= p <= 1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight p={p} outside [0, 1]")
    proj = density_from_pure(bell_state(base)).matrix
    return DensityMatrix(p * proj + (1.0 - p) * _NOISE_STATES[kind])


@dataclass(frozen=True, eq=False)
class LocalUnitaryPair:
    """One unitary per party, applied as u_a (x) u_b."""

    u_a: np.ndarray
    u_b: np.ndarray

    def __post_init__(self):
        for name, u in (("u_a", self.u_a), ("u_b", self.u_b)):
            m = as_operator(u, dim=2)
            if np.max(np.abs(dagger(m) @ m - I2)) > UNITARY_TOL:
                raise ValueError(f"{name} is not unitary within tolerance")
            object.__setattr__(self, name, m)

    def joint(self) -> np.ndarray:
        return tensor_product(self.u_a, self.u_b)


_SPECIAL_UNITARIES = {
    "u1": 0.5 * np.array([[1 + 1j, -1 + 1j], [1 + 1j, 1 - 1j]]),
    "u2": 0.5 * np.array([[1 - 1j * np.sqrt(3), 0], [0, 1 + 1j * np.sqrt(3)]]),
    "u3": np.array([[1, 0], [0, -1]], dtype=complex),
}


def special_unitary(which: str) -> LocalUnitaryPair:
    """Reference single-party rotations u1/u2/u3 (second party gets the identity)."""
    key = which.lower()
    if key not in _SPECIAL_UNITARIES:
        raise ValueError(f"unknown special unitary {which!r}; expected u1, u2 or u3")
    return LocalUnitaryPair(_SPECIAL_UNITARIES[key].copy(), I2.copy())


def apply_local_unitary(pair: LocalUnitaryPair, rho: DensityMatrix) -> DensityMatrix:
    u = pair.joint()
    try:
        return DensityMatrix(u @ rho.matrix @ dagger(u))
    except ValueError as exc:  # inputs were valid, so this is a numeric bug
        raise NumericsError(f"local unitary broke a state invariant: {exc}") from exc


def apply_to_pure(pair: LocalUnitaryPair, psi) -> np.ndarray:
    return pair.joint() @ np.asarray(psi, dtype=complex).reshape(4)


def _su2_from_quaternion(q: np.ndarray) -> np.ndarray:
    # unit quaternion (w, x, y, z) -> w*I + i*(x*SX + y*SY + z*SZ), an SU(2) element
    w, x, y, z = q
    return w * I2 + 1j * (x * SX + y * SY + z * SZ)


def haar_random_local_unitary(rng: np.random.Generator) -> LocalUnitaryPair:
    """Independent Haar-uniform SU(2) rotation for each party."""
    qs = rng.standard_normal((2, 4))
    qs /= np.linalg.norm(qs, axis=1, keepdims=True)
    return LocalUnitaryPair(_su2_from_quaternion(qs[0]), _su2_from_quaternion(qs[1]))


def random_bloch_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform pure qubit: uniform azimuth, uniform cos(polar)."""
    phi = rng.uniform(0.0, 2.0 * np.pi)
    cos_theta = rng.uniform(-1.0, 1.0)
    half = np.arccos(cos_theta) / 2.0
    return np.array([np.cos(half), np.exp(1j * phi) * np.sin(half)])


def random_separable_state(rng: np.random.Generator, k: int) -> DensityMatrix:
    """Mixture of k pure product states with simplex-uniform weights."""
    if k < 1:
        raise ValueError("need at least one product term")
    weights = rng.exponential(size=k)
    weights /= weights.sum()
    total = np.zeros((4, 4), dtype=complex)
    for w in weights:
        v = np.kron(random_bloch_state(rng), random_bloch_state(rng))
        total += w * np.outer(v, v.conj())
    return DensityMatrix(total)


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform pure two-qubit state (normalized complex Gaussian vector)."""
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return v / np.linalg.norm(v)


def density_from_json(obj) -> DensityMatrix:
    """Build a state from {"dim": 4, "re": [[...]x4], "im": [[...]x4]}."""
    try:
        dim = obj["dim"]
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (TypeError, KeyError) as exc:
        raise ValueError(f"density JSON must carry dim/re/im fields: {exc}") from exc
    if dim != 4 or re.shape != (4, 4) or im.shape != (4, 4):
        raise ValueError("density JSON must describe a 4x4 matrix")
    return DensityMatrix(re + 1j * im)


def load_density_file(path: str) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return density_from_json(json.load(fh))


def parse_state_spec(spec: str) -> DensityMatrix:
    """Parse a CLI state spec into a density matrix.

    Accepted forms: "singlet", "psi+", "psi-", "phi+", "phi-",
    "werner:p=<float>", "polarized:p=<float>", "u1-singlet", "u2-singlet",
    "u3-singlet", "file:<path>".
    """
    s = spec.strip()
    if s == "singlet" or s in BELL_KINDS:
        return density_from_pure(bell_state(s))
    if s in ("u1-singlet", "u2-singlet", "u3-singlet"):
        pair = special_unitary(s.split("-")[0])
        return apply_local_unitary(pair, density_from_pure(bell_state("psi-")))
    if s.startswith("werner:") or s.startswith("polarized:"):
        family, _, arg = s.partition(":")
        if not arg.startswith("p="):
            raise ValueError(f"expected {family}:p=<float>, got {spec!r}")
        try:
            p = float(arg[2:])
        except ValueError as exc:
            raise ValueError(f"bad mixing weight in {spec!r}") from exc
        return noise_mixture(p, NoiseKind(family))
    if s.startswith("file:"):
        return load_density_file(s[5:])
    raise ValueError(f"unrecognized state spec {spec!r}")
