import json

import numpy as np
import pytest

from lurwit.linalg import NumericsError, partial_transpose_second
from lurwit.rng import stream
from lurwit.states import (
    BELL_KINDS,
    DensityMatrix,
    LocalUnitaryPair,
    NoiseKind,
    apply_local_unitary,
    apply_to_pure,
    bell_state,
    density_from_json,
    density_from_pure,
    haar_random_local_unitary,
    noise_mixture,
    parse_state_spec,
    random_bloch_state,
    random_pure_state,
    random_separable_state,
    special_unitary,
)
from oracles import SZ, I2, eig_oracle

SQ2 = 1.0 / np.sqrt(2)


def test_bell_amplitudes():
    assert np.allclose(bell_state("psi-"), [0, SQ2, -SQ2, 0], atol=1e-15)
    assert np.allclose(bell_state("psi+"), [0, SQ2, SQ2, 0], atol=1e-15)
    assert np.allclose(bell_state("phi+"), [SQ2, 0, 0, SQ2], atol=1e-15)
    assert np.allclose(bell_state("phi-"), [SQ2, 0, 0, -SQ2], atol=1e-15)


def test_bell_states_are_normalized():
    for kind in BELL_KINDS:
        assert abs(np.linalg.norm(bell_state(kind)) - 1.0) <= 1e-15


def test_singlet_alias_and_unknown_kind():
    assert np.array_equal(bell_state("singlet"), bell_state("psi-"))
    with pytest.raises(ValueError):
        bell_state("psi?")


def test_density_from_pure_is_rank_one_projector():
    rho = density_from_pure(bell_state("psi-"))
    assert np.allclose(eig_oracle(rho.matrix), [0, 0, 0, 1], atol=1e-12)
    assert rho.matrix[1, 1].real == pytest.approx(0.5, abs=1e-15)
    # projector property rho^2 = rho
    assert np.max(np.abs(rho.matrix @ rho.matrix - rho.matrix)) <= 1e-14


def test_density_from_pure_rejects_unnormalized():
    with pytest.raises(ValueError):
        density_from_pure(np.array([1.0, 1.0, 0.0, 0.0]))


def test_density_matrix_invariants_enforced():
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.5, 0.5, 0.5, -0.5]))  # negative eigenvalue
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([0.7, 0.5, 0.0, 0.0]))  # trace 1.2
    bad = np.eye(4, dtype=complex) / 4.0
    bad[0, 1] = 0.1
    with pytest.raises(ValueError):
        DensityMatrix(bad)  # not Hermitian


def test_noise_mixture_degenerate_cases():
    proj = density_from_pure(bell_state("psi-")).matrix
    assert np.allclose(noise_mixture(1.0, NoiseKind.WERNER).matrix, proj, atol=1e-15)
    assert np.allclose(noise_mixture(1.0, NoiseKind.POLARIZED).matrix, proj, atol=1e-15)
    assert np.allclose(noise_mixture(0.0, NoiseKind.WERNER).matrix, np.eye(4) / 4, atol=1e-15)


def test_noise_mixture_rejects_bad_weight():
    with pytest.raises(ValueError):
        noise_mixture(-0.1, NoiseKind.WERNER)
    with pytest.raises(ValueError):
        noise_mixture(1.1, NoiseKind.POLARIZED)


def test_werner_boundary_is_ppt_critical():
    rho = noise_mixture(1.0 / 3.0, NoiseKind.WERNER)
    assert abs(eig_oracle(partial_transpose_second(rho.matrix))[0]) <= 1e-10


def test_noise_mixtures_stay_positive_on_grid():
    for kind in NoiseKind:
        for p in np.linspace(0.0, 1.0, 101):
            rho = noise_mixture(float(p), kind)
            assert eig_oracle(rho.matrix)[0] >= -1e-12


def test_special_unitaries_are_unitary_with_trivial_second_factor():
    for which in ("u1", "u2", "u3"):
        pair = special_unitary(which)
        assert np.max(np.abs(pair.u_a.conj().T @ pair.u_a - I2)) <= 1e-12
        assert np.array_equal(pair.u_b, I2)
    with pytest.raises(ValueError):
        special_unitary("u4")


def test_u3_maps_singlet_to_psi_plus():
    out = apply_to_pure(special_unitary("u3"), bell_state("psi-"))
    fidelity = abs(np.vdot(bell_state("psi+"), out)) ** 2
    assert fidelity == pytest.approx(1.0, abs=1e-12)


def test_u1_singlet_expansion():
    out = apply_to_pure(special_unitary("u1"), bell_state("psi-"))
    target = (
        1j * bell_state("psi+")
        + bell_state("psi-")
        + bell_state("phi+")
        - 1j * bell_state("phi-")
    ) / 2.0
    assert np.max(np.abs(out - target)) <= 1e-12


def test_u2_singlet_expansion():
    out = apply_to_pure(special_unitary("u2"), bell_state("psi-"))
    target = (-1j * np.sqrt(3) * bell_state("psi+") + bell_state("psi-")) / 2.0
    assert np.max(np.abs(out - target)) <= 1e-12


def test_identity_pair_leaves_state_unchanged():
    rho = noise_mixture(0.4, NoiseKind.WERNER)
    out = apply_local_unitary(LocalUnitaryPair(I2, I2), rho)
    assert np.allclose(out.matrix, rho.matrix, atol=1e-15)


def test_u3_transports_singlet_projector():
    rho = density_from_pure(bell_state("psi-"))
    out = apply_local_unitary(special_unitary("u3"), rho)
    assert np.allclose(out.matrix, density_from_pure(bell_state("psi+")).matrix, atol=1e-14)


def test_local_unitary_pair_rejects_non_unitary():
    with pytest.raises(ValueError):
        LocalUnitaryPair(np.array([[1, 1], [0, 1]], dtype=complex), I2)


def test_ppt_spectrum_invariant_under_local_unitaries():
    g = stream(123)
    for _ in range(50):
        rho = random_separable_state(g, 3) if g.uniform() < 0.5 else density_from_pure(
            random_pure_state(g)
        )
        pair = haar_random_local_unitary(g)
        before = eig_oracle(partial_transpose_second(rho.matrix))[0]
        after = eig_oracle(partial_transpose_second(apply_local_unitary(pair, rho).matrix))[0]
        assert abs(before - after) <= 1e-10


def test_haar_unitaries_are_special_unitary():
    g = stream(7)
    for _ in range(500):
        pair = haar_random_local_unitary(g)
        for u in (pair.u_a, pair.u_b):
            assert np.max(np.abs(u.conj().T @ u - I2)) <= 1e-10
            assert abs(abs(np.linalg.det(u)) - 1.0) <= 1e-10


def test_haar_mean_polarization_vanishes():
    # <sz> averaged over rotations of |H> converges to 0
    g = stream(99)
    total = 0.0
    n = 100_000
    for _ in range(n):
        u = haar_random_local_unitary(g).u_a
        total += (u.conj().T @ SZ @ u)[0, 0].real
    assert abs(total / n) <= 0.02


def test_random_bloch_state_is_normalized():
    g = stream(5)
    for _ in range(100):
        v = random_bloch_state(g)
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-12


def test_random_separable_state_basics():
    g = stream(17)
    for k in range(1, 7):
        rho = random_separable_state(g, k)
        assert abs(np.trace(rho.matrix).real - 1.0) <= 1e-12
        assert eig_oracle(partial_transpose_second(rho.matrix))[0] >= -1e-10
    with pytest.raises(ValueError):
        random_separable_state(g, 0)


def test_random_separable_state_is_deterministic():
    a = random_separable_state(stream(31, 4), 5).matrix
    b = random_separable_state(stream(31, 4), 5).matrix
    assert np.array_equal(a, b)


def test_separable_ensemble_satisfies_peres_criterion():
    # module-level soundness sweep: product mixtures never go NPT
    worst = 0.0
    for i in range(10_000):
        g = stream(2001, i)
        rho = random_separable_state(g, (i % 6) + 1)
        worst = min(worst, eig_oracle(partial_transpose_second(rho.matrix))[0])
    assert worst >= -1e-9


def test_random_pure_state_normalized():
    g = stream(8)
    for _ in range(100):
        assert abs(np.linalg.norm(random_pure_state(g)) - 1.0) <= 1e-12


def test_parse_state_spec_named_states():
    singlet = parse_state_spec("singlet")
    assert np.allclose(singlet.matrix, density_from_pure(bell_state("psi-")).matrix)
    for kind in BELL_KINDS:
        parse_state_spec(kind)
    u2 = parse_state_spec("u2-singlet")
    expected = apply_local_unitary(special_unitary("u2"), density_from_pure(bell_state("psi-")))
    assert np.allclose(u2.matrix, expected.matrix, atol=1e-14)


def test_parse_state_spec_noise_families():
    rho = parse_state_spec("werner:p=0.25")
    assert np.allclose(rho.matrix, noise_mixture(0.25, NoiseKind.WERNER).matrix)
    rho = parse_state_spec("polarized:p=0.5")
    assert np.allclose(rho.matrix, noise_mixture(0.5, NoiseKind.POLARIZED).matrix)


def test_parse_state_spec_rejects_garbage():
    for bad in ("nope", "werner:p=", "werner:p=2", "werner:q=0.5", "polarized:p=abc"):
        with pytest.raises(ValueError):
            parse_state_spec(bad)


def test_density_file_roundtrip(tmp_path):
    rho = noise_mixture(0.3, NoiseKind.WERNER)
    payload = {
        "dim": 4,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }
    path = tmp_path / "state.json"
    path.write_text(json.dumps(payload))
    loaded = parse_state_spec(f"file:{path}")
    assert np.allclose(loaded.matrix, rho.matrix, atol=1e-15)


def test_density_json_validation():
    with pytest.raises(ValueError):
        density_from_json({"dim": 4, "re": [[1.0] * 4] * 4})  # missing im
    with pytest.raises(ValueError):
        density_from_json({"dim": 2, "re": [[1.0]], "im": [[0.0]]})
    good_re = (np.eye(4) / 4).tolist()
    bad_im = np.zeros((4, 4))
    bad_im[0, 1] = 0.5  # breaks Hermiticity
    with pytest.raises(ValueError):
        density_from_json({"dim": 4, "re": good_re, "im": bad_im.tolist()})


def test_bad_unitary_output_raises_internal_error():
    # corrupt a pair after validation to show the output check trips
    pair = LocalUnitaryPair(I2.copy(), I2.copy())
    object.__setattr__(pair, "u_a", 1.2 * I2)
    with pytest.raises(NumericsError):
        apply_local_unitary(pair, noise_mixture(0.5, NoiseKind.WERNER))
