import numpy as np
import pytest
from hypothesis import given, strategies as st

from hubbardq.exact import compute_spectrum, sector_basis
from hubbardq.exceptions import ValidationError
from hubbardq.model import assemble_hamiltonian
from hubbardq.qubit import PauliSum, jordan_wigner, number_operator, s_squared_operator
from hubbardq.vqd import (
    VQDOptions,
    a_gate,
    a_gate_derivatives,
    apply_circuit,
    apply_two_qubit,
    basis_state,
    brick_wall_pairs,
    build_ansatz,
    circuit_unitary,
    default_layers,
    embed_sector_state,
    expectation,
    optimize_vqd,
    repeat_sampling,
    rotate_orbitals,
    vqd_cost,
    vqd_gradient,
)

angles = st.floats(min_value=-np.pi, max_value=np.pi)


@pytest.fixture(scope="module")
def ethylene_m2(fixtures):
    spectrum = compute_spectrum(fixtures["ethylene"].with_variant("coulomb-only"))
    return spectrum, jordan_wigner(spectrum.rotated)


def test_a_gate_at_zero():
    assert np.allclose(a_gate(0.0, 0.0), np.diag([1, 1, -1, 1]))


@given(angles, angles)
def test_a_gate_is_unitary_and_conserves_number(theta, phi):
    gate = a_gate(theta, phi)
    assert np.allclose(gate.conj().T @ gate, np.eye(4), atol=1e-12)
    number = np.diag([0, 1, 1, 2])
    assert np.allclose(gate @ number, number @ gate, atol=1e-12)


def test_a_gate_mixes_one_particle_pair():
    out = a_gate(np.pi / 4, 0.0) @ np.array([0, 1, 0, 0])
    assert np.allclose(out, np.array([0, 1, 1, 0]) / np.sqrt(2))


def test_brick_wall_placement():
    assert brick_wall_pairs(4, 2) == ((0, 1), (2, 3), (1, 2))
    assert brick_wall_pairs(2, 1) == ((0, 1),)
    circuit = build_ansatz(2, 2, layers=2)
    assert circuit.n_params == 6
    assert circuit.initial_string == "1100"


def test_default_layers():
    assert default_layers(4, 2) == 8
    assert build_ansatz(2, 2).n_params == 24
    circuit = build_ansatz(4, 4)
    assert circuit.layers == 40
    assert circuit.n_params == 280
    assert len(circuit.gates) >= 2 * 70
    with pytest.raises(ValidationError):
        build_ansatz(2, 2, layers=0)


@given(angles, angles)
def test_a_gate_derivatives_match_finite_differences(theta, phi):
    d_theta, d_phi = a_gate_derivatives(theta, phi)
    h = 1e-6
    fd_theta = (a_gate(theta + h, phi) - a_gate(theta - h, phi)) / (2 * h)
    fd_phi = (a_gate(theta, phi + h) - a_gate(theta, phi - h)) / (2 * h)
    assert np.allclose(d_theta, fd_theta, atol=1e-8)
    assert np.allclose(d_phi, fd_phi, atol=1e-8)


@given(st.lists(angles, min_size=24, max_size=24))
def test_circuit_conserves_particle_number(params):
    circuit = build_ansatz(3, 2, layers=3)
    sv = apply_circuit(circuit, params[: circuit.n_params])
    assert np.linalg.norm(sv) == pytest.approx(1.0, abs=1e-10)
    support = np.flatnonzero(np.abs(sv) > 1e-12)
    assert all(bin(b).count("1") == 2 for b in support)
    assert expectation(number_operator(6), sv) == pytest.approx(2.0, abs=1e-10)


def test_zero_parameters_give_signed_basis_states():
    circuit = build_ansatz(2, 2)
    sv = apply_circuit(circuit, np.zeros(circuit.n_params))
    support = np.flatnonzero(np.abs(sv) > 1e-12)
    assert len(support) == 1
    assert abs(sv[support[0]]) == pytest.approx(1.0)


def test_circuit_unitary_matches_sequential_application():
    circuit = build_ansatz(2, 2, layers=3)
    params = np.random.default_rng(5).uniform(-np.pi, np.pi, circuit.n_params)
    U = circuit_unitary(circuit, params)
    assert np.allclose(U.conj().T @ U, np.eye(16), atol=1e-12)
    assert np.allclose(U[:, circuit.initial], apply_circuit(circuit, params), atol=1e-12)


def test_two_qubit_gate_on_lowest_pair():
    # qubit 0 occupied, qubit 1 empty is |b_0 b_1> = |10>, which the zero gate negates
    state = apply_two_qubit(basis_state(2, 0b01), a_gate(0.0, 0.0), 0, 2)
    assert np.allclose(state, -basis_state(2, 0b01))


def test_parameter_count_mismatch():
    circuit = build_ansatz(2, 2)
    with pytest.raises(ValidationError):
        apply_circuit(circuit, np.zeros(circuit.n_params + 1))


def test_expectation_of_identity():
    sv = basis_state(2, 0b10)
    assert expectation(PauliSum(2, {"II": -3.5}), sv) == pytest.approx(-3.5)
    with pytest.raises(ValidationError):
        expectation(PauliSum(2, {"II": 1.0}), 2 * sv)


def test_hartree_fock_string_gives_scf_energy(ethylene_m2):
    spectrum, psum = ethylene_m2
    sv = basis_state(4, 0b0011)
    assert expectation(psum, sv) == pytest.approx(spectrum.scf.scf_energy, abs=1e-8)


def test_embedded_eigenvector_gives_eigenvalue(ethylene_m2):
    spectrum, psum = ethylene_m2
    report = spectrum.table.report
    for k in range(len(report)):
        sv = embed_sector_state(report.state(k), report.basis)
        assert expectation(psum, sv) == pytest.approx(report.energies[k], abs=1e-8)
    with pytest.raises(ValidationError):
        embed_sector_state(np.ones(3), sector_basis(2, 1, 1))


def test_vqd_cost_penalties(ethylene_m2):
    _, psum = ethylene_m2
    circuit = build_ansatz(2, 2)
    params = np.random.default_rng(1).uniform(-1, 1, circuit.n_params)
    sv = apply_circuit(circuit, params)
    energy = expectation(psum, sv)
    assert vqd_cost(params, circuit, psum) == pytest.approx(energy)
    assert vqd_cost(params, circuit, psum, [sv], [7.0]) == pytest.approx(energy + 7.0)
    orthogonal = basis_state(4, 0b1111)
    assert vqd_cost(params, circuit, psum, [orthogonal], [7.0]) == pytest.approx(energy)
    with pytest.raises(ValidationError):
        vqd_cost(params, circuit, psum, [sv], [])


def test_vqd_gradient_matches_finite_differences(ethylene_m2):
    _, psum = ethylene_m2
    circuit = build_ansatz(2, 2)
    rng = np.random.default_rng(3)
    params = rng.uniform(-1, 1, circuit.n_params)
    prior = [apply_circuit(circuit, rng.uniform(-1, 1, circuit.n_params))]
    penalty = 10.0 * s_squared_operator(4).sparse
    args = (circuit, psum, prior, [5.0], penalty)
    grad = vqd_gradient(params, *args)
    h = 1e-5
    for i in range(circuit.n_params):
        step = np.zeros(circuit.n_params)
        step[i] = h
        fd = (vqd_cost(params + step, *args) - vqd_cost(params - step, *args)) / (2 * h)
        assert grad[i] == pytest.approx(fd, abs=1e-6)
    with pytest.raises(ValidationError):
        vqd_gradient(params[:-1], circuit, psum)


def test_rotate_orbitals_maps_canonical_eigenstates_to_site_eigenstates(fixtures):
    params = fixtures["butadiene"]
    spectrum = compute_spectrum(params)
    site = jordan_wigner(assemble_hamiltonian(params)).sparse
    report = spectrum.table.report
    for k in range(3):
        canonical = embed_sector_state(report.state(k), report.basis)
        rotated = rotate_orbitals(canonical, spectrum.scf.C)
        assert np.linalg.norm(rotated) == pytest.approx(1.0, abs=1e-10)
        residual = site @ rotated - report.energies[k] * rotated
        assert np.linalg.norm(residual) < 1e-8


def test_rotate_orbitals_identity_and_mixed_numbers():
    sv = np.zeros(16, dtype=complex)
    sv[0b0011] = 0.6
    sv[0b1001] = 0.8j
    assert np.allclose(rotate_orbitals(sv, np.eye(2)), sv)
    vacuum = basis_state(4, 0)
    assert np.allclose(rotate_orbitals(vacuum, np.eye(2)), vacuum)
    mixed = (basis_state(4, 0b0001) + basis_state(4, 0b0011)) / np.sqrt(2)
    with pytest.raises(ValidationError, match="mixes particle numbers"):
        rotate_orbitals(mixed, np.eye(2))
    with pytest.raises(ValidationError):
        rotate_orbitals(sv, np.eye(3))



def test_vqd_options_validation():
    with pytest.raises(ValidationError):
        VQDOptions(restarts=0)
    with pytest.raises(ValidationError):
        VQDOptions(method="BFGS")
    assert VQDOptions(betas=[1, 2]).betas == (1.0, 2.0)


def test_single_state_is_variational(ethylene_m2):
    spectrum, psum = ethylene_m2
    result = optimize_vqd(psum, 1, 2, VQDOptions(restarts=2))
    assert result.energies[0] >= spectrum.ground_energy - 1e-9
    assert result.betas == ()


def test_first_start_leaves_the_hartree_fock_point(ethylene_m2):
    spectrum, psum = ethylene_m2
    result = optimize_vqd(psum, 1, 2, VQDOptions(restarts=1))
    state = result.states[0]
    assert len(state.cost_history) > 0
    assert state.converged
    assert state.energy < spectrum.scf.scf_energy - 0.1
    assert state.energy == pytest.approx(spectrum.ground_energy, abs=1e-3)


def test_ethylene_deflation(ethylene_m2):
    spectrum, psum = ethylene_m2
    result = optimize_vqd(psum, 3, 2, VQDOptions(restarts=5))
    e0 = spectrum.ground_energy
    assert result.energies[0] == pytest.approx(e0, abs=0.02)
    exact = [e.delta_e for e in spectrum.excitations]
    assert result.energies[1] - e0 == pytest.approx(exact[0], abs=0.1)
    assert result.energies[2] - e0 == pytest.approx(exact[1], abs=0.1)
    for state in result.states:
        assert state.s_squared < 0.1
        assert all(o < 1e-3 for o in state.overlaps)
    assert len(result.betas) == 2


def test_vqd_is_deterministic(ethylene_m2):
    _, psum = ethylene_m2
    options = VQDOptions(restarts=2, max_evaluations=200)
    first = optimize_vqd(psum, 2, 2, options)
    second = optimize_vqd(psum, 2, 2, options)
    assert np.array_equal(first.energies, second.energies)
    assert np.array_equal(first.states[1].parameters, second.states[1].parameters)


def test_missing_betas(ethylene_m2):
    _, psum = ethylene_m2
    with pytest.raises(ValidationError):
        optimize_vqd(psum, 3, 2, VQDOptions(betas=(1.0,)))
    with pytest.raises(ValidationError):
        optimize_vqd(psum, 0, 2)


# excited-state means, and the per-state spread of 10^4-shot-per-group
# estimates for (abelian, none) grouping
SAMPLED = [
    ("butadiene", "with-exchange", (5.47, 5.64),
     {"abelian": (0.13, 0.16, 0.10), "none": (0.14, 0.14, 0.14)}),
    ("butadiene", "coulomb-only", (5.82, 5.98),
     {"abelian": (0.13, 0.15, 0.12), "none": (0.14, 0.14, 0.14)}),
    ("hexatriene_4e4o", "with-exchange", (4.67, 5.05),
     {"abelian": (0.11, 0.16, 0.09), "none": (0.13, 0.13, 0.13)}),
    ("hexatriene_4e4o", "coulomb-only", (4.81, 5.12),
     {"abelian": (0.11, 0.14, 0.09), "none": (0.12, 0.13, 0.13)}),
]


def _sampled_states(params, n_states):
    spectrum = compute_spectrum(params)
    result = optimize_vqd(jordan_wigner(spectrum.rotated), n_states, params.n_electrons,
                          VQDOptions(restarts=5))
    site = jordan_wigner(assemble_hamiltonian(params))
    states = [rotate_orbitals(result.statevector(k), spectrum.scf.C) for k in range(n_states)]
    return spectrum, site, states


@pytest.mark.slow
@pytest.mark.parametrize("name, variant, exact, spreads", SAMPLED)
@pytest.mark.parametrize("grouping", ["abelian", "none"])
def test_vqd_sampling_acceptance(fixtures, name, variant, exact, spreads, grouping):
    spectrum, site, states = _sampled_states(fixtures[name].with_variant(variant), 3)
    means = []
    for k, sv in enumerate(states):
        report = repeat_sampling(site, sv, shots=10000, repeats=1000, grouping_mode=grouping,
                                 seed=42 + k * 1000, reference_energy=spectrum.ground_energy)
        assert all(c == 10000 for c in report.shots_per_group)
        assert report.std == pytest.approx(spreads[grouping][k], rel=0.35)
        means.append(report.mean_delta)
    assert means[0] == pytest.approx(0.0, abs=0.1)
    assert means[1] == pytest.approx(exact[0], abs=0.15)
    assert means[2] == pytest.approx(exact[1], abs=0.15)


@pytest.mark.slow
def test_butadiene_first_excited_state_spread(butadiene):
    spectrum, site, states = _sampled_states(butadiene, 2)
    report = repeat_sampling(site, states[1], shots=10000, repeats=1000,
                             grouping_mode="none", reference_energy=spectrum.ground_energy)
    assert report.mean_delta == pytest.approx(5.47, abs=0.15)
    assert report.std == pytest.approx(0.14, rel=0.35)
