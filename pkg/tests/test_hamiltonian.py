import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hubbardq.exact import build_sector_matrix, fermion_matrix, fock_space_matrix, sector_basis
from hubbardq.exceptions import OrthogonalityError, ValidationError
from hubbardq.model import (
    BasisTag,
    InteractionVariant,
    ModelParameters,
    SpinOrbitalHamiltonian,
    assemble_hamiltonian,
    build_one_body,
    build_two_body,
    canonical_key,
    number_terms,
    rotate_basis,
    sz_terms,
)


def _symmetric(rng, K, low, high, zero_diagonal=False):
    a = rng.uniform(low, high, size=(K, K))
    a = np.triu(a) + np.triu(a, 1).T
    if zero_diagonal:
        np.fill_diagonal(a, 0.0)
    return a


@st.composite
def model_parameters(draw, max_K=3):
    K = draw(st.integers(min_value=1, max_value=max_K))
    seed = draw(st.integers(min_value=0, max_value=2 ** 16))
    alpha = draw(st.floats(min_value=0.0, max_value=1.0))
    variant = draw(st.sampled_from(list(InteractionVariant)))
    rng = np.random.default_rng(seed)
    return ModelParameters(
        molecule_name="random",
        K=K,
        n_electrons=K,
        t=_symmetric(rng, K, -4.0, 1.0),
        U=_symmetric(rng, K, 0.0, 10.0),
        J=_symmetric(rng, K, 0.0, 0.5, zero_diagonal=True),
        D=_symmetric(rng, K, -0.5, 1.1),
        alpha=alpha,
        interaction_variant=variant,
    )


def test_ethylene_one_body(ethylene):
    t_eff = build_one_body(ethylene)
    assert t_eff[0, 0] == pytest.approx(-20.638, abs=1e-9)
    assert t_eff[1, 1] == pytest.approx(-20.638, abs=1e-9)
    assert t_eff[0, 1] == pytest.approx(-2.874)


def test_butadiene_one_body(butadiene):
    expected = -3.663 - (8.298 * 0.965 + 5.651 * 0.965 + 5.817 * 1.035 + 4.440 * 1.035)
    assert build_one_body(butadiene)[0, 0] == pytest.approx(expected, abs=1e-12)


def test_no_correction_without_interaction(ethylene):
    params = ModelParameters(
        molecule_name="free", K=2, n_electrons=2, t=ethylene.t, U=np.zeros((2, 2)),
        J=np.zeros((2, 2)), D=ethylene.D, alpha=0.0,
    )
    assert np.array_equal(build_one_body(params), ethylene.t)


@given(model_parameters(), st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=50, deadline=None)
def test_double_counting_scales_with_alpha(params, a):
    base = np.diag(build_one_body(params.with_alpha(0.0)))
    shifted = np.diag(build_one_body(params.with_alpha(a)))
    expected = a * np.diag(params.U) * np.diag(params.D)
    assert np.allclose(base - shifted, expected, atol=1e-12)


def test_ethylene_coulomb_only_two_body(ethylene):
    eri = build_two_body(ethylene.with_variant("coulomb-only"))
    assert len(eri) == 3
    assert eri[canonical_key(0, 0, 0, 0)] == pytest.approx(10.442)
    assert eri[canonical_key(1, 1, 1, 1)] == pytest.approx(10.442)
    assert eri[canonical_key(0, 0, 1, 1)] == pytest.approx(6.376)


def test_ethylene_exchange_two_body(ethylene):
    ham = assemble_hamiltonian(ethylene)
    dense = ham.eri_dense()
    assert len(ham.eri) == 4
    assert dense[0, 1, 1, 0] == pytest.approx(0.161)
    assert dense[0, 1, 0, 1] == pytest.approx(0.161)
    assert dense[1, 0, 0, 1] == pytest.approx(0.161)


def test_zero_exchange_makes_variants_identical(ethylene):
    params = ModelParameters(
        molecule_name="no-j", K=2, n_electrons=2, t=ethylene.t, U=ethylene.U,
        J=np.zeros((2, 2)), D=ethylene.D,
    )
    a = assemble_hamiltonian(params.with_variant("with-exchange"))
    b = assemble_hamiltonian(params.with_variant("coulomb-only"))
    assert dict(a.eri) == dict(b.eri)
    assert np.array_equal(a.h1, b.h1)


def test_ethylene_spin_blocks(ethylene_ham):
    h1 = ethylene_ham.h1
    assert h1.shape == (4, 4)
    assert np.array_equal(h1[0::2, 0::2], h1[1::2, 1::2])
    assert np.all(h1[0::2, 1::2] == 0.0)
    assert ethylene_ham.basis_tag is BasisTag.WANNIER
    assert ethylene_ham.constant == 0.0


def test_hexatriene_6e6o_spin_orbitals(fixtures):
    assert assemble_hamiltonian(fixtures["hexatriene_6e6o"]).n_spin_orbitals == 12


@pytest.mark.parametrize("name", ["ethylene", "butadiene"])
@pytest.mark.parametrize("variant", ["with-exchange", "coulomb-only"])
def test_symmetries_of_full_matrix(fixtures, name, variant):
    params = fixtures[name].with_variant(variant)
    ham = assemble_hamiltonian(params)
    H = fermion_matrix(ham).toarray()
    N = fock_space_matrix(number_terms(ham.n_spin_orbitals), ham.n_spin_orbitals).toarray()
    Sz = fock_space_matrix(sz_terms(ham.n_spin_orbitals), ham.n_spin_orbitals).toarray()

    assert np.max(np.abs(H - H.T)) < 1e-12
    assert np.linalg.norm(H @ N - N @ H) < 1e-10
    assert np.linalg.norm(H @ Sz - Sz @ H) < 1e-10
    assert np.all(np.isreal(np.linalg.eigvalsh(H)))


def test_identity_rotation_is_unchanged(ethylene_ham):
    rotated = rotate_basis(ethylene_ham, np.eye(2))
    assert np.allclose(rotated.h1, ethylene_ham.h1)
    assert np.allclose(rotated.eri_dense(), ethylene_ham.eri_dense())
    assert rotated.basis_tag is BasisTag.CANONICAL


def test_symmetry_adapted_rotation_keeps_spectrum(ethylene_ham):
    C = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    rotated = rotate_basis(ethylene_ham, C)
    before = np.linalg.eigvalsh(fermion_matrix(ethylene_ham).toarray())
    after = np.linalg.eigvalsh(fermion_matrix(rotated).toarray())
    assert np.allclose(before, after, atol=1e-9)
    # bonding / antibonding orbitals are not coupled by the one-body term
    assert rotated.h1_spatial[0, 1] == pytest.approx(0.0, abs=1e-12)


def test_random_rotation_keeps_sector_spectrum(butadiene, random_orthogonal):
    ham = assemble_hamiltonian(butadiene)
    basis = sector_basis(4, 2, 2)
    C = random_orthogonal(4, seed=7)
    before = np.linalg.eigvalsh(build_sector_matrix(ham, basis))
    after = np.linalg.eigvalsh(build_sector_matrix(rotate_basis(ham, C), basis))
    assert np.allclose(before, after, atol=1e-8)


def test_non_orthogonal_rotation(ethylene_ham):
    with pytest.raises(OrthogonalityError):
        rotate_basis(ethylene_ham, np.array([[1.0, 0.1], [0.0, 1.0]]))
    with pytest.raises(ValidationError):
        rotate_basis(ethylene_ham, np.eye(3))


def test_broken_index_symmetry_is_rejected():
    with pytest.raises(ValidationError):
        SpinOrbitalHamiltonian(4, np.zeros((4, 4)), {(0, 1, 0, 1): 1.0, (1, 0, 1, 0): 2.0})


def test_canonical_key_covers_orbit():
    keys = {canonical_key(*idx) for idx in [(0, 1, 2, 3), (1, 0, 2, 3), (2, 3, 0, 1), (3, 2, 1, 0)]}
    assert keys == {(3, 2, 1, 0)}


def test_hamiltonian_algebra(ethylene_ham):
    doubled = ethylene_ham + ethylene_ham
    scaled = 2.0 * ethylene_ham
    assert np.allclose(doubled.h1, scaled.h1)
    assert dict(doubled.eri) == pytest.approx(dict(scaled.eri))
