import numpy as np
import pytest
from scipy import linalg

from ghz_ising.errors import CapExceededError, DegenerateGroundStateError, ValidationError
from ghz_ising.model import (
    ClosedFormCoefficients,
    IsingParams,
    StateVector,
    apply_hamiltonian,
    closed_form_ground_state_3,
    closed_form_ground_state_4,
    closed_form_norm_check_4,
    energy,
    even_parity_uniform_state,
    exact_diagonalize,
    ghz_state,
    ground_space_projection,
    ground_state,
    hadamard_all,
    hamiltonian_matrix,
    hamiltonian_terms,
    local_ghz_equivalence,
    odd_parity_uniform_state,
    parity_expectation,
    parity_state,
    resolve_b0_reading_4,
)
from ghz_ising.pauli import format_pauli, to_matrix

# forma matricial de referência para N = 3: acoplamentos -1 e diagonal em unidades de 𝔅
COUPLED = {
    0: (3, 5, 6), 1: (2, 4, 7), 2: (1, 4, 7), 3: (0, 5, 6),
    4: (1, 2, 7), 5: (0, 3, 6), 6: (0, 3, 5), 7: (1, 2, 4),
}
REFERENCE_DIAGONAL = (-3, -1, -1, 1, -1, 1, 1, 3)


def reference_matrix(field_b):
    matrix = np.zeros((8, 8))
    for row, columns in COUPLED.items():
        matrix[row, list(columns)] = -1
    matrix[np.arange(8), np.arange(8)] = [d * field_b for d in REFERENCE_DIAGONAL]
    return matrix


class TestParams:

    @pytest.mark.parametrize("n,field_b", [(1, 0.0), (3, -0.5), (3, float("nan"))])
    def test_rejects(self, n, field_b):
        with pytest.raises(ValidationError):
            IsingParams(n, field_b)

    def test_open_boundary_rejected(self):
        with pytest.raises(ValidationError):
            IsingParams(3, 0.0, boundary="open")


class TestHamiltonian:

    def test_terms_n3(self):
        terms = hamiltonian_terms(IsingParams(3, 1.0))
        assert [(c, format_pauli(p)) for c, p in terms] == [
            (-1.0, "+XXI"), (-1.0, "+IXX"), (-1.0, "+XIX"),
            (-1.0, "+ZII"), (-1.0, "+IZI"), (-1.0, "+IIZ"),
        ]

    def test_terms_n2_emits_both_bonds(self):
        terms = hamiltonian_terms(IsingParams(2, 0.0))
        bonds = [p.letters for c, p in terms if c == -1.0]
        assert bonds == ["XX", "XX"]

    def test_terms_n4_count(self):
        terms = hamiltonian_terms(IsingParams(4, 0.3))
        assert len(terms) == 8
        assert all(p.phase_exp == 0 and p.is_hermitian for _, p in terms)

    @pytest.mark.parametrize("field_b", [0.0, 1.0, 2.5])
    def test_n3_matches_reference_form_exactly(self, field_b):
        assert np.array_equal(hamiltonian_matrix(IsingParams(3, field_b)), reference_matrix(field_b))

    def test_n3_selected_entries(self):
        matrix = hamiltonian_matrix(IsingParams(3, 1.0))
        assert matrix[0, 0] == -3
        assert matrix[0, 3] == -1
        assert matrix[0, 1] == 0

    def test_n2_coincident_bonds(self):
        matrix = hamiltonian_matrix(IsingParams(2, 0.0))
        expected = np.zeros((4, 4))
        expected[0, 3] = expected[3, 0] = -2
        expected[1, 2] = expected[2, 1] = -2
        assert np.array_equal(matrix, expected)

    def test_equals_sum_of_dense_terms(self):
        params = IsingParams(4, 0.7)
        dense = sum(c * to_matrix(p) for c, p in hamiltonian_terms(params))
        assert np.allclose(hamiltonian_matrix(params), dense, atol=1e-14)

    def test_symmetric(self):
        matrix = hamiltonian_matrix(IsingParams(5, 1.3))
        assert np.array_equal(matrix, matrix.T)

    def test_apply_matches_matrix(self, rng):
        params = IsingParams(5, 0.4)
        v = rng.normal(size=32) + 1j * rng.normal(size=32)
        assert np.allclose(apply_hamiltonian(params, v), hamiltonian_matrix(params) @ v, atol=1e-12)

    def test_dense_cap(self):
        with pytest.raises(CapExceededError):
            hamiltonian_matrix(IsingParams(5, 0.0), dense_cap=4)


class TestDiagonalize:

    def test_n3_zero_field_doubly_degenerate(self):
        spectrum = exact_diagonalize(IsingParams(3, 0.0))
        assert spectrum.ground_dimension == 2
        assert spectrum.ground_energy == pytest.approx(-3, abs=1e-12)

    def test_n4_zero_field_levels(self):
        spectrum = exact_diagonalize(IsingParams(4, 0.0), k=2)
        energies = spectrum.level_energies()
        assert energies[0] == pytest.approx(-4, abs=1e-12)
        assert energies[1] == pytest.approx(0, abs=1e-10)
        assert spectrum.ground_dimension == 2

    def test_n3_unit_field_nondegenerate(self):
        spectrum = exact_diagonalize(IsingParams(3, 1.0))
        assert spectrum.ground_dimension == 1

    def test_residuals_small(self):
        spectrum = exact_diagonalize(IsingParams(5, 0.5), k=3)
        assert max(max(r) for r in spectrum.residuals) < 1e-10
        assert len(spectrum.eigenvectors) == 3

    def test_k_out_of_range(self):
        with pytest.raises(ValidationError):
            exact_diagonalize(IsingParams(3, 0.0), k=9)
        with pytest.raises(ValidationError):
            exact_diagonalize(IsingParams(3, 0.0), k=0)

    def test_frame(self):
        frame = exact_diagonalize(IsingParams(3, 0.0), k=2).to_frame()
        assert list(frame.columns) == ["level", "energy", "degeneracy", "max_residual"]
        assert frame.loc[0, "degeneracy"] == 2

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_ground_dimension_grid(self, n):
        spectrum = exact_diagonalize(IsingParams(n, 0.0), k=1)
        assert spectrum.ground_dimension == 2
        assert spectrum.ground_energy == pytest.approx(-n, abs=1e-10)
        for field_b in (0.5, 1.0, 2.0):
            assert exact_diagonalize(IsingParams(n, field_b), k=1).ground_dimension == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [9, 10])
    def test_ground_dimension_grid_large(self, n):
        spectrum = exact_diagonalize(IsingParams(n, 0.0), k=1)
        assert spectrum.ground_dimension == 2
        assert spectrum.ground_energy == pytest.approx(-n, abs=1e-10)
        for field_b in (0.5, 1.0, 2.0):
            assert exact_diagonalize(IsingParams(n, field_b), k=1).ground_dimension == 1

    @staticmethod
    def _flipped_bonds(params):
        return sum((-c if p.x_mask else c) * to_matrix(p).real for c, p in hamiltonian_terms(params))

    @pytest.mark.parametrize("n", [4, 6])
    def test_bond_sign_flip_preserves_spectrum_even_ring(self, n):
        params = IsingParams(n, 0.8)
        assert np.allclose(
            linalg.eigvalsh(hamiltonian_matrix(params)), linalg.eigvalsh(self._flipped_bonds(params)), atol=1e-10
        )

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_bond_sign_flip_negates_spectrum(self, n):
        # ΠX leva Z -> -Z, logo H com ligações trocadas é unitariamente -H
        params = IsingParams(n, 0.8)
        original = linalg.eigvalsh(hamiltonian_matrix(params))
        flipped = linalg.eigvalsh(self._flipped_bonds(params))
        assert np.allclose(np.sort(-original), flipped, atol=1e-10)


class TestClosedForms:

    def test_coefficients_at_zero(self):
        c = ClosedFormCoefficients.at(0.0)
        assert c.xi1 == pytest.approx(1.0)
        assert c.xi3 == pytest.approx(np.sqrt(2))
        assert c.norm1 == pytest.approx(4.0)

    def test_three_site_at_zero(self):
        state = closed_form_ground_state_3(0.0)
        expected = np.array([1, 0, 0, 1, 0, 1, 1, 0]) / 2
        assert np.allclose(state.amplitudes, expected, atol=1e-15)

    def test_three_site_at_one(self):
        state = closed_form_ground_state_3(1.0)
        assert ClosedFormCoefficients.at(1.0).xi1 == pytest.approx(3.0)
        expected = np.array([3, 0, 0, 1, 0, 1, 1, 0]) / np.sqrt(12)
        assert np.allclose(state.amplitudes, expected, atol=1e-15)

    @pytest.mark.parametrize("field_b", [0.0, 0.1, 0.25, 0.5, 1.0, 2.0])
    def test_three_site_matches_numeric_ground(self, field_b):
        spectrum = exact_diagonalize(IsingParams(3, field_b), k=1)
        assert ground_space_projection(spectrum, closed_form_ground_state_3(field_b)) >= 1 - 1e-9

    def test_four_site_at_zero_is_uniform_even(self):
        state = closed_form_ground_state_4(0.0)
        even = [k for k in range(16) if bin(k).count("1") % 2 == 0]
        assert np.allclose(state.amplitudes[even], 1 / (2 * np.sqrt(2)), atol=1e-15)
        assert state.amplitude("1111").real == pytest.approx(1 / (2 * np.sqrt(2)))

    @pytest.mark.parametrize("field_b", [0.0, 0.5, 1.0])
    def test_four_site_matches_numeric_ground(self, field_b):
        spectrum = exact_diagonalize(IsingParams(4, field_b), k=1)
        assert ground_space_projection(spectrum, closed_form_ground_state_4(field_b)) >= 1 - 1e-6

    def test_four_site_unit_field_energy(self):
        state = closed_form_ground_state_4(1.0)
        params = IsingParams(4, 1.0)
        assert energy(params, state) == pytest.approx(exact_diagonalize(params, k=1).ground_energy, abs=1e-10)

    @pytest.mark.parametrize("field_b", [0.0, 0.3, 1.0, 2.0])
    def test_four_site_symmetry_pattern(self, field_b):
        state = closed_form_ground_state_4(field_b)
        adjacent = {round(state.amplitude(b).real, 14) for b in ("0011", "0110", "1001", "1100")}
        alternating = {round(state.amplitude(b).real, 14) for b in ("0101", "1010")}
        assert len(adjacent) == 1 and len(alternating) == 1

    @pytest.mark.parametrize("field_b", [0.0, 0.5, 1.0, 2.0])
    def test_reference_norm_agrees(self, field_b):
        check = closed_form_norm_check_4(field_b)
        assert check["ratio"] == pytest.approx(1.0, abs=1e-12)

    def test_b0_reading_includes_1111(self):
        reading = resolve_b0_reading_4()
        assert reading["includes_1111"]
        assert reading["overlaps"]["with_1111"] == pytest.approx(1.0, abs=1e-10)
        assert reading["overlaps"]["without_1111"] < 1 - 1e-3
        assert reading["ground_space_projection"]["with_1111"] == pytest.approx(1.0, abs=1e-10)


class TestReferenceStates:

    def test_even_three_site(self, even3):
        expected = np.array([1, 0, 0, 1, 0, 1, 1, 0]) / 2
        assert np.allclose(even3.amplitudes, expected)

    def test_odd_three_site(self, odd3):
        expected = np.array([0, 1, 1, 0, 1, 0, 0, 1]) / 2
        assert np.allclose(odd3.amplitudes, expected)

    def test_two_site(self):
        assert np.allclose(even_parity_uniform_state(2).amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))
        assert np.allclose(odd_parity_uniform_state(2).amplitudes, np.array([0, 1, 1, 0]) / np.sqrt(2))

    @pytest.mark.parametrize("n,builder", [(5, even_parity_uniform_state), (4, odd_parity_uniform_state)])
    def test_parity_states_are_ground_vectors(self, n, builder):
        state = builder(n)
        image = apply_hamiltonian(IsingParams(n, 0.0), state)
        assert np.max(np.abs(image + n * state.amplitudes)) < 1e-12

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_energy_expectation(self, n):
        params = IsingParams(n, 0.0)
        assert energy(params, even_parity_uniform_state(n)) == pytest.approx(-n, abs=1e-12)
        assert energy(params, odd_parity_uniform_state(n)) == pytest.approx(-n, abs=1e-12)

    def test_first_excited(self, excited4):
        params = IsingParams(4, 0.0)
        assert np.linalg.norm(apply_hamiltonian(params, excited4)) < 1e-12
        assert excited4.norm == pytest.approx(1.0)
        spectrum = exact_diagonalize(params, k=1)
        assert ground_space_projection(spectrum, excited4) < 1e-12

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_local_ghz_equivalence(self, n):
        overlaps = local_ghz_equivalence(n)
        assert overlaps["even"] == pytest.approx(1.0, abs=1e-12)
        assert overlaps["odd"] == pytest.approx(1.0, abs=1e-12)

    def test_hadamard_is_involution(self):
        state = ghz_state(4, -1)
        assert hadamard_all(hadamard_all(state)).overlap(state) == pytest.approx(1.0, abs=1e-12)

    def test_parity_expectation(self, even3, odd3):
        assert parity_expectation(even3) == pytest.approx(1.0)
        assert parity_expectation(odd3) == pytest.approx(-1.0)

    def test_state_vector_cap(self):
        with pytest.raises(CapExceededError):
            even_parity_uniform_state(40)
        with pytest.raises(CapExceededError):
            ghz_state(30)
        with pytest.raises(CapExceededError):
            parity_state(6, "odd", state_cap=5)
        assert parity_state(5, "odd", state_cap=5).n == 5


class TestGroundState:

    def test_degenerate_requires_parity(self):
        with pytest.raises(DegenerateGroundStateError) as info:
            ground_state(IsingParams(3, 0.0))
        assert info.value.dimension == 2
        assert info.value.exit_code == 5

    @pytest.mark.parametrize("parity,builder", [("even", even_parity_uniform_state), ("odd", odd_parity_uniform_state)])
    def test_parity_choice(self, parity, builder):
        state = ground_state(IsingParams(4, 0.0), parity=parity)
        assert state.overlap(builder(4)) == pytest.approx(1.0, abs=1e-10)

    def test_unique_ground_has_canonical_phase(self):
        state = ground_state(IsingParams(3, 0.5))
        k = int(np.argmax(np.abs(state.amplitudes)))
        assert state.amplitudes[k].imag == pytest.approx(0.0, abs=1e-15)
        assert state.amplitudes[k].real > 0

    def test_unique_ground_rejects_odd_parity(self):
        with pytest.raises(ValidationError):
            ground_state(IsingParams(3, 0.5), parity="odd")


class TestStateVector:

    def test_normalizes(self):
        state = StateVector(2, [3, 0, 0, 4])
        assert state.norm == pytest.approx(1.0)

    def test_read_only(self, even3):
        with pytest.raises(ValueError):
            even3.amplitudes[0] = 1

    def test_rejects_zero_and_wrong_size(self):
        with pytest.raises(ValidationError):
            StateVector(2, [0, 0, 0, 0])
        with pytest.raises(ValidationError):
            StateVector(3, [1, 0, 0, 0])

    def test_to_frame(self, even3):
        frame = even3.to_frame()
        assert list(frame["ket"]) == ["000", "011", "101", "110"]
        assert frame["prob"].sum() == pytest.approx(1.0)
