import time

import numpy as np
import pytest

from conftest import random_vector
from ghz_ising.avn import certify_avn
from ghz_ising.errors import CapExceededError, DegenerateGroundStateError, ValidationError
from ghz_ising.model import IsingParams, StateVector, even_parity_uniform_state, ghz_state, hadamard_all
from ghz_ising.pauli import all_strings, commutes, to_matrix
from ghz_ising.search import enumerate_stabilizers, find_avn_subsets, negative_result_scan, scan_ground_state


def dense_stabilizers(state, tol):
    found = set()
    for p in all_strings(state.n):
        image = to_matrix(p) @ state.amplitudes
        for eigenvalue in (1, -1):
            if np.linalg.norm(image - eigenvalue * state.amplitudes) <= tol:
                found.add((p.letters, eigenvalue))
    return found


class TestInventory:

    def test_even_three_site(self, even3):
        inventory = enumerate_stabilizers(even3)
        found = {(e.pauli.letters, e.eigenvalue) for e in inventory.entries}
        assert found == {
            ("III", 1), ("IXX", 1), ("XIX", 1), ("XXI", 1),
            ("YYZ", -1), ("YZY", -1), ("ZYY", -1), ("ZZZ", 1),
        }

    def test_canonical_order(self, even3):
        inventory = enumerate_stabilizers(even3, max_workers=3, chunk_size=7)
        keys = [e.pauli.sort_key() for e in inventory.entries]
        assert keys == sorted(keys)
        assert inventory.strings()[0] == "+III"

    def test_excited(self, excited4):
        inventory = enumerate_stabilizers(excited4)
        assert inventory.find("XXXX").eigenvalue == -1
        for letters in ("XXYY", "XYXY", "XYYX", "ZZII", "IZZI"):
            assert inventory.find(letters).eigenvalue == 1
        assert len(inventory) == 16

    def test_entries_commute(self, excited4):
        entries = enumerate_stabilizers(excited4).entries
        for a in entries:
            for b in entries:
                assert commutes(a.pauli, b.pauli)

    def test_matches_dense_oracle(self, rng):
        states = [
            ghz_state(3),
            hadamard_all(ghz_state(3, -1)),
            StateVector.from_basis(3, {"010": 1}),
            StateVector(3, random_vector(rng, 3)),
            StateVector.from_basis(2, {"00": 1, "01": 1j}),
        ]
        for state in states:
            inventory = enumerate_stabilizers(state, tol=1e-8)
            found = {(e.pauli.letters, e.eigenvalue) for e in inventory.entries}
            assert found == dense_stabilizers(state, 1e-8)

    def test_monotone_in_tolerance(self, rng):
        v = even_parity_uniform_state(3).amplitudes + 1e-4 * random_vector(rng, 3)
        state = StateVector(3, v)
        sizes = [len(enumerate_stabilizers(state, tol=tol)) for tol in (1e-8, 1e-3, 1e-1, 0.5)]
        assert sizes == sorted(sizes)

    def test_frame(self, even3):
        frame = enumerate_stabilizers(even3).to_frame()
        assert list(frame.columns) == ["observable", "eigenvalue", "residual"]
        assert len(frame) == 8

    def test_scan_cap(self):
        with pytest.raises(CapExceededError):
            enumerate_stabilizers(even_parity_uniform_state(9))


class TestAvnSubsets:

    def test_standard_set_found(self, even3):
        subsets = find_avn_subsets(enumerate_stabilizers(even3))
        texts = [s.as_text() for s in subsets]
        assert [["+YYZ", -1], ["+YZY", -1], ["+ZYY", -1], ["+ZZZ", 1]] in texts

    def test_odd_state_has_flipped_set(self, odd3):
        subsets = find_avn_subsets(enumerate_stabilizers(odd3))
        texts = [s.as_text() for s in subsets]
        assert [["+YYZ", 1], ["+YZY", 1], ["+ZYY", 1], ["+ZZZ", -1]] in texts

    def test_every_subset_certifies(self, even3, excited4):
        for state in (even3, excited4):
            for subset in find_avn_subsets(enumerate_stabilizers(state)):
                assert certify_avn(subset, state, tol=1e-8).holds

    def test_sorted_by_size(self, excited4):
        subsets = find_avn_subsets(enumerate_stabilizers(excited4))
        sizes = [len(s) for s in subsets]
        assert sizes == sorted(sizes)
        assert min(sizes) >= 3

    def test_max_results(self, even3):
        assert len(find_avn_subsets(enumerate_stabilizers(even3), max_results=1)) == 1

    def test_max_size_limits(self, even3):
        assert find_avn_subsets(enumerate_stabilizers(even3), max_size=2) == []

    def test_max_size_validated(self, even3):
        with pytest.raises(ValidationError):
            find_avn_subsets(enumerate_stabilizers(even3), max_size=0)


class TestGroundStateScan:

    def test_three_site_finite_field_is_negative(self):
        start = time.perf_counter()
        report = negative_result_scan(IsingParams(3, 0.5))
        assert time.perf_counter() - start < 10
        assert report.ground_dimension == 1
        assert [e.pauli.letters for e in report.inventory.entries] == ["III", "ZZZ"]
        assert report.avn_sets == []

    def test_four_site_unit_field_is_negative(self):
        report = negative_result_scan(IsingParams(4, 1.0))
        assert [(e.pauli.letters, e.eigenvalue) for e in report.inventory.entries] == [("IIII", 1), ("ZZZZ", 1)]
        payload = report.to_dict()
        assert payload["avn_set_count"] == 0
        assert "4^n" in payload["searched_family"]

    def test_degenerate_refuses(self):
        with pytest.raises(DegenerateGroundStateError):
            negative_result_scan(IsingParams(3, 0.0))

    def test_zero_field_with_parity(self):
        report = scan_ground_state(IsingParams(3, 0.0), parity="even")
        assert report.ground_dimension == 2
        assert len(report.inventory) == 8
        assert len(report.avn_sets) >= 1

    def test_cap(self):
        with pytest.raises(CapExceededError):
            scan_ground_state(IsingParams(9, 0.5))
