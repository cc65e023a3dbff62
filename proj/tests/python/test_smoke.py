# Copyright 2026 The lindblad authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import lindblad


def mat(rows):
    return np.array(rows, dtype=complex)


def test_simple_generator_matches_hand_value():
    h = mat([[0, 1], [0, 0]])
    rho = mat([[0, 0], [0, 1]])
    out = lindblad.apply_simple_generator(h, rho)
    assert np.allclose(out, mat([[1, 0], [0, -1]]), atol=1e-14)


def test_superoperator_consistency():
    rng = np.random.default_rng(5)
    h = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    L = lindblad.build_superoperator(h)
    direct = lindblad.apply_simple_generator(h, rho)
    via_l = (L @ rho.reshape(-1)).reshape(3, 3)
    assert np.allclose(direct, via_l, atol=1e-12 * np.linalg.norm(h) ** 2)


def test_qubit_stationary_closed_form():
    rho = lindblad.qubit_stationary(1, 1, 1)
    expected = mat([[2 / 3, -1 / 3], [-1 / 3, 1 / 3]])
    assert np.allclose(rho, expected, atol=1e-12)
    assert np.allclose(lindblad.interior_stationary(mat([[1, 1], [0, 1]])), expected,
                       atol=1e-12)


def test_qubit_spectrum_closed_form():
    eigs = sorted(lindblad.qubit_spectrum(0, 1, 2), key=lambda z: z.real)
    expected = [-2.5, -2.5, -1.0, 0.0]
    assert np.allclose([z.real for z in eigs], expected, atol=1e-10)
    assert np.allclose([z.imag for z in eigs], 0, atol=1e-10)


def test_propagate_preserves_trace_and_converges():
    h = mat([[1, 1], [0, 1]])
    omega = np.eye(2, dtype=complex) / 2
    out = lindblad.propagate(h, omega, 50.0)
    assert abs(np.trace(out) - 1) < 1e-12
    assert np.allclose(out, mat([[2 / 3, -1 / 3], [-1 / 3, 1 / 3]]), atol=1e-8)


def test_generator_spectrum_stability():
    rng = np.random.default_rng(11)
    h = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    report = lindblad.generator_spectrum(h)
    assert len(report["eigenvalues"]) == 9
    assert report["max_real_part"] < 1e-10
    assert not report["nonzero_imaginary_axis"]


def test_design_round_trip():
    rng = np.random.default_rng(23)
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    h = lindblad.design_generator(rho)
    assert np.allclose(lindblad.interior_stationary(h), rho, atol=1e-10)


def test_design_rejects_maximally_mixed():
    with pytest.raises(ValueError):
        lindblad.design_generator(np.eye(3, dtype=complex) / 3)


def test_decompose_reports_blocks():
    h = np.zeros((3, 3), dtype=complex)
    h[0, 1] = 1.0
    h[0, 0] = h[1, 1] = 1.0
    h[2, 2] = 3.0
    parts = lindblad.decompose(h)
    assert len(parts) == 2
    dims = sorted(p["block"].shape[0] for p in parts)
    assert dims == [1, 2]


def test_choi_cp_check_detects_backward_positivity_loss():
    h = mat([[0, 1], [0, 0]])
    L = lindblad.build_superoperator(h)
    is_cp, _ = lindblad.choi_cp_check(L, 1.0)
    assert is_cp
    is_cp_back, min_eig = lindblad.choi_cp_check(L, -1.0)
    assert not is_cp_back
    assert min_eig < -1e-3


def test_recover_h_round_trip():
    h = mat([[1, 1], [0, 1]])
    L = lindblad.build_superoperator(h)
    k, unique, residual = lindblad.recover_h(L)
    assert unique
    assert residual < 1e-10
    inner = np.trace(k.conj().T @ h)
    phase = inner / abs(inner)
    assert np.linalg.norm(phase * k - h) < 1e-8


def test_validation_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        lindblad.propagate(mat([[0, 1], [0, 0]]), np.eye(2, dtype=complex) / 2, -1.0)
