// Copyright 2026 The lindblad authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

/// Parameters of the Schur-triangulated qubit jump operator [[a, b], [0, d]].
/// Closed forms below serve as an independent oracle for the generic modules.
struct QubitParams {
  Complex a, b, d;

  Matrix matrix() const {
    Matrix h(2, 2);
    h << a, b, Complex(0, 0), d;
    return h;
  }
};

/// Unique normed stationary state for b != 0:
/// s = |a|^2 / N, q = -a^* b / N with N = |a|^2 + |b|^2 + |d|^2.
DensityMatrix qubit_stationary(const QubitParams& p);

/// All four generator eigenvalues: {0} plus the roots of the cubic
/// characteristic polynomial of the reduced 3x3 evolution matrix.
std::vector<Complex> qubit_spectrum(const QubitParams& p);

struct QubitEigenmatrices {
  Matrix sigma1, sigma2, sigma3;
  std::optional<Matrix> generalized;  // present when |b| = |d| != 0
};

/// Proper eigenmatrices for the a = 0 family, with a generalized
/// eigenmatrix (proportional to diag(1, -1)) in the degenerate case
/// |b| = |d|, signed so that D(gen) + |b|^2 gen = |b|^2 (sigma2 + sigma3).
QubitEigenmatrices qubit_eigenmatrices_a0(Complex b, Complex d);

struct QubitEmergence {
  double third = 0.0;            // d^3 e/dt^3 at t = 0: |a|^2 |b|^2 |a - d|^2 / 2
  std::optional<double> fourth;  // reported constant 7/8 |a|^2 |b|^6 when a = d
};

/// Emergence constants of the eigenvalue branch e(t) leaving the lazy start
/// diag(1, 0). `third` matches finite differences of the propagated
/// trajectory. `fourth` is the closed-form constant reported for the
/// degenerate case a = d; the measured branch there grows as
/// |a|^4 |b|^6 t^5 / 80, so finite differences of the fourth derivative
/// return zero instead (see the evolution tests).
QubitEmergence qubit_emergence_constants(const QubitParams& p);

}  // namespace lindblad
