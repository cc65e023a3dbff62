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

#include "lindblad/qubit.hpp"

#include <cmath>

namespace lindblad {

namespace {

double norm2(const QubitParams& p) {
  return std::norm(p.a) + std::norm(p.b) + std::norm(p.d);
}

}  // namespace

DensityMatrix qubit_stationary(const QubitParams& p) {
  if (p.b == Complex(0.0, 0.0)) {
    throw ValidationError(ErrorCode::NotUnique,
                          "b = 0 leaves the whole diagonal family stationary");
  }
  const double n = norm2(p);
  const double s = std::norm(p.a) / n;
  const Complex q = -std::conj(p.a) * p.b / n;
  Matrix rho(2, 2);
  rho << Complex(1.0 - s, 0.0), q, std::conj(q), Complex(s, 0.0);
  return DensityMatrix(rho);
}

std::vector<Complex> qubit_spectrum(const QubitParams& p) {
  const double half_n = norm2(p) / 2.0;
  const Complex a = p.a, b = p.b, d = p.d;
  Matrix reduced(3, 3);
  reduced << a * std::conj(d) - half_n, Complex(0, 0), b * std::conj(d),
      Complex(0, 0), std::conj(a) * d - half_n, std::conj(b) * d,
      -0.5 * a * std::conj(b), -0.5 * std::conj(a) * b, Complex(-std::norm(b), 0);
  Eigen::ComplexEigenSolver<Matrix> es(reduced, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on the reduced qubit matrix");
  }
  std::vector<Complex> out{Complex(0, 0)};
  for (Eigen::Index i = 0; i < 3; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

QubitEigenmatrices qubit_eigenmatrices_a0(Complex b, Complex d) {
  QubitEigenmatrices out;
  out.sigma1.resize(2, 2);
  out.sigma1 << Complex(std::norm(b) - std::norm(d), 0), 2.0 * b * std::conj(d),
      2.0 * std::conj(b) * d, Complex(std::norm(d) - std::norm(b), 0);
  out.sigma2 = Matrix::Zero(2, 2);
  out.sigma2(0, 1) = 1.0;
  out.sigma3 = Matrix::Zero(2, 2);
  out.sigma3(1, 0) = 1.0;
  const double scale = std::max(std::abs(b), std::abs(d));
  if (scale > 0.0 && std::abs(std::abs(b) - std::abs(d)) <= 1e-12 * scale) {
    // Sign fixed so that D(gen) + |b|^2 gen = |b|^2 (sigma2 + sigma3).
    Matrix gen(2, 2);
    gen << Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
    out.generalized = gen;
  }
  return out;
}

QubitEmergence qubit_emergence_constants(const QubitParams& p) {
  QubitEmergence out;
  out.third = 0.5 * std::norm(p.a) * std::norm(p.b) * std::norm(p.a - p.d);
  const double scale = std::max({std::abs(p.a), std::abs(p.d), 1e-300});
  if (std::abs(p.a - p.d) <= 1e-12 * scale) {
    out.fourth = 7.0 / 8.0 * std::norm(p.a) * std::pow(std::abs(p.b), 6);
  }
  return out;
}

}  // namespace lindblad
