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

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "lindblad/structure.hpp"
#include "lindblad/types.hpp"

namespace lindblad::testing {

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n, double sigma = 1.0) {
  std::normal_distribution<double> gauss(0.0, sigma);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  Matrix m = random_matrix(rng, n);
  return (m + m.adjoint()) / 2.0;
}

inline Matrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix g = random_matrix(rng, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

inline Matrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix g = random_matrix(rng, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

/// Random rank-deficient density matrix with the given rank.
inline Matrix random_boundary_density(std::mt19937_64& rng, Eigen::Index n,
                                      Eigen::Index rank) {
  Matrix g(n, rank);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

/// Random indecomposable jump operator, rejection-sampled on the commutant.
inline Matrix random_indecomposable(std::mt19937_64& rng, Eigen::Index n,
                                    bool require_invertible = false) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix h = random_matrix(rng, n, 1.0 / std::sqrt(double(n)));
    if (commutant_dimension(h) != 1) continue;
    if (require_invertible) {
      Eigen::JacobiSVD<Matrix> svd(h);
      if (svd.singularValues().minCoeff() < 0.05) continue;
    }
    return h;
  }
  throw std::runtime_error("rejection sampling failed to find an indecomposable operator");
}

/// Random non-normal jump operator.
inline Matrix random_non_normal(std::mt19937_64& rng, Eigen::Index n) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix h = random_matrix(rng, n);
    const double defect = (h * h.adjoint() - h.adjoint() * h).norm();
    if (defect > 1e-2 * h.squaredNorm()) return h;
  }
  throw std::runtime_error("rejection sampling failed to find a non-normal operator");
}

/// Greedy multiset match: max over pairs of min distances.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (std::abs(x - b[j]) < best) {
        best = std::abs(x - b[j]);
        best_index = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best_index));
  }
  return worst;
}

/// min over phases of ||e^{i theta} a - b||_F, evaluated by aligning the
/// phase and subtracting directly (the squared form cancels catastrophically).
inline double phase_distance(const Matrix& a, const Matrix& b) {
  const Complex inner = (a.adjoint() * b).trace();
  const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1, 0);
  return (phase * a - b).norm();
}

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

}  // namespace lindblad::testing
