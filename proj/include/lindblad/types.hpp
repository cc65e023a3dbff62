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

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lindblad/errors.hpp"

namespace lindblad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default numerical tolerances shared across the library. All are absolute
/// unless noted; scale-relative uses max(1, norm of the object).
struct Tolerances {
  double hermitian = 1e-12;    // relative: ||x - x^dag|| <= tol * max(1, ||x||)
  double trace = 1e-12;        // |Tr rho - 1|
  double psd = 1e-12;          // min eigenvalue >= -psd
  double zero_eigenvalue = 1e-10;  // |lambda| <= tol * max(1, ||h||)
  double projector = 1e-10;    // ||P^2 - P||, ||P - P^dag||
  double lazy = 1e-10;         // ||hP - PhP|| <= tol * ||h||
  double stationary = 1e-10;   // ||D(rho)|| <= tol * ||h||^2
  double normality = 1e-10;    // ||h h^dag - h^dag h|| <= tol * ||h||^2
  double equivalence = 1e-8;   // ||U h U^dag - h'|| <= tol * ||h||
  double cluster = 1e-8;       // eigenvalue clustering, relative to scale
  double recover = 1e-8;       // recover_h residual, relative to max(1, ||L||)
};

/// Hermiticity deviation relative to max(1, ||m||_F).
double hermiticity_defect(const Matrix& m);

void require_square(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);
void require_hermitian(const Matrix& m, const char* what,
                       double tol = Tolerances{}.hermitian);

/// Density matrix: Hermitian, positive semidefinite, unit trace. Validated
/// on construction; immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, const Tolerances& tol = Tolerances{});

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  static DensityMatrix maximally_mixed(Eigen::Index n);
  static DensityMatrix pure(const Vector& psi);

 private:
  Matrix rho_;
};

/// A GKS-Lindblad generator: optional Hamiltonian plus a nonempty list of
/// jump operators, all of one dimension. The simple case is no Hamiltonian
/// and a single jump operator.
struct GeneratorSpec {
  std::optional<Matrix> hamiltonian;
  std::vector<Matrix> jump_operators;

  GeneratorSpec(std::optional<Matrix> h, std::vector<Matrix> jumps);
  static GeneratorSpec simple(Matrix h);

  Eigen::Index dim() const { return jump_operators.front().rows(); }
  bool is_simple() const {
    return !hamiltonian.has_value() && jump_operators.size() == 1;
  }
};

/// n^2 x n^2 matrix acting on row-major vectorized n x n matrices.
/// Construction checks that it preserves trace and selfadjointness.
class SuperoperatorMatrix {
 public:
  SuperoperatorMatrix(Eigen::Index dim, Matrix entries,
                      const Tolerances& tol = Tolerances{});

  Eigen::Index dim() const { return dim_; }
  const Matrix& entries() const { return entries_; }

  Matrix apply(const Matrix& rho) const;

 private:
  Eigen::Index dim_;
  Matrix entries_;
};

/// Row-major vectorization: vec(rho)[i*n + j] = rho(i, j), so that
/// vec(A rho B) = (A (x) B^T) vec(rho).
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index n);

}  // namespace lindblad
