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

#include "lindblad/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lindblad {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::MalformedMatrixJson: return "MalformedMatrixJson";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::NoZeroEigenvalue: return "NoZeroEigenvalue";
    case ErrorCode::Decomposable: return "Decomposable";
    case ErrorCode::MaximallyMixed: return "MaximallyMixed";
    case ErrorCode::NotUniquelyDesignable: return "NotUniquelyDesignable";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::FullRank: return "FullRank";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

namespace {

std::string scientific(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3e", x);
  return buffer;
}

}  // namespace

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          std::string(what) + " must be a nonempty square matrix");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          std::string(what) + ": operand dimensions differ");
  }
}

void require_hermitian(const Matrix& m, const char* what, double tol) {
  require_square(m, what);
  if (hermiticity_defect(m) > tol) {
    throw ValidationError(ErrorCode::NotHermitian,
                          std::string(what) + " is not Hermitian");
  }
}

DensityMatrix::DensityMatrix(Matrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  require_square(rho_, "density matrix");
  if (hermiticity_defect(rho_) > tol.hermitian) {
    throw ValidationError(ErrorCode::NotDensityMatrix, "density matrix is not Hermitian");
  }
  const double trace_defect = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (trace_defect > tol.trace) {
    throw ValidationError(ErrorCode::NotDensityMatrix,
                          "density matrix trace differs from 1 by " + scientific(trace_defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho_ + rho_.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on density matrix");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    throw ValidationError(ErrorCode::NotDensityMatrix,
                          "density matrix has negative eigenvalue " + scientific(min_eig));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n) {
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) {
    throw ValidationError(ErrorCode::InvalidArgument, "pure state vector must be nonzero");
  }
  Vector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

GeneratorSpec::GeneratorSpec(std::optional<Matrix> h, std::vector<Matrix> jumps)
    : hamiltonian(std::move(h)), jump_operators(std::move(jumps)) {
  if (jump_operators.empty()) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "generator needs at least one jump operator");
  }
  for (const auto& op : jump_operators) {
    require_square(op, "jump operator");
    if (op.rows() != jump_operators.front().rows()) {
      throw ValidationError(ErrorCode::DimensionMismatch,
                            "jump operators have mixed dimensions");
    }
  }
  if (hamiltonian) {
    require_hermitian(*hamiltonian, "Hamiltonian");
    if (hamiltonian->rows() != jump_operators.front().rows()) {
      throw ValidationError(ErrorCode::DimensionMismatch,
                            "Hamiltonian dimension differs from jump operators");
    }
  }
}

GeneratorSpec GeneratorSpec::simple(Matrix h) {
  require_square(h, "jump operator");
  std::vector<Matrix> jumps;
  jumps.push_back(std::move(h));
  return GeneratorSpec(std::nullopt, std::move(jumps));
}

SuperoperatorMatrix::SuperoperatorMatrix(Eigen::Index dim, Matrix entries,
                                         const Tolerances& tol)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim <= 0 || entries_.rows() != dim * dim || entries_.cols() != dim * dim) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "superoperator must be n^2 x n^2 for Hilbert dimension n");
  }
  const double scale = std::max(1.0, entries_.norm());
  // Trace preservation: the column sums over diagonal output slots vanish.
  double trace_defect = 0.0;
  for (Eigen::Index col = 0; col < dim * dim; ++col) {
    Complex sum(0.0, 0.0);
    for (Eigen::Index a = 0; a < dim; ++a) sum += entries_(a * dim + a, col);
    trace_defect = std::max(trace_defect, std::abs(sum));
  }
  if (trace_defect > tol.trace * scale) {
    throw ValidationError(ErrorCode::ValidationFailure,
                          "superoperator does not preserve the trace");
  }
  // Selfadjointness preservation: L[(a,b),(c,d)] = conj(L[(b,a),(d,c)]).
  double herm_defect = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index d = 0; d < dim; ++d) {
          const Complex lhs = entries_(a * dim + b, c * dim + d);
          const Complex rhs = std::conj(entries_(b * dim + a, d * dim + c));
          herm_defect = std::max(herm_defect, std::abs(lhs - rhs));
        }
  if (herm_defect > tol.hermitian * scale) {
    throw ValidationError(ErrorCode::ValidationFailure,
                          "superoperator does not preserve selfadjointness");
  }
}

Matrix SuperoperatorMatrix::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "superoperator applied to matrix of wrong dimension");
  }
  return unvectorize(entries_ * vectorize(rho), dim_);
}

Vector vectorize(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Vector v(n * m.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Matrix unvectorize(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "vector length is not n^2");
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

}  // namespace lindblad
