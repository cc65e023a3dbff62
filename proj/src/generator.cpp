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

#include "lindblad/generator.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace lindblad {

namespace {

constexpr Complex kImag(0.0, 1.0);

Matrix simple_superoperator(const Matrix& h) {
  const Eigen::Index n = h.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix hh = h.adjoint() * h;
  Matrix L = Eigen::kroneckerProduct(h, h.conjugate());
  L -= 0.5 * Eigen::kroneckerProduct(hh, id);
  L -= 0.5 * Eigen::kroneckerProduct(id, hh.transpose());
  return L;
}

}  // namespace

Matrix apply_simple_generator(const Matrix& h, const Matrix& rho) {
  require_square(h, "jump operator");
  require_same_dim(h, rho, "apply_simple_generator");
  const Matrix hh = h.adjoint() * h;
  return h * rho * h.adjoint() - 0.5 * (hh * rho + rho * hh);
}

Matrix apply_dual_generator(const Matrix& h, const Matrix& f) {
  require_square(h, "jump operator");
  require_same_dim(h, f, "apply_dual_generator");
  const Matrix hh = h.adjoint() * h;
  return h.adjoint() * f * h - 0.5 * (hh * f + f * hh);
}

Matrix apply_full_generator(const GeneratorSpec& spec, const Matrix& rho) {
  require_same_dim(spec.jump_operators.front(), rho, "apply_full_generator");
  Matrix result = Matrix::Zero(rho.rows(), rho.cols());
  if (spec.hamiltonian) {
    result -= kImag * (*spec.hamiltonian * rho - rho * *spec.hamiltonian);
  }
  for (const auto& h : spec.jump_operators) {
    result += apply_simple_generator(h, rho);
  }
  return result;
}

SuperoperatorMatrix build_superoperator(const GeneratorSpec& spec) {
  const Eigen::Index n = spec.dim();
  Matrix L = Matrix::Zero(n * n, n * n);
  if (spec.hamiltonian) {
    L += commutator_superoperator(*spec.hamiltonian);
  }
  for (const auto& h : spec.jump_operators) {
    L += simple_superoperator(h);
  }
  return SuperoperatorMatrix(n, std::move(L));
}

SuperoperatorMatrix build_superoperator(const Matrix& h) {
  return build_superoperator(GeneratorSpec::simple(h));
}

Matrix commutator_superoperator(const Matrix& hamiltonian) {
  require_hermitian(hamiltonian, "Hamiltonian");
  const Eigen::Index n = hamiltonian.rows();
  const Matrix id = Matrix::Identity(n, n);
  return -kImag * (Eigen::kroneckerProduct(hamiltonian, id) -
                   Eigen::kroneckerProduct(id, hamiltonian.transpose()))
                      .eval();
}

Matrix choi_matrix(const SuperoperatorMatrix& L, double t) {
  if (!std::isfinite(t)) {
    throw ValidationError(ErrorCode::InvalidArgument, "time must be finite");
  }
  const Eigen::Index n = L.dim();
  const Matrix map = (t * L.entries()).exp();
  Matrix choi(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
          choi(i * n + k, j * n + l) = map(k * n + l, i * n + j);
  return choi;
}

CpReport choi_cp_check(const SuperoperatorMatrix& L, double t) {
  const Matrix choi = choi_matrix(L, t);
  Eigen::SelfAdjointEigenSolver<Matrix> es((choi + choi.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on Choi matrix");
  }
  CpReport report;
  report.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  report.is_cp = report.min_choi_eigenvalue >= -1e-10 * static_cast<double>(L.dim());
  return report;
}

Matrix reshuffle(const Matrix& superop, Eigen::Index n) {
  Matrix r(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d)
          r(a * n + c, b * n + d) = superop(a * n + b, c * n + d);
  return r;
}

RecoveredOperator recover_h(const SuperoperatorMatrix& L, const Tolerances& tol) {
  const Eigen::Index n = L.dim();
  const double scale = std::max(1.0, L.entries().norm());

  // For L = L_{D_k} the reshuffle is
  //   vec(k) vec(k)^dag - 1/2 vec(k^dag k) vec(1)^dag - 1/2 vec(1) vec(k^dag k)^dag,
  // so compressing out the identity direction on both sides leaves the rank-one
  // part vec(k_0) vec(k_0)^dag built from the traceless part k_0 of k.
  const Matrix r = reshuffle(L.entries(), n);
  Vector vec_id = vectorize(Matrix::Identity(n, n));
  vec_id /= vec_id.norm();
  const Matrix proj = Matrix::Identity(n * n, n * n) - vec_id * vec_id.adjoint();
  Matrix m = proj * r * proj;
  m = (m + m.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed in recover_h");
  }
  const Eigen::Index top = n * n - 1;
  const double mu = es.eigenvalues()(top);

  // Eigenvalue noise of the compressed reshuffle sits at eps * ||L||; only
  // accept a rank-one component clearly above that floor.
  Matrix traceless = Matrix::Zero(n, n);
  if (mu > 1e-13 * scale) {
    traceless = std::sqrt(mu) * unvectorize(es.eigenvectors().col(top), n);
  }

  // Adding c*1 to the jump operator shifts the generator linearly:
  // D_{k+c} = D_k + 1/2 c^* [k, .] - 1/2 c [k^dag, .]. Least squares in
  // (Re c, Im c) settles the trace part.
  const Matrix id = Matrix::Identity(n, n);
  auto comm_superop = [&](const Matrix& g) -> Matrix {
    return Eigen::kroneckerProduct(g, id) - Eigen::kroneckerProduct(id, g.transpose());
  };
  const Matrix kh = comm_superop(traceless);
  const Matrix khd = comm_superop(traceless.adjoint().eval());
  const Matrix g1 = 0.5 * (kh - khd);
  const Matrix g2 = -0.5 * kImag * (kh + khd);
  const Matrix rhs = L.entries() - simple_superoperator(traceless);

  auto rdot = [](const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace().real();
  };
  Eigen::Matrix2d gram;
  gram << rdot(g1, g1), rdot(g1, g2), rdot(g2, g1), rdot(g2, g2);
  Eigen::Vector2d target(rdot(g1, rhs), rdot(g2, rhs));
  Eigen::Vector2d coeff = Eigen::Vector2d::Zero();
  if (gram.norm() > 1e-280) {
    Eigen::JacobiSVD<Eigen::Matrix2d> gram_svd(gram,
                                               Eigen::ComputeFullU | Eigen::ComputeFullV);
    gram_svd.setThreshold(1e-10);  // flat directions get no trace correction
    coeff = gram_svd.solve(target);
  }

  Matrix k = traceless + Complex(coeff(0), coeff(1)) * id;
  const double residual = (simple_superoperator(k) - L.entries()).norm();
  if (!std::isfinite(residual) || residual > tol.recover * scale) {
    throw ValidationError(ErrorCode::ValidationFailure,
                          "no simple generator reproduces the superoperator; residual " +
                              std::to_string(residual));
  }

  // Canonical phase: largest-magnitude entry real positive.
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(k(i, j)) > best + 1e-15) {
        best = std::abs(k(i, j));
        bi = i;
        bj = j;
      }
  if (best > 0.0) {
    k *= std::conj(k(bi, bj)) / std::abs(k(bi, bj));
  }

  RecoveredOperator out;
  const double norm2 = k.squaredNorm();
  const double normal_defect = (k * k.adjoint() - k.adjoint() * k).norm();
  out.unique_up_to_phase = normal_defect > tol.normality * std::max(norm2, 1e-300);
  out.h = std::move(k);
  out.residual = residual;
  return out;
}

UnitaryLimitReport unitary_limit_check(const Matrix& hamiltonian, double lambda) {
  require_hermitian(hamiltonian, "Hamiltonian");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError(ErrorCode::InvalidArgument, "lambda must be positive");
  }
  const Eigen::Index n = hamiltonian.rows();
  const Matrix h_lambda =
      Matrix::Identity(n, n) / lambda - kImag * lambda * hamiltonian;
  UnitaryLimitReport report;
  report.distance =
      (simple_superoperator(h_lambda) - commutator_superoperator(hamiltonian)).norm();
  report.expected = lambda * lambda * simple_superoperator(hamiltonian).norm();
  return report;
}

}  // namespace lindblad
