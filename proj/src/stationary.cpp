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

#include "lindblad/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lindblad/generator.hpp"

namespace lindblad {

namespace {

bool is_normal(const Matrix& h, const Tolerances& tol) {
  const double scale = std::max(h.squaredNorm(), 1e-300);
  return (h * h.adjoint() - h.adjoint() * h).norm() <= tol.normality * scale;
}

/// Deterministic orthonormal eigenbasis of a Hermitian matrix: within each
/// degenerate cluster the basis is rebuilt from projected standard basis
/// vectors in index order, and phases are fixed by the largest entry.
std::pair<Eigen::VectorXd, Matrix> canonical_eigenbasis(const Matrix& hermitian,
                                                        double cluster_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((hermitian + hermitian.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed");
  }
  Eigen::VectorXd values = es.eigenvalues();
  Matrix vectors = es.eigenvectors();
  const Eigen::Index n = values.size();

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && std::abs(values(end) - values(end - 1)) <= cluster_tol) ++end;
    const Eigen::Index width = end - start;
    if (width > 1) {
      const Matrix sub = vectors.middleCols(start, width);
      const Matrix proj = sub * sub.adjoint();
      Matrix rebuilt(n, width);
      Eigen::Index got = 0;
      for (Eigen::Index e = 0; e < n && got < width; ++e) {
        Vector candidate = proj.col(e);  // projection of standard basis vector
        for (Eigen::Index c = 0; c < got; ++c) {
          candidate -= rebuilt.col(c) * (rebuilt.col(c).dot(candidate));
        }
        const double norm = candidate.norm();
        if (norm > 1e-8) rebuilt.col(got++) = candidate / norm;
      }
      if (got == width) vectors.middleCols(start, width) = rebuilt;
    }
    start = end;
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index imax = 0;
    double vmax = -1.0;
    for (Eigen::Index r = 0; r < n; ++r)
      if (std::abs(vectors(r, c)) > vmax + 1e-15) {
        vmax = std::abs(vectors(r, c));
        imax = r;
      }
    if (vmax > 0.0) vectors.col(c) *= std::conj(vectors(imax, c)) / vmax;
  }
  return {values, vectors};
}

BlockStationary classify_block(const Matrix& block, const Tolerances& tol) {
  BlockStationary out;
  if (has_zero_eigenvalue(block, tol)) {
    out.kind = StationaryCase::AttractiveFace;
    const auto kernel = kernel_basis(block, tol);
    const Eigen::Index d = block.rows();
    Matrix p = Matrix::Zero(d, d);
    for (const auto& v : kernel) p += v * v.adjoint();
    out.face_projector = p;
    out.dimension = static_cast<int>(kernel.size() * kernel.size());
  } else {
    out.kind = StationaryCase::UniqueInterior;
    out.interior = interior_stationary(block, tol);
    out.dimension = 1;
  }
  return out;
}

}  // namespace

const char* stationary_case_name(StationaryCase c) {
  switch (c) {
    case StationaryCase::UniqueInterior: return "unique_interior";
    case StationaryCase::AttractiveFace: return "attractive_face";
    case StationaryCase::Commutant: return "commutant";
    case StationaryCase::Composite: return "composite";
  }
  return "unknown";
}

DensityMatrix interior_stationary(const Matrix& h, const Tolerances& tol) {
  require_square(h, "operator");
  if (commutant_dimension(h) > 1) {
    throw ValidationError(ErrorCode::Decomposable,
                          "operator is decomposable; classify per block instead");
  }
  if (has_zero_eigenvalue(h, tol)) {
    throw ValidationError(ErrorCode::ZeroEigenvalue,
                          "operator has a zero eigenvalue; use attractive_face");
  }
  const Matrix gram = h.adjoint() * h;
  Matrix inverse = gram.ldlt().solve(Matrix::Identity(h.rows(), h.rows()));
  inverse = ((inverse + inverse.adjoint()) / 2.0).eval();
  const double trace = inverse.trace().real();
  return DensityMatrix(inverse / trace, tol);
}

Matrix attractive_face(const Matrix& h, const Tolerances& tol) {
  require_square(h, "operator");
  if (commutant_dimension(h) > 1) {
    throw ValidationError(ErrorCode::Decomposable,
                          "operator is decomposable; classify per block instead");
  }
  if (!has_zero_eigenvalue(h, tol)) {
    throw ValidationError(ErrorCode::NoZeroEigenvalue,
                          "operator has no zero eigenvalue; use interior_stationary");
  }
  const auto kernel = kernel_basis(h, tol);
  if (kernel.empty()) {
    throw NumericalError("zero eigenvalue detected but kernel basis is empty");
  }
  Matrix p = Matrix::Zero(h.rows(), h.rows());
  for (const auto& v : kernel) p += v * v.adjoint();
  return p;
}

std::vector<Matrix> phase_relation_invariants(const Matrix& h_j, const Matrix& h_l,
                                              const Tolerances& tol) {
  require_square(h_j, "block");
  require_square(h_l, "block");
  if (commutant_dimension(h_j) > 1 || commutant_dimension(h_l) > 1) {
    throw ValidationError(ErrorCode::Decomposable,
                          "phase relations are defined between indecomposable parts");
  }
  const bool zero_j = has_zero_eigenvalue(h_j, tol);
  const bool zero_l = has_zero_eigenvalue(h_l, tol);

  std::vector<Matrix> basis;
  if (zero_j && zero_l) {
    for (const auto& v : kernel_basis(h_j, tol)) {
      for (const auto& w : kernel_basis(h_l, tol)) {
        basis.push_back(v * w.adjoint());
      }
    }
    return basis;
  }
  if (zero_j != zero_l) return basis;

  // No kernels: invariant iff the parts are unitarily equivalent, and then
  // the span is one-dimensional, Q = rho_j U.
  const auto classes = equivalence_classes({h_j, h_l}, tol);
  if (classes.class_of[0] != classes.class_of[1]) return basis;
  const Matrix u = classes.witness(0, 1);  // u h_l u^dag = h_j
  Matrix q = interior_stationary(h_j, tol).matrix() * u;
  basis.push_back(q / q.norm());
  return basis;
}

StationarySet classify_stationary(const Matrix& h, const Tolerances& tol) {
  require_square(h, "operator");
  StationarySet out;

  if (is_normal(h, tol)) {
    out.kind = StationaryCase::Commutant;
    auto schur = schur_triangulate(h);
    // For a normal operator the Schur factor is diagonal and the basis
    // orthonormal; cluster equal eigenvalues for the degeneracy pattern.
    std::vector<Complex> eigs(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      eigs[static_cast<std::size_t>(i)] = schur.triangular(i, i);
    const double cluster_tol = tol.cluster * std::max(1.0, h.norm());
    std::vector<bool> assigned(eigs.size(), false);
    Matrix basis(h.rows(), h.rows());
    Eigen::Index col = 0;
    out.stationary_dimension = 0;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      if (assigned[i]) continue;
      int size = 0;
      for (std::size_t j = 0; j < eigs.size(); ++j) {
        if (!assigned[j] && std::abs(eigs[j] - eigs[i]) <= cluster_tol) {
          assigned[j] = true;
          basis.col(col++) = schur.unitary.col(static_cast<Eigen::Index>(j));
          ++size;
        }
      }
      out.commutant_degeneracies.push_back(size);
      out.stationary_dimension += size * size;
    }
    out.commutant_eigenbasis = basis;
    return out;
  }

  Decomposition decomposition = decompose(h, tol);
  if (decomposition.size() == 1) {
    const BlockStationary leaf = classify_block(h, tol);
    out.kind = leaf.kind;
    out.interior = leaf.interior;
    out.face_projector = leaf.face_projector;
    out.stationary_dimension = leaf.dimension;
    return out;
  }

  out.kind = StationaryCase::Composite;
  out.stationary_dimension = 0;
  for (std::size_t j = 0; j < decomposition.size(); ++j) {
    BlockStationary leaf = classify_block(decomposition.blocks[j], tol);
    out.stationary_dimension += leaf.dimension;
    out.block_results.push_back(std::move(leaf));
  }
  for (std::size_t j = 0; j < decomposition.size(); ++j) {
    for (std::size_t l = j + 1; l < decomposition.size(); ++l) {
      auto basis = phase_relation_invariants(decomposition.blocks[j],
                                             decomposition.blocks[l], tol);
      if (basis.empty()) continue;
      out.stationary_dimension += 2 * static_cast<int>(basis.size());
      PhaseRelationBasis rel;
      rel.block_j = static_cast<int>(j);
      rel.block_l = static_cast<int>(l);
      rel.basis = std::move(basis);
      out.phase_relations.push_back(std::move(rel));
    }
  }
  out.decomposition = std::move(decomposition);
  return out;
}

Matrix design_generator(const DensityMatrix& rho_target, const Tolerances&) {
  const Eigen::Index n = rho_target.dim();
  const Matrix& rho = rho_target.matrix();
  if ((rho - Matrix::Identity(n, n) / static_cast<double>(n)).norm() <= 1e-12) {
    throw ValidationError(ErrorCode::MaximallyMixed,
                          "no simple generator has the maximally mixed state as unique "
                          "stationary state");
  }

  const auto [values, vectors] = canonical_eigenbasis(rho, 1e-12);
  const double rank_cut = 1e-10;  // relative to unit trace
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (values(i) > rank_cut) ++rank;

  if (rank == 1) {
    // Pure target: nilpotent shift with the target vector as the one proper
    // zero-eigenvector, h = sum_j |phi_j><phi_{j+1}|.
    Matrix basis(n, n);
    basis.col(0) = vectors.col(n - 1);  // the eigenvalue-1 vector
    Eigen::Index got = 1;
    for (Eigen::Index e = 0; e < n && got < n; ++e) {
      Vector candidate = Vector::Zero(n);
      candidate(e) = 1.0;
      for (Eigen::Index c = 0; c < got; ++c)
        candidate -= basis.col(c) * basis.col(c).dot(candidate);
      const double norm = candidate.norm();
      if (norm > 1e-8) basis.col(got++) = candidate / norm;
    }
    Matrix h = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      h += basis.col(j) * basis.col(j + 1).adjoint();
    }
    return h;
  }

  if (rank < n) {
    throw ValidationError(ErrorCode::NotUniquelyDesignable,
                          "rank-deficient mixed targets admit no unique stationary design");
  }

  // Full-rank target: |h| = rho^{-1/2} in the eigenbasis, U the cyclic shift
  // mixing all eigenspaces.
  Matrix mod = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mod += vectors.col(i) * vectors.col(i).adjoint() / std::sqrt(values(i));
  }
  Matrix shift = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    shift += vectors.col(j) * vectors.col((j + 1) % n).adjoint();
  }
  Matrix h = shift * mod;
  if (commutant_dimension(h) > 1) {
    throw NumericalError("designed generator failed the indecomposability check");
  }
  return h;
}

}  // namespace lindblad
