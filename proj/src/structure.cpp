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

#include "lindblad/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace lindblad {

namespace {

/// Columns of an orthonormal basis for the null space of m, using singular
/// values below threshold * max(1, sigma_max).
Matrix null_space(const Matrix& m, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = threshold * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= cutoff) ++nullity;
  const Eigen::Index cols = m.cols();
  return svd.matrixV().rightCols(std::min(nullity, cols));
}

/// Orthonormal basis of the column span, dropping directions below tol.
Matrix orth(const Matrix& m, double threshold = 1e-10) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = threshold * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Union-find clustering of complex values by pairwise distance.
std::vector<int> cluster_values(const std::vector<Complex>& values, double tol) {
  const std::size_t n = values.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= tol) parent[find(i)] = find(j);
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = find(static_cast<int>(i));
    if (label[root] < 0) label[root] = next++;
    out[i] = label[root];
  }
  return out;
}

void decompose_into(const Matrix& h, const Matrix& embed, const Tolerances& tol,
                    std::mt19937_64& rng, double threshold,
                    std::vector<Matrix>& bases_out, std::vector<Matrix>& blocks_out);

}  // namespace

std::vector<Matrix> commutant_basis(const std::vector<Matrix>& ops, double threshold) {
  if (ops.empty()) {
    throw ValidationError(ErrorCode::InvalidArgument, "commutant of empty set");
  }
  const Eigen::Index n = ops.front().rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix system(static_cast<Eigen::Index>(ops.size()) * n * n, n * n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    require_square(ops[k], "commutant operand");
    // vec(X g - g X) = (1 (x) g^T - g (x) 1) vec(X)
    system.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
        Eigen::kroneckerProduct(id, ops[k].transpose()) -
        Eigen::kroneckerProduct(ops[k], id);
  }
  const Matrix null = null_space(system, threshold);
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(null.cols()));
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    basis.push_back(unvectorize(null.col(c), n));
  }
  return basis;
}

int commutant_dimension(const Matrix& h, double threshold) {
  return static_cast<int>(commutant_basis({h, h.adjoint().eval()}, threshold).size());
}

EquivalenceClasses equivalence_classes(const std::vector<Matrix>& blocks,
                                       const Tolerances& tol) {
  const std::size_t n = blocks.size();
  double scale = 1e-300;
  for (const auto& b : blocks) {
    require_square(b, "equivalence block");
    scale = std::max(scale, b.norm());
  }

  // Cheap unitary invariants: eigenvalue multiset and traces of short words
  // in (h, h^dag).
  struct Invariants {
    std::vector<Complex> eigs;
    std::vector<Complex> traces;
  };
  std::vector<Invariants> inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv[i].eigs = matrix_eigenvalues(blocks[i]);
    const Matrix& b = blocks[i];
    const Matrix bd = b.adjoint();
    inv[i].traces = {b.trace(),           (b * b).trace(),      (b * bd).trace(),
                     (b * b * b).trace(), (b * b * bd).trace(), (b * b * b * b).trace(),
                     (b * b * b * bd).trace(), (b * b * bd * bd).trace(),
                     (b * bd * b * bd).trace()};
  }
  // Greedy nearest matching of the eigenvalue multisets; a sorted pairwise
  // compare would mispair conjugate pairs whose real parts tie.
  auto multisets_close = [](std::vector<Complex> a, std::vector<Complex> b, double tol) {
    for (const auto& x : a) {
      std::size_t best = 0;
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < b.size(); ++j)
        if (std::abs(x - b[j]) < dist) {
          dist = std::abs(x - b[j]);
          best = j;
        }
      if (dist > tol) return false;
      b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return true;
  };
  auto invariants_match = [&](std::size_t i, std::size_t j) {
    if (blocks[i].rows() != blocks[j].rows()) return false;
    const double etol = 1e-6 * std::max(1.0, scale);
    if (!multisets_close(inv[i].eigs, inv[j].eigs, etol)) return false;
    for (std::size_t k = 0; k < inv[i].traces.size(); ++k)
      if (std::abs(inv[i].traces[k] - inv[j].traces[k]) > etol * 10) return false;
    return true;
  };

  // Certifying test: a joint intertwiner X h_l = h_j X, X h_l^dag = h_j^dag X
  // normalized by polar decomposition.
  auto certify = [&](std::size_t j, std::size_t l, Matrix& witness) {
    const Eigen::Index d = blocks[j].rows();
    const Matrix id = Matrix::Identity(d, d);
    Matrix system(2 * d * d, d * d);
    system.topRows(d * d) = Eigen::kroneckerProduct(id, blocks[l].transpose()) -
                            Eigen::kroneckerProduct(blocks[j], id);
    system.bottomRows(d * d) =
        Eigen::kroneckerProduct(id, blocks[l].conjugate()) -
        Eigen::kroneckerProduct(blocks[j].adjoint().eval(), id);
    const Matrix null = null_space(system, 1e-10);
    if (null.cols() == 0) return false;
    const Matrix x = unvectorize(null.col(0), d);
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() <= 1e-8 * svd.singularValues()(0)) return false;
    const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
    if ((u * blocks[l] * u.adjoint() - blocks[j]).norm() > tol.equivalence * scale) {
      return false;
    }
    witness = u;
    return true;
  };

  EquivalenceClasses result;
  result.class_of.assign(n, -1);
  result.witness_to_rep.assign(n, Matrix());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t r = 0; r < reps.size() && !placed; ++r) {
      if (!invariants_match(i, reps[r])) continue;
      Matrix witness;
      if (certify(i, reps[r], witness)) {
        result.class_of[i] = static_cast<int>(r);
        result.witness_to_rep[i] = witness;
        placed = true;
      }
    }
    if (!placed) {
      result.class_of[i] = static_cast<int>(reps.size());
      result.witness_to_rep[i] = Matrix::Identity(blocks[i].rows(), blocks[i].rows());
      reps.push_back(i);
    }
  }
  result.class_count = static_cast<int>(reps.size());
  return result;
}

namespace {

void decompose_into(const Matrix& h, const Matrix& embed, const Tolerances& tol,
                    std::mt19937_64& rng, double threshold,
                    std::vector<Matrix>& bases_out, std::vector<Matrix>& blocks_out) {
  const Eigen::Index n = h.rows();
  const auto basis = commutant_basis({h, h.adjoint().eval()}, threshold);
  if (basis.size() <= 1 || n == 1) {
    bases_out.push_back(embed);
    blocks_out.push_back(h);
    return;
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Matrix y = Matrix::Zero(n, n);
    for (const auto& x : basis) y += gauss(rng) * x;
    y = ((y + y.adjoint()) / 2.0).eval();
    if (y.norm() < 1e-8) continue;

    Eigen::SelfAdjointEigenSolver<Matrix> es(y);
    if (es.info() != Eigen::Success) continue;
    std::vector<Complex> eigs(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const auto labels = cluster_values(eigs, tol.cluster * std::max(1.0, y.norm()));
    const int groups = 1 + *std::max_element(labels.begin(), labels.end());
    if (groups <= 1) continue;

    bool ok = true;
    std::vector<std::pair<Matrix, Matrix>> parts;  // (sub-basis, sub-block)
    for (int g = 0; g < groups && ok; ++g) {
      std::vector<Eigen::Index> cols;
      for (Eigen::Index i = 0; i < n; ++i)
        if (labels[static_cast<std::size_t>(i)] == g) cols.push_back(i);
      Matrix v(n, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
      const Matrix p = v * v.adjoint();
      if ((p * h - h * p).norm() > tol.lazy * std::max(1.0, h.norm())) {
        ok = false;  // clustering split inside an invariant sector; redraw
        break;
      }
      parts.emplace_back(v, (v.adjoint() * h * v).eval());
    }
    if (!ok) continue;

    for (auto& [v, block] : parts) {
      decompose_into(block, (embed * v).eval(), tol, rng, threshold, bases_out, blocks_out);
    }
    return;
  }
  throw NumericalError("decomposition did not stabilize; commutant is ill-conditioned");
}

}  // namespace

Decomposition decompose(const Matrix& h, const Tolerances& tol, unsigned seed) {
  require_square(h, "operator");
  const double threshold = 1e-10;
  std::mt19937_64 rng(seed);
  Decomposition out;
  out.threshold = threshold;
  decompose_into(h, Matrix::Identity(h.rows(), h.rows()), tol, rng, threshold,
                 out.bases, out.blocks);
  out.projectors.reserve(out.bases.size());
  for (const auto& v : out.bases) out.projectors.push_back(v * v.adjoint());
  out.classes = equivalence_classes(out.blocks, tol);

  Matrix reassembled = Matrix::Zero(h.rows(), h.cols());
  for (const auto& p : out.projectors) reassembled += p * h * p;
  if ((reassembled - h).norm() > 1e-12 * std::max(1.0, h.norm())) {
    throw NumericalError("decomposition reassembly failed");
  }
  return out;
}

SchurResult schur_triangulate(const Matrix& h, SchurOrder order, const Tolerances&) {
  require_square(h, "operator");
  Eigen::ComplexSchur<Matrix> schur(h);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("Schur decomposition failed");
  }
  SchurResult result{schur.matrixU(), schur.matrixT()};
  const Eigen::Index n = h.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) result.triangular(i, j) = Complex(0, 0);

  if (order == SchurOrder::ZerosFirst) {
    // Ascending modulus on the diagonal; numerically zero eigenvalues end up
    // in the leading positions. Adjacent swaps use the unitary that rotates
    // the trailing eigenvector of the 2x2 block into the leading slot.
    auto swap_adjacent = [&](Eigen::Index k) {
      Matrix& t = result.triangular;
      const Complex l1 = t(k, k), l2 = t(k + 1, k + 1), coupling = t(k, k + 1);
      Eigen::Vector2cd v(coupling, l2 - l1);  // block eigenvector for l2
      const double norm = v.norm();
      if (norm < 1e-300) return;  // equal eigenvalues, nothing to move
      v /= norm;
      Eigen::Matrix2cd g;
      g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
      t.block(k, 0, 2, n) = (g.adjoint() * t.block(k, 0, 2, n)).eval();
      t.block(0, k, n, 2) = (t.block(0, k, n, 2) * g).eval();
      result.unitary.block(0, k, n, 2) = (result.unitary.block(0, k, n, 2) * g).eval();
      t(k + 1, k) = Complex(0, 0);
    };
    bool moved = true;
    while (moved) {
      moved = false;
      for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double lead = std::abs(result.triangular(k, k));
        const double next = std::abs(result.triangular(k + 1, k + 1));
        if (next < lead * (1.0 - 1e-12)) {
          swap_adjacent(k);
          moved = true;
        }
      }
    }
  }
  return result;
}

bool is_lazy_subspace(const Matrix& h, const Matrix& projector, const Tolerances& tol) {
  require_square(h, "operator");
  require_same_dim(h, projector, "is_lazy_subspace");
  const double pscale = std::max(1.0, projector.norm());
  if ((projector - projector.adjoint()).norm() > tol.projector * pscale ||
      (projector * projector - projector).norm() > tol.projector * pscale) {
    throw ValidationError(ErrorCode::NotProjector, "P is not an orthogonal projector");
  }
  return (h * projector - projector * h * projector).norm() <= tol.lazy * h.norm();
}

std::vector<Complex> matrix_eigenvalues(const Matrix& h) {
  Eigen::ComplexEigenSolver<Matrix> es(h, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed");
  }
  std::vector<Complex> out(static_cast<std::size_t>(h.rows()));
  for (Eigen::Index i = 0; i < h.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

bool has_zero_eigenvalue(const Matrix& h, const Tolerances& tol) {
  // Zero is an eigenvalue iff the kernel is nonempty. The smallest singular
  // value detects this reliably even when the zero eigenvalue is defective,
  // where computed eigenvalues scatter to eps^(1/k).
  Eigen::JacobiSVD<Matrix> svd(h);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) <= tol.zero_eigenvalue * std::max(1.0, sv(0));
}

std::vector<Vector> kernel_basis(const Matrix& h, const Tolerances& tol) {
  const Matrix null = null_space(h, tol.zero_eigenvalue);
  std::vector<Vector> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) out.push_back(null.col(c));
  return out;
}

int JordanStructure::geometric_multiplicity(Complex lambda, double match_tol) const {
  int count = 0;
  for (const auto& chain : chains) {
    if (std::abs(chain.eigenvalue - lambda) <= match_tol) ++count;
  }
  return count;
}

JordanStructure jordan_structure(const Matrix& h, const Tolerances& tol) {
  require_square(h, "operator");
  const Eigen::Index n = h.rows();
  const double scale = h.norm();
  const auto eigs = matrix_eigenvalues(h);
  const auto labels = cluster_values(eigs, tol.cluster * std::max(scale, 1e-300));
  const int groups = 1 + *std::max_element(labels.begin(), labels.end());

  JordanStructure js;
  for (int g = 0; g < groups; ++g) {
    Complex mean(0, 0);
    int mult = 0;
    for (std::size_t i = 0; i < eigs.size(); ++i)
      if (labels[i] == g) {
        mean += eigs[i];
        ++mult;
      }
    mean /= static_cast<double>(mult);

    const Matrix m = h - mean * Matrix::Identity(n, n);
    // Null-space filtration K_k = ker(M^k) until nullity reaches the
    // algebraic multiplicity.
    std::vector<Matrix> kernels;  // orthonormal bases
    Matrix power = Matrix::Identity(n, n);
    int max_height = 0;
    while (true) {
      power = (power * m).eval();
      kernels.push_back(null_space(power, tol.cluster));
      ++max_height;
      if (kernels.back().cols() >= mult || max_height >= n) break;
    }

    // Select chain tops from the highest filtration level downwards.
    std::vector<std::pair<Vector, int>> tops;  // (vector, height)
    for (int k = max_height; k >= 1; --k) {
      const Matrix& kk = kernels[static_cast<std::size_t>(k - 1)];
      Matrix avoid(n, 0);
      if (k >= 2) avoid = kernels[static_cast<std::size_t>(k - 2)];
      for (const auto& [v, height] : tops) {
        Vector dropped = v;
        for (int step = 0; step < height - k; ++step) dropped = m * dropped;
        avoid.conservativeResize(n, avoid.cols() + 1);
        avoid.col(avoid.cols() - 1) = dropped;
      }
      const Matrix avoid_orth = orth(avoid);
      Matrix candidates = kk;
      if (avoid_orth.cols() > 0) {
        candidates -= avoid_orth * (avoid_orth.adjoint() * kk);
      }
      const Matrix fresh = orth(candidates, 1e-8);
      for (Eigen::Index c = 0; c < fresh.cols(); ++c) tops.emplace_back(fresh.col(c), k);
    }

    for (const auto& [top, height] : tops) {
      JordanChain chain;
      chain.eigenvalue = mean;
      std::vector<Vector> descending;  // psi_{height-1}, ..., psi_0
      descending.push_back(top);
      for (int step = 1; step < height; ++step) descending.push_back(m * descending.back());
      chain.vectors.assign(descending.rbegin(), descending.rend());
      js.chains.push_back(std::move(chain));
    }
  }
  return js;
}

std::vector<Matrix> canonical_lazy_subspaces(const Matrix& h, const Tolerances& tol) {
  const auto js = jordan_structure(h, tol);
  const Eigen::Index n = h.rows();
  const std::size_t num_chains = js.chains.size();
  std::vector<std::size_t> prefix(num_chains, 0);

  std::vector<Matrix> out;
  while (true) {
    // Advance the mixed-radix prefix counter.
    std::size_t pos = 0;
    while (pos < num_chains) {
      if (++prefix[pos] <= js.chains[pos].vectors.size()) break;
      prefix[pos] = 0;
      ++pos;
    }
    if (pos == num_chains) break;

    Eigen::Index total = 0;
    for (std::size_t c = 0; c < num_chains; ++c) total += static_cast<Eigen::Index>(prefix[c]);
    Matrix span(n, total);
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < num_chains; ++c)
      for (std::size_t mu = 0; mu < prefix[c]; ++mu) span.col(col++) = js.chains[c].vectors[mu];
    const Matrix q = orth(span, 1e-10);
    out.push_back(q * q.adjoint());
  }
  return out;
}

}  // namespace lindblad
