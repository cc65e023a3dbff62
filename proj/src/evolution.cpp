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

#include "lindblad/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad/generator.hpp"
#include "lindblad/structure.hpp"

namespace lindblad {

namespace {

double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

EigenSystem hermitian_eigs(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) {
    throw NumericalError("selfadjoint eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Greedy branch matching by maximal eigenvector overlap; returns perm with
/// new_index = perm[old_branch].
std::vector<Eigen::Index> match_branches(const Matrix& prev_vectors,
                                         const Matrix& cur_vectors) {
  const Eigen::Index n = prev_vectors.cols();
  Eigen::MatrixXd overlap = (prev_vectors.adjoint() * cur_vectors).cwiseAbs();
  std::vector<Eigen::Index> perm(n, -1);
  std::vector<bool> used_row(n, false), used_col(n, false);
  for (Eigen::Index pick = 0; pick < n; ++pick) {
    double best = -1.0;
    Eigen::Index bi = 0, bj = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used_row[i]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used_col[j]) continue;
        if (overlap(i, j) > best) {
          best = overlap(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    perm[bi] = bj;
    used_row[bi] = used_col[bj] = true;
  }
  return perm;
}

int numerical_rank(const Eigen::VectorXd& eigenvalues, double trace) {
  const double cutoff = 1e-10 * std::max(trace, 1e-300);
  int rank = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (std::abs(eigenvalues(i)) > cutoff) ++rank;
  return rank;
}

}  // namespace

Trajectory::Trajectory(std::vector<double> t, std::vector<DensityMatrix> s)
    : times(std::move(t)), states(std::move(s)) {
  if (times.size() != states.size() || times.empty()) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "trajectory needs matching nonempty times and states");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1])) {
      throw ValidationError(ErrorCode::InvalidArgument,
                            "trajectory times must be nonnegative and strictly increasing");
    }
    if (states[i].dim() != states.front().dim()) {
      throw ValidationError(ErrorCode::DimensionMismatch,
                            "trajectory states have mixed dimensions");
    }
  }
}

Matrix evolve_matrix(const SuperoperatorMatrix& L, const Matrix& sigma, double t) {
  if (sigma.rows() != L.dim() || sigma.cols() != L.dim()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "state dimension does not match superoperator");
  }
  if (!std::isfinite(t)) {
    throw ValidationError(ErrorCode::InvalidArgument, "time must be finite");
  }
  // For very large ||t L|| the single-call exponential accumulates roundoff
  // of order eps * ||t L|| through its squaring chain. In the long-time
  // forward regime the spectral route is exact in t: the zero cluster is
  // semisimple (the semigroup is bounded), so its factors are pinned at one
  // while every decaying mode gets e^{t lambda} directly.
  const double work = std::abs(t) * L.entries().norm();
  if (work <= 64.0) {
    const Matrix map = (t * L.entries()).exp();
    return unvectorize(map * vectorize(sigma), L.dim());
  }
  if (t > 0.0) {
    Eigen::ComplexEigenSolver<Matrix> es(L.entries());
    if (es.info() == Eigen::Success) {
      const Matrix& basis = es.eigenvectors();
      Eigen::PartialPivLU<Matrix> lu(basis);
      const double zero_cut = 1e-10 * std::max(1.0, L.entries().norm());
      bool clean = lu.rcond() > 1e-8;
      for (Eigen::Index i = 0; clean && i < es.eigenvalues().size(); ++i) {
        const double mag = std::abs(es.eigenvalues()(i));
        if (mag > zero_cut && mag < 1e3 * zero_cut) clean = false;  // ambiguous cluster
      }
      if (clean) {
        Vector coeff = lu.solve(vectorize(sigma));
        for (Eigen::Index i = 0; i < coeff.size(); ++i) {
          const Complex lambda = es.eigenvalues()(i);
          if (std::abs(lambda) <= zero_cut) continue;  // stationary mode
          const Complex exponent = t * lambda;
          coeff(i) *= exponent.real() < -700.0 ? Complex(0, 0) : std::exp(exponent);
        }
        return unvectorize(basis * coeff, L.dim());
      }
    }
  }
  // Fallback: split into moderate substeps; drift stays bounded because the
  // state stops moving once it reaches the numerical fixed point.
  const int steps = static_cast<int>(std::ceil(work / 32.0));
  const Matrix step_map = ((t / steps) * L.entries()).exp();
  Vector v = vectorize(sigma);
  for (int k = 0; k < steps; ++k) v = step_map * v;
  return unvectorize(v, L.dim());
}

Matrix evolve_dual(const SuperoperatorMatrix& L, const Matrix& f, double t) {
  if (f.rows() != L.dim() || f.cols() != L.dim()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "observable dimension does not match superoperator");
  }
  if (!std::isfinite(t)) {
    throw ValidationError(ErrorCode::InvalidArgument, "time must be finite");
  }
  const Matrix map = (t * L.entries().adjoint()).exp();
  return unvectorize(map * vectorize(f), L.dim());
}

DensityMatrix propagate(const SuperoperatorMatrix& L, const DensityMatrix& rho0,
                        double t, const Tolerances& tol) {
  if (t < 0.0) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "negative time does not preserve positivity");
  }
  Matrix rho = evolve_matrix(L, rho0.matrix(), t);
  rho = ((rho + rho.adjoint()) / 2.0).eval();  // scrub roundoff asymmetry
  return DensityMatrix(std::move(rho), tol);
}

Trajectory sample_trajectory(const SuperoperatorMatrix& L, const DensityMatrix& rho0,
                             double t_max, int steps, const Tolerances& tol) {
  if (t_max <= 0.0 || steps < 1) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "trajectory needs t_max > 0 and at least one step");
  }
  const Matrix step_map = ((t_max / steps) * L.entries()).exp();
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  times.reserve(static_cast<std::size_t>(steps) + 1);
  states.reserve(static_cast<std::size_t>(steps) + 1);
  Vector v = vectorize(rho0.matrix());
  times.push_back(0.0);
  states.push_back(rho0);
  for (int k = 1; k <= steps; ++k) {
    v = step_map * v;
    Matrix rho = unvectorize(v, L.dim());
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    times.push_back(t_max * k / steps);
    states.emplace_back(std::move(rho), tol);
  }
  return Trajectory(std::move(times), std::move(states));
}

SpectrumReport generator_spectrum(const SuperoperatorMatrix& L, const Tolerances& tol) {
  const Eigen::Index n2 = L.entries().rows();
  Eigen::ComplexEigenSolver<Matrix> es(L.entries());
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed on superoperator");
  }
  SpectrumReport report;
  report.eigenvalues.resize(static_cast<std::size_t>(n2));
  report.proper_eigenmatrices.reserve(static_cast<std::size_t>(n2));
  for (Eigen::Index i = 0; i < n2; ++i) {
    report.eigenvalues[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    report.proper_eigenmatrices.push_back(unvectorize(es.eigenvectors().col(i), L.dim()));
  }

  const double scale = std::max(1.0, L.entries().norm());
  // Defectiveness per eigenvalue cluster: geometric < algebraic multiplicity.
  std::vector<int> labels;
  {
    std::vector<int> parent(static_cast<std::size_t>(n2));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x)
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (Eigen::Index i = 0; i < n2; ++i)
      for (Eigen::Index j = i + 1; j < n2; ++j)
        if (std::abs(report.eigenvalues[static_cast<std::size_t>(i)] -
                     report.eigenvalues[static_cast<std::size_t>(j)]) <=
            tol.cluster * scale)
          parent[static_cast<std::size_t>(find(static_cast<int>(i)))] =
              find(static_cast<int>(j));
    labels.assign(static_cast<std::size_t>(n2), -1);
    int next = 0;
    std::vector<int> remap(static_cast<std::size_t>(n2), -1);
    for (Eigen::Index i = 0; i < n2; ++i) {
      const int root = find(static_cast<int>(i));
      if (remap[static_cast<std::size_t>(root)] < 0) remap[static_cast<std::size_t>(root)] = next++;
      labels[static_cast<std::size_t>(i)] = remap[static_cast<std::size_t>(root)];
    }
  }
  const int groups = 1 + *std::max_element(labels.begin(), labels.end());
  std::vector<bool> cluster_defective(static_cast<std::size_t>(groups), false);
  for (int g = 0; g < groups; ++g) {
    Complex mean(0, 0);
    int algebraic = 0;
    for (Eigen::Index i = 0; i < n2; ++i)
      if (labels[static_cast<std::size_t>(i)] == g) {
        mean += report.eigenvalues[static_cast<std::size_t>(i)];
        ++algebraic;
      }
    if (algebraic <= 1) continue;
    mean /= static_cast<double>(algebraic);
    Eigen::JacobiSVD<Matrix> svd(L.entries() - mean * Matrix::Identity(n2, n2));
    const auto& sv = svd.singularValues();
    const double cutoff = tol.cluster * std::max(1.0, sv(0));
    int geometric = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) <= cutoff) ++geometric;
    cluster_defective[static_cast<std::size_t>(g)] = geometric < algebraic;
  }
  report.generalized_flags.resize(static_cast<std::size_t>(n2));
  for (Eigen::Index i = 0; i < n2; ++i)
    report.generalized_flags[static_cast<std::size_t>(i)] =
        cluster_defective[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];

  double max_re = -std::numeric_limits<double>::infinity();
  bool imaginary_axis = false;
  const double lnorm = L.entries().norm();
  for (const auto& lambda : report.eigenvalues) {
    max_re = std::max(max_re, lambda.real());
    if (std::abs(lambda.real()) <= 1e-10 * lnorm && std::abs(lambda.imag()) > 1e-8 * lnorm) {
      imaginary_axis = true;
    }
  }
  report.stability_verdict = {max_re, imaginary_axis};
  return report;
}

TrajectoryCheckReport trajectory_checks(const Matrix& h, const Trajectory& traj,
                                        const Tolerances&) {
  require_square(h, "operator");
  if (h.rows() != traj.states.front().dim()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "operator and trajectory dimensions differ");
  }
  const double rate = operator_norm(h);
  const double decay = rate * rate;
  const Eigen::Index n = h.rows();

  TrajectoryCheckReport report;
  report.floor_ok = true;
  report.rank_nondecreasing = true;
  report.min_margin = std::numeric_limits<double>::infinity();

  EigenSystem prev = hermitian_eigs(traj.states.front().matrix());
  Eigen::VectorXd initial = prev.values;  // branch-ordered starting values
  int prev_rank = numerical_rank(prev.values, traj.states.front().matrix().trace().real());

  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    EigenSystem cur = hermitian_eigs(traj.states[k].matrix());
    const auto perm = match_branches(prev.vectors, cur.vectors);
    Eigen::VectorXd tracked(n);
    Matrix tracked_vectors(n, n);
    for (Eigen::Index b = 0; b < n; ++b) {
      tracked(b) = cur.values(perm[static_cast<std::size_t>(b)]);
      tracked_vectors.col(b) = cur.vectors.col(perm[static_cast<std::size_t>(b)]);
    }
    const double dt = traj.times[k] - traj.times.front();
    for (Eigen::Index b = 0; b < n; ++b) {
      const double floor = std::exp(-decay * dt) * initial(b);
      const double margin = tracked(b) - floor;
      report.min_margin = std::min(report.min_margin, margin);
      if (margin < -1e-10) report.floor_ok = false;
    }
    const int rank = numerical_rank(cur.values, traj.states[k].matrix().trace().real());
    if (rank < prev_rank) report.rank_nondecreasing = false;
    prev_rank = rank;
    prev.values = tracked;
    prev.vectors = tracked_vectors;
  }
  if (traj.states.size() == 1) report.min_margin = 0.0;
  return report;
}

std::vector<double> emerging_eigenvalue_derivatives(const Matrix& h,
                                                    const DensityMatrix& rho0,
                                                    int max_order,
                                                    const Tolerances&) {
  require_square(h, "operator");
  if (h.rows() != rho0.dim()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "operator and state dimensions differ");
  }
  if (max_order < 1 || max_order > 4) {
    throw ValidationError(ErrorCode::InvalidArgument, "max_order must be in 1..4");
  }
  const Eigen::Index n = h.rows();
  EigenSystem at_zero = hermitian_eigs(rho0.matrix());
  const double trace = rho0.matrix().trace().real();
  const int rank = numerical_rank(at_zero.values, trace);
  if (rank >= n) {
    throw ValidationError(ErrorCode::FullRank,
                          "state has full rank; no emerging eigenvalue");
  }

  const SuperoperatorMatrix L = build_superoperator(h);
  const std::vector<double> steps = {1e-2, 5e-3, 2.5e-3};

  // Reference eigenvector of the emerging branch: smallest kernel-overlapping
  // eigenvalue at the smallest forward probe point.
  const double kernel_cut = 1e-10 * std::max(trace, 1e-300);
  Matrix kernel(n, n - rank);
  {
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(at_zero.values(i)) <= kernel_cut) kernel.col(col++) = at_zero.vectors.col(i);
  }
  Vector reference;
  {
    const double t_ref = steps.back() / 2.0;
    EigenSystem probe = hermitian_eigs(evolve_matrix(L, rho0.matrix(), t_ref));
    double best_value = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double overlap = (kernel.adjoint() * probe.vectors.col(i)).norm();
      if (overlap * overlap >= 0.5 && probe.values(i) < best_value) {
        best_value = probe.values(i);
        reference = probe.vectors.col(i);
      }
    }
    if (reference.size() == 0) {
      throw NumericalError("could not identify the emerging eigenvalue branch");
    }
  }

  std::map<double, double> cache;
  auto branch_value = [&](double t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    EigenSystem sys = hermitian_eigs(evolve_matrix(L, rho0.matrix(), t));
    Eigen::Index best = 0;
    double best_overlap = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double overlap = std::abs(reference.dot(sys.vectors.col(i)));
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = i;
      }
    }
    const double value = sys.values(best);
    cache.emplace(t, value);
    return value;
  };

  auto stencil = [&](int order, double dt) {
    switch (order) {
      case 1:
        return (branch_value(dt) - branch_value(-dt)) / (2 * dt);
      case 2:
        return (branch_value(dt) - 2 * branch_value(0.0) + branch_value(-dt)) / (dt * dt);
      case 3:
        return (branch_value(2 * dt) - 2 * branch_value(dt) + 2 * branch_value(-dt) -
                branch_value(-2 * dt)) /
               (2 * dt * dt * dt);
      case 4:
        return (branch_value(2 * dt) - 4 * branch_value(dt) + 6 * branch_value(0.0) -
                4 * branch_value(-dt) + branch_value(-2 * dt)) /
               (dt * dt * dt * dt);
      default:
        return 0.0;
    }
  };

  std::vector<double> out;
  for (int order = 1; order <= max_order; ++order) {
    // Two Richardson levels over the O(dt^2) stencils.
    const double a0 = stencil(order, steps[0]);
    const double a1 = stencil(order, steps[1]);
    const double a2 = stencil(order, steps[2]);
    const double r01 = (4.0 * a1 - a0) / 3.0;
    const double r12 = (4.0 * a2 - a1) / 3.0;
    out.push_back((16.0 * r12 - r01) / 15.0);
  }
  return out;
}

std::vector<EntropyPoint> entropy_track(const Trajectory& traj) {
  std::vector<EntropyPoint> out;
  out.reserve(traj.states.size());
  for (const auto& state : traj.states) {
    EigenSystem sys = hermitian_eigs(state.matrix());
    EntropyPoint point;
    double purity = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
      const double r = sys.values(i);
      if (r > 0.0) point.von_neumann -= r * std::log(r);
      purity += r * r;
    }
    point.fermi = 1.0 - purity;
    out.push_back(point);
  }
  return out;
}

double face_coordinate(const DensityMatrix& rho, const std::vector<Vector>& face_basis,
                       const Tolerances& tol) {
  const Eigen::Index n = rho.dim();
  const Eigen::Index k = static_cast<Eigen::Index>(face_basis.size());
  if (k == 0 || k >= n) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "face basis must span a nonempty proper subspace");
  }
  Matrix basis(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    if (face_basis[static_cast<std::size_t>(c)].size() != n) {
      throw ValidationError(ErrorCode::DimensionMismatch,
                            "face basis vector of wrong dimension");
    }
    basis.col(c) = face_basis[static_cast<std::size_t>(c)];
  }
  const Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(k, k)).norm() > tol.projector * std::sqrt(static_cast<double>(k))) {
    throw ValidationError(ErrorCode::NotOrthonormal, "face basis is not orthonormal");
  }
  const Matrix omega_f = basis * basis.adjoint() / static_cast<double>(k);
  const Matrix omega = Matrix::Identity(n, n) / static_cast<double>(n);
  return ((rho.matrix() - omega_f) * (omega - omega_f)).trace().real();
}

Matrix integrate_master_equation(const GeneratorSpec& spec, const Matrix& rho0,
                                 double t, double rel_tol, double abs_tol) {
  require_same_dim(spec.jump_operators.front(), rho0, "integrate_master_equation");
  if (t < 0.0) {
    throw ValidationError(ErrorCode::InvalidArgument, "integration time must be nonnegative");
  }
  if (t == 0.0) return rho0;

  // Dormand-Prince 5(4) on the matrix-valued right-hand side.
  auto rhs = [&](const Matrix& rho) { return apply_full_generator(spec, rho); };
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Matrix rho = rho0;
  double time = 0.0;
  double dt = t / 64.0;
  Matrix k1 = rhs(rho);
  int safety_counter = 0;
  while (time < t) {
    if (++safety_counter > 2'000'000) {
      throw NumericalError("adaptive integrator exceeded the step budget");
    }
    dt = std::min(dt, t - time);
    const Matrix k2 = rhs(rho + dt * (a21 * k1));
    const Matrix k3 = rhs(rho + dt * (a31 * k1 + a32 * k2));
    const Matrix k4 = rhs(rho + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix k5 = rhs(rho + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix k6 = rhs(rho + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix next = rho + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix k7 = rhs(next);
    const Matrix err_mat =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double tolerance = abs_tol + rel_tol * std::max(rho.norm(), next.norm());
    const double error = err_mat.norm();
    if (error <= tolerance) {
      time += dt;
      rho = next;
      k1 = k7;  // first-same-as-last
    }
    const double factor = error > 0.0 ? 0.9 * std::pow(tolerance / error, 0.2) : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
  }
  return rho;
}

}  // namespace lindblad
