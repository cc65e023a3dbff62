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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lindblad/blocks.hpp"
#include "lindblad/evolution.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/qubit.hpp"
#include "lindblad/stationary.hpp"
#include "lindblad/structure.hpp"

#include "../support.hpp"

using namespace lindblad;
using namespace lindblad::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" (exception: ") + e.what() + ")";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %02d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds, note.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double superoperator_gap(const SuperoperatorMatrix& L) {
  double gap = 1e300;
  const double zero_cut = 1e-10 * std::max(1.0, L.entries().norm());
  for (const auto& lambda : matrix_eigenvalues(L.entries())) {
    if (std::abs(lambda) > zero_cut) gap = std::min(gap, -lambda.real());
  }
  return gap;
}

}  // namespace

int main() {
  // 1. Qubit stationary state from both routes with a tight residual.
  criterion(1, "qubit stationary state h=[[1,1],[0,1]]", [] {
    const Matrix h = mat2(1, 1, 0, 1);
    Matrix expected(2, 2);
    expected << 2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0;
    const DensityMatrix via_formula = interior_stationary(h);
    const DensityMatrix via_oracle = qubit_stationary({1, 1, 1});
    const double residual = apply_simple_generator(h, via_formula.matrix()).norm();
    return (via_formula.matrix() - expected).norm() < 1e-12 &&
           (via_oracle.matrix() - expected).norm() < 1e-12 && residual <= 1e-10;
  });

  // 2. Qubit generator spectrum in the a=0 closed-form case.
  criterion(2, "qubit spectrum a=0,b=1,d=2 equals {0,-1,-2.5,-2.5}", [] {
    const auto eigs = generator_spectrum(build_superoperator(mat2(0, 1, 0, 2))).eigenvalues;
    return multiset_distance(eigs, {Complex(0, 0), Complex(-1, 0), Complex(-2.5, 0),
                                    Complex(-2.5, 0)}) <= 1e-10;
  });

  // 3. Emerging-eigenvalue derivatives from the lazy state diag(1,0).
  criterion(3, "emerging eigenvalue derivatives (1/2 third, 7/8 fourth)", [] {
    const DensityMatrix lazy(mat2(1, 0, 0, 0));
    const auto d3 = emerging_eigenvalue_derivatives(mat2(1, 1, 0, 0), lazy, 3);
    const bool third_ok = std::abs(d3[0]) <= 1e-4 && std::abs(d3[1]) <= 1e-4 &&
                          std::abs(d3[2] - 0.5) <= 1e-4;
    const auto d4 = emerging_eigenvalue_derivatives(mat2(1, 1, 0, 1), lazy, 4);
    const bool fourth_ok = std::abs(d4[3] - 7.0 / 8.0) <= 1e-3;
    if (!fourth_ok) {
      std::printf(
          "       note: measured fourth derivative is %.3e, not 7/8; exact\n"
          "       series of the emerging branch for equal diagonal entries is\n"
          "       e(t) = |a|^4 |b|^6 t^5 / 80, so the fourth derivative vanishes\n",
          d4[3]);
    }
    return third_ok && fourth_ok;
  });

  // 4. Stationarity and attraction over a random invertible ensemble.
  criterion(4, "100 random interior states are stationary attractors", [] {
    auto rng = make_rng(1004);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 4);
      const Matrix h = random_indecomposable(rng, n, /*require_invertible=*/true);
      const DensityMatrix rho_inf = interior_stationary(h);
      if (apply_simple_generator(h, rho_inf.matrix()).norm() > 1e-10) return false;
      const SuperoperatorMatrix L = build_superoperator(h);
      const double gap = superoperator_gap(L);
      const DensityMatrix settled =
          propagate(L, DensityMatrix::maximally_mixed(n), 50.0 / gap);
      if ((settled.matrix() - rho_inf.matrix()).norm() > 1e-8) return false;
    }
    return true;
  });

  // 5. Spectral stability over random simple and composite generators.
  criterion(5, "no unstable or rotating eigenvalues over 200 generators", [] {
    auto rng = make_rng(1005);
    std::vector<Matrix> ensemble;
    for (int k = 0; k < 100; ++k) {
      ensemble.push_back(random_matrix(rng, 2 + (k % 4)));
    }
    for (int k = 0; k < 100; ++k) {
      // Hidden block structure, occasionally singular or duplicated blocks.
      std::vector<Matrix> blocks;
      blocks.push_back(random_matrix(rng, 1 + (k % 3)));
      if (k % 3 == 0) {
        Matrix singular = random_matrix(rng, 2);
        Eigen::ComplexEigenSolver<Matrix> es(singular);
        singular -= es.eigenvalues()(0) * Matrix::Identity(2, 2);
        blocks.push_back(singular);
      } else if (k % 3 == 1) {
        blocks.push_back(blocks.front());
      } else {
        blocks.push_back(random_matrix(rng, 2));
      }
      const Eigen::Index n = blocks[0].rows() + blocks[1].rows();
      const Matrix u = random_unitary(rng, n);
      ensemble.push_back(u * block_diag(blocks) * u.adjoint());
    }
    for (const auto& h : ensemble) {
      const SpectrumReport report = generator_spectrum(build_superoperator(h));
      if (report.stability_verdict.max_real_part > 1e-10) return false;
      if (report.stability_verdict.nonzero_imaginary_axis) return false;
    }
    return true;
  });

  // 6. Eigenvalue floor and rank monotonicity along random trajectories.
  criterion(6, "eigenvalue floors and rank monotonicity on 50 trajectories", [] {
    auto rng = make_rng(1006);
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 3);
      const Matrix h = random_matrix(rng, n);
      const Eigen::Index rank = 1 + static_cast<Eigen::Index>(k % n);
      const DensityMatrix rho0(random_boundary_density(rng, n, rank));
      const Trajectory traj =
          sample_trajectory(build_superoperator(h), rho0, 3.0 / std::max(1.0, h.squaredNorm()) * 3.0, 25);
      const TrajectoryCheckReport report = trajectory_checks(h, traj);
      if (!report.floor_ok || !report.rank_nondecreasing) return false;
    }
    return true;
  });

  // 7. Blockwise derivative formulas against the direct generator.
  criterion(7, "block derivative formulas match on 150 random splittings", [] {
    auto rng = make_rng(1007);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 4);
      const Eigen::Index cut = 1 + static_cast<Eigen::Index>(k % (n - 1));
      Matrix h = random_matrix(rng, n, 1.0 / std::sqrt(double(n)));
      h.bottomLeftCorner(n - cut, cut).setZero();
      const Matrix sigma = random_matrix(rng, n, 1.0 / std::sqrt(double(n)));
      const BlockDerivatives d =
          block_derivatives(BlockSplit::from_matrices(h, sigma, cut));
      if ((d.assemble() - apply_simple_generator(h, sigma)).norm() > 1e-12) return false;
    }
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index n = 3 + static_cast<Eigen::Index>(k % 3);
      const Eigen::Index cut = 1 + static_cast<Eigen::Index>(k % (n - 1));
      const Matrix h = random_matrix(rng, n, 1.0 / std::sqrt(double(n)));
      Matrix sigma = Matrix::Zero(n, n);
      const Matrix g = random_matrix(rng, cut, 1.0 / std::sqrt(double(cut)));
      sigma.topLeftCorner(cut, cut) = g * g.adjoint();
      sigma /= sigma.trace().real();
      const BlockSplit split = BlockSplit::from_matrices(h, sigma, cut);
      const BlockDerivatives d = block_derivatives(split);
      if ((d.assemble() - apply_simple_generator(h, sigma)).norm() > 1e-12) return false;
      if ((d.sdot - split.c * split.r * split.c.adjoint()).norm() > 1e-12) return false;
    }
    return true;
  });

  // 8. Kadison inequality and Choi positivity.
  criterion(8, "Kadison inequality holds; Choi PSD forward, indefinite backward", [] {
    auto rng = make_rng(1008);
    const double times[3] = {0.1, 1.0, 10.0};
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 3);
      const Matrix h = random_matrix(rng, n, 1.0 / std::sqrt(double(n)));
      const SuperoperatorMatrix L = build_superoperator(h);
      const Matrix f = random_matrix(rng, n);
      const double t = times[k % 3];
      const Matrix lhs = evolve_dual(L, (f.adjoint() * f).eval(), t);
      const Matrix phi_f = evolve_dual(L, f, t);
      const Matrix phi_fd = evolve_dual(L, f.adjoint().eval(), t);
      const Matrix gap = lhs - phi_fd * phi_f;
      Eigen::SelfAdjointEigenSolver<Matrix> es((gap + gap.adjoint()) / 2.0);
      if (es.eigenvalues().minCoeff() < -1e-10) return false;
      if (!choi_cp_check(L, 1.0).is_cp) return false;
    }
    return choi_cp_check(build_superoperator(mat2(0, 1, 0, 0)), -1.0).is_cp == false;
  });

  // 9. Decomposition recovery of hidden block structure.
  criterion(9, "decomposition recovers hidden blocks, classes, and reassembles", [] {
    auto rng = make_rng(1009);
    for (int k = 0; k < 40; ++k) {
      const int copies = 1 + (k % 3);  // 1..3 blocks
      std::vector<Matrix> blocks;
      std::vector<int> expected_class;
      int next_class = 0;
      for (int b = 0; b < copies; ++b) {
        if (b > 0 && k % 4 == 0) {
          blocks.push_back(blocks[0]);  // equivalent duplicate
          expected_class.push_back(0);
        } else {
          const Eigen::Index nb = 1 + static_cast<Eigen::Index>((k + b) % 3);
          blocks.push_back(random_indecomposable(rng, nb));
          expected_class.push_back(next_class++);
        }
      }
      Eigen::Index n = 0;
      for (const auto& b : blocks) n += b.rows();
      if (n > 8) continue;
      const Matrix u = random_unitary(rng, n);
      const Matrix h = u * block_diag(blocks) * u.adjoint();
      const Decomposition d = decompose(h);
      if (d.size() != blocks.size()) return false;
      // Dimensions as multisets.
      std::vector<Eigen::Index> want, got;
      for (const auto& b : blocks) want.push_back(b.rows());
      for (const auto& b : d.blocks) got.push_back(b.rows());
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) return false;
      // Class count matches the construction.
      int expected_classes = 0;
      for (const int c : expected_class) expected_classes = std::max(expected_classes, c + 1);
      if (d.classes.class_count != expected_classes) return false;
      // Reassembly.
      Matrix reassembled = Matrix::Zero(n, n);
      for (const auto& p : d.projectors) reassembled += p * h * p;
      if ((reassembled - h).norm() > 1e-12 * std::max(1.0, h.norm())) return false;
    }
    return true;
  });

  // 10. Design round trip for pure and full-rank targets.
  criterion(10, "designed generators reproduce their targets exactly", [] {
    auto rng = make_rng(1010);
    for (int k = 0; k < 20; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 4);
      Vector psi(n);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (Eigen::Index i = 0; i < n; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
      const DensityMatrix target = DensityMatrix::pure(psi);
      const Matrix h = design_generator(target);
      const StationarySet set = classify_stationary(h);
      if (set.kind != StationaryCase::AttractiveFace) return false;
      if ((*set.face_projector - target.matrix()).norm() > 1e-10) return false;
    }
    for (int k = 0; k < 20; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 4);
      const Matrix rho = random_density(rng, n);
      const Matrix h = design_generator(DensityMatrix(rho));
      const StationarySet set = classify_stationary(h);
      if (set.kind != StationaryCase::UniqueInterior) return false;
      if ((set.interior->matrix() - rho).norm() > 1e-10) return false;
    }
    try {
      design_generator(DensityMatrix::maximally_mixed(3));
      return false;
    } catch (const ValidationError&) {
      return true;
    }
  });

  // 11. Jump-operator recovery up to phase, with the ambiguity flag.
  criterion(11, "recover_h round trip on 50 non-normal operators", [] {
    auto rng = make_rng(1011);
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k % 3);
      const Matrix h = random_non_normal(rng, n);
      const RecoveredOperator rec = recover_h(build_superoperator(h));
      if (phase_distance(rec.h, h) > 1e-8 * std::max(1.0, h.norm())) return false;
      if (!rec.unique_up_to_phase) return false;
    }
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 1.0;
    diag(1, 1) = -1.0;
    return recover_h(build_superoperator(diag)).unique_up_to_phase == false;
  });

  // 12. Dephasing rates in the three covered regimes.
  criterion(12, "dephasing rates match the propagator in all covered cases", [] {
    auto rng = make_rng(1012);
    // (a) scalar pair: complex rate against the propagated off-diagonal.
    for (int k = 0; k < 20; ++k) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      const Complex a(gauss(rng), gauss(rng));
      const Complex d(gauss(rng), gauss(rng));
      Matrix h = Matrix::Zero(2, 2);
      h(0, 0) = a;
      h(1, 1) = d;
      Matrix q0(1, 1);
      q0 << Complex(0.25, -0.15);
      const DephasingReport report =
          dephasing_analysis((Matrix(1, 1) << a).finished(),
                             (Matrix(1, 1) << d).finished(), q0);
      Matrix rho0(2, 2);
      rho0 << 0.5, q0(0, 0), std::conj(q0(0, 0)), 0.5;
      const double t = 0.8;
      const Matrix rho_t = evolve_matrix(build_superoperator(h), rho0, t);
      const Complex expected = q0(0, 0) * std::exp(report.complex_rate * t);
      if (std::abs(rho_t(0, 1) - expected) > 1e-10) return false;
      const double modulus = std::abs(q0(0, 0)) * std::exp(-report.modulus_decay_rate * t);
      if (std::abs(std::abs(rho_t(0, 1)) - modulus) > 1e-10) return false;
    }
    // (b) kernel-aligned expansion rates -a_alpha/2.
    {
      Matrix a(2, 2);
      a << 0, 1, 2, 0;
      Matrix q0(2, 1);
      q0 << 1.0, -0.5;
      const DephasingReport report =
          dephasing_analysis(a, Matrix::Zero(1, 1), q0);
      if (report.expansion.size() != 2) return false;
      std::vector<double> rates;
      for (const auto& part : report.expansion) rates.push_back(part.rate);
      std::sort(rates.begin(), rates.end());
      if (std::abs(rates[0] + 2.0) > 1e-12 || std::abs(rates[1] + 0.5) > 1e-12) return false;
      const Matrix h = block_diag({a, Matrix::Zero(1, 1)});
      Matrix sigma0 = Matrix::Zero(3, 3);
      sigma0.topRightCorner(2, 1) = q0;
      const double t = 1.1;
      const Matrix sigma_t = evolve_matrix(build_superoperator(h), sigma0, t);
      Matrix predicted = Matrix::Zero(2, 1);
      for (const auto& part : report.expansion)
        predicted += std::exp(part.rate * t) * part.component;
      if ((sigma_t.topRightCorner(2, 1) - predicted).norm() > 1e-10) return false;
    }
    // (c) eigenvector-locked third derivative: certified sign and magnitude.
    {
      Matrix a(2, 2);
      a << 1, 1, 0, 2;
      Matrix q0(2, 1);
      q0 << 1.0, 0.0;
      const DephasingReport report =
          dephasing_analysis(a, (Matrix(1, 1) << 1).finished(), q0);
      if (!(report.third_derivative < 0.0)) return false;
      if (!(report.third_derivative <= report.third_derivative_bound + 1e-12)) return false;
      const Matrix h = block_diag({a, (Matrix(1, 1) << 1).finished()});
      const SuperoperatorMatrix L = build_superoperator(h);
      Matrix sigma0 = Matrix::Zero(3, 3);
      sigma0.topRightCorner(2, 1) = q0;
      auto norm2_at = [&](double t) {
        return evolve_matrix(L, sigma0, t).topRightCorner(2, 1).squaredNorm();
      };
      auto third = [&](double dt) {
        return (norm2_at(2 * dt) - 2 * norm2_at(dt) + 2 * norm2_at(-dt) -
                norm2_at(-2 * dt)) /
               (2 * dt * dt * dt);
      };
      const double estimate = (4 * third(5e-3) - third(1e-2)) / 3.0;
      if (std::abs(estimate - report.third_derivative) > 1e-4) return false;
    }
    return true;
  });

  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
