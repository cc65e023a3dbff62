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

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "lindblad/evolution.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/io.hpp"
#include "lindblad/qubit.hpp"
#include "lindblad/stationary.hpp"
#include "lindblad/structure.hpp"

namespace {

using namespace lindblad;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(ErrorCode::InvalidArgument, "cannot open input file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(ErrorCode::MalformedMatrixJson,
                          std::string("JSON parse error: ") + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError(ErrorCode::InvalidArgument, "cannot open output file: " + path);
  }
  out << text;
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

struct Options {
  std::string input;
  std::string output;
  std::string entropy_output;
  double t_max = 10.0;
  int t_steps = 100;
  unsigned seed = 20260808u;
  double tol_psd = Tolerances{}.psd;
  double tol_zero = Tolerances{}.zero_eigenvalue;
  double tol_stationary = Tolerances{}.stationary;

  Tolerances tolerances() const {
    Tolerances tol;
    tol.psd = tol_psd;
    tol.zero_eigenvalue = tol_zero;
    tol.stationary = tol_stationary;
    return tol;
  }
};

Matrix read_operator(const Options& opt) {
  const Json j = read_json_file(opt.input);
  if (j.is_object() && j.contains("h")) return matrix_from_json(j["h"]);
  return matrix_from_json(j);
}

int run_evolve(const Options& opt) {
  const Json input = read_json_file(opt.input);
  if (!input.is_object() || !input.contains("rho0")) {
    throw ValidationError(ErrorCode::InvalidArgument, "evolve input needs \"rho0\"");
  }
  const GeneratorSpec spec = generator_from_json(input);
  const Tolerances tol = opt.tolerances();
  const DensityMatrix rho0(matrix_from_json(input["rho0"]), tol);
  if (rho0.dim() != spec.dim()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "state and generator dimensions differ");
  }
  const SuperoperatorMatrix L = build_superoperator(spec);
  const Trajectory traj = sample_trajectory(L, rho0, opt.t_max, opt.t_steps, tol);
  write_text_file(opt.output, trajectory_to_csv(traj));
  const std::string entropy_path =
      opt.entropy_output.empty() ? opt.output + ".entropy.csv" : opt.entropy_output;
  write_text_file(entropy_path, entropy_to_csv(traj));
  return 0;
}

int run_spectrum(const Options& opt) {
  const GeneratorSpec spec = generator_from_json(read_json_file(opt.input));
  const SpectrumReport report = generator_spectrum(build_superoperator(spec));
  write_json_file(opt.output, spectrum_to_json(report));
  return 0;
}

int run_decompose(const Options& opt) {
  const Matrix h = read_operator(opt);
  write_json_file(opt.output, decomposition_to_json(decompose(h, opt.tolerances())));
  return 0;
}

int run_stationary(const Options& opt) {
  const Matrix h = read_operator(opt);
  const StationarySet set = classify_stationary(h, opt.tolerances());
  write_json_file(opt.output, stationary_to_json(set, h));
  return 0;
}

int run_design(const Options& opt) {
  const Json j = read_json_file(opt.input);
  const Tolerances tol = opt.tolerances();
  const DensityMatrix target(
      matrix_from_json(j.is_object() && j.contains("rho") ? j["rho"] : j), tol);
  const Matrix h = design_generator(target, tol);
  write_json_file(opt.output, matrix_to_json(h));
  return 0;
}

/// Full invariant suite on one operator: residuals from the generator
/// algebra, spectral stability, stationarity, trajectory floors, and the
/// round trip through the superoperator.
int run_verify(const Options& opt) {
  const Matrix h = read_operator(opt);
  const Tolerances tol = opt.tolerances();
  const Eigen::Index n = h.rows();
  const double scale = std::max(1.0, h.squaredNorm());
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&]() {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
  };
  auto random_density = [&]() {
    Matrix g = random_matrix();
    Matrix rho = g * g.adjoint();
    return DensityMatrix(rho / rho.trace().real());
  };

  const SuperoperatorMatrix L = build_superoperator(h);
  Json checks = Json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, double residual, double bound) {
    const bool pass = residual <= bound;
    all_pass = all_pass && pass;
    checks.push_back(Json{{"name", name}, {"pass", pass}, {"residual", residual},
                          {"bound", bound}});
  };

  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Matrix rho = random_matrix();
      worst = std::max(worst, std::abs(apply_simple_generator(h, rho).trace()));
    }
    record("trace_preservation", worst / scale, 1e-12);
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Matrix rho = random_matrix();
      const Matrix lhs = apply_simple_generator(h, rho.adjoint().eval());
      const Matrix rhs = apply_simple_generator(h, rho).adjoint();
      worst = std::max(worst, (lhs - rhs).norm());
    }
    record("hermiticity_preservation", worst / scale, 1e-12);
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Matrix f = random_matrix();
      const Matrix rho = random_matrix();
      const Complex forward = (f.adjoint() * apply_simple_generator(h, rho)).trace();
      const Complex backward = (apply_dual_generator(h, f).adjoint() * rho).trace();
      worst = std::max(worst, std::abs(forward - backward));
    }
    record("hs_adjointness", worst / scale, 1e-12);
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Matrix rho = random_matrix();
      worst = std::max(worst, (L.apply(rho) - apply_simple_generator(h, rho)).norm());
    }
    record("superoperator_consistency", worst / scale, 1e-12);
  }
  {
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
      const Matrix f = random_matrix();
      const Matrix lhs = evolve_dual(L, (f.adjoint() * f).eval(), t);
      const Matrix phi_f = evolve_dual(L, f, t);
      const Matrix phi_fd = evolve_dual(L, f.adjoint().eval(), t);
      const Matrix gap = lhs - phi_fd * phi_f;
      Eigen::SelfAdjointEigenSolver<Matrix> es((gap + gap.adjoint()) / 2.0);
      worst = std::min(worst, es.eigenvalues().minCoeff());
    }
    record("kadison_inequality", -worst, 1e-10);
  }
  {
    const CpReport cp = choi_cp_check(L, 1.0);
    record("choi_psd_t1", std::max(0.0, -cp.min_choi_eigenvalue), 1e-10 * n);
  }
  {
    const SpectrumReport spec = generator_spectrum(L);
    record("spectral_stability", std::max(0.0, spec.stability_verdict.max_real_part), 1e-10);
    record("no_imaginary_axis_eigenvalues",
           spec.stability_verdict.nonzero_imaginary_axis ? 1.0 : 0.0, 0.5);
  }
  {
    const DensityMatrix rho0 = random_density();
    const DensityMatrix one = propagate(L, rho0, 0.7, tol);
    const DensityMatrix two = propagate(L, one, 0.3, tol);
    const DensityMatrix direct = propagate(L, rho0, 1.0, tol);
    record("semigroup_property", (two.matrix() - direct.matrix()).norm(), 1e-10);
  }
  {
    const StationarySet set = classify_stationary(h, tol);
    double residual = 0.0;
    if (set.interior) {
      residual = apply_simple_generator(h, set.interior->matrix()).norm();
    } else if (set.face_projector) {
      const double trace = set.face_projector->trace().real();
      residual = apply_simple_generator(h, *set.face_projector / trace).norm();
    } else if (set.commutant_eigenbasis) {
      // Any state diagonal in the eigenbasis commutes with h.
      const Eigen::Index dim = h.rows();
      Vector probs(dim);
      for (Eigen::Index i = 0; i < dim; ++i) probs(i) = Complex(i + 1, 0);
      probs /= probs.sum();
      const Matrix sigma = *set.commutant_eigenbasis * probs.asDiagonal() *
                           set.commutant_eigenbasis->adjoint();
      residual = apply_simple_generator(h, sigma).norm();
    } else if (set.decomposition) {
      // Embed every per-block stationary object and every phase-relation
      // basis element; each must be annihilated by the full generator.
      for (std::size_t j = 0; j < set.block_results.size(); ++j) {
        const Matrix& basis = set.decomposition->bases[j];
        const auto& leaf = set.block_results[j];
        Matrix embedded;
        if (leaf.interior) {
          embedded = basis * leaf.interior->matrix() * basis.adjoint();
        } else {
          embedded = basis * (*leaf.face_projector / leaf.face_projector->trace().real()) *
                     basis.adjoint();
        }
        residual = std::max(residual, apply_simple_generator(h, embedded).norm());
      }
      for (const auto& rel : set.phase_relations) {
        for (const auto& q : rel.basis) {
          const Matrix embedded = set.decomposition->bases[rel.block_j] * q *
                                  set.decomposition->bases[rel.block_l].adjoint();
          residual = std::max(residual, apply_simple_generator(h, embedded).norm());
        }
      }
    }
    record("stationary_residual", residual / scale, opt.tol_stationary);

    Eigen::JacobiSVD<Matrix> svd(L.entries());
    int kernel_dim = 0;
    const double cutoff = 1e-8 * std::max(1.0, svd.singularValues()(0));
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) <= cutoff) ++kernel_dim;
    record("kernel_dimension_match",
           std::abs(kernel_dim - set.stationary_dimension), 0.5);
  }
  {
    const Trajectory traj =
        sample_trajectory(L, random_density(), 2.0 / scale * 4.0, 24, tol);
    const TrajectoryCheckReport report = trajectory_checks(h, traj, tol);
    record("eigenvalue_floor", report.floor_ok ? 0.0 : 1.0, 0.5);
    record("rank_monotonicity", report.rank_nondecreasing ? 0.0 : 1.0, 0.5);
  }
  {
    // For a normal operator the attribution is ambiguous beyond a phase, so
    // compare the generators; otherwise compare the operators up to phase.
    double residual = 1.0;
    double residual_scale = std::max(1.0, h.norm());
    try {
      const RecoveredOperator rec = recover_h(L, tol);
      if (rec.unique_up_to_phase) {
        const Complex inner = (rec.h.adjoint() * h).trace();
        const Complex phase =
            std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1, 0);
        residual = (phase * rec.h - h).norm();
      } else {
        residual = (build_superoperator(rec.h).entries() - L.entries()).norm();
        residual_scale = std::max(1.0, L.entries().norm());
      }
    } catch (const ValidationError&) {
      residual = 1.0;
    }
    record("recover_round_trip", residual / residual_scale, 1e-7);
  }

  const Json out{{"all_pass", all_pass}, {"checks", std::move(checks)}};
  write_json_file(opt.output, out);
  std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum dynamical semigroups with simple GKS-Lindblad generators"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_output) {
    cmd->add_option("--input", opt.input, "input JSON path")->required();
    auto* o = cmd->add_option("--output", opt.output, "output path");
    if (needs_output) o->required();
    cmd->add_option("--tol-psd", opt.tol_psd, "positive semidefiniteness tolerance");
    cmd->add_option("--tol-zero", opt.tol_zero, "zero-eigenvalue threshold");
    cmd->add_option("--tol-stationary", opt.tol_stationary, "stationarity residual tolerance");
    cmd->add_option("--seed", opt.seed, "random seed for sampled checks");
  };

  auto* evolve = app.add_subcommand("evolve", "propagate a state; writes trajectory and entropy CSV");
  add_common(evolve, true);
  evolve->add_option("--t-max", opt.t_max, "final time")->check(CLI::PositiveNumber);
  evolve->add_option("--t-steps", opt.t_steps, "number of grid intervals")
      ->check(CLI::PositiveNumber);
  evolve->add_option("--entropy-output", opt.entropy_output,
                     "entropy CSV path (default: <output>.entropy.csv)");

  auto* spectrum = app.add_subcommand("spectrum", "generator spectrum report with stability verdict");
  add_common(spectrum, true);
  auto* decomp = app.add_subcommand("decompose", "split into indecomposable parts");
  add_common(decomp, true);
  auto* stationary = app.add_subcommand("stationary", "classify the stationary set");
  add_common(stationary, true);
  auto* design = app.add_subcommand("design", "build a generator targeting a given state");
  add_common(design, true);
  auto* verify = app.add_subcommand("verify", "run the invariant suite on an operator");
  add_common(verify, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) return run_evolve(opt);
    if (spectrum->parsed()) return run_spectrum(opt);
    if (decomp->parsed()) return run_decompose(opt);
    if (stationary->parsed()) return run_stationary(opt);
    if (design->parsed()) return run_design(opt);
    if (verify->parsed()) return run_verify(opt);
  } catch (const lindblad::ValidationError& e) {
    const Json error{{"error", {{"code", lindblad::error_code_name(e.code())},
                                {"message", e.what()}}}};
    std::cout << error.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    const Json error{{"error", {{"code", "NumericalFailure"}, {"message", e.what()}}}};
    std::cout << error.dump(2) << "\n";
    return 2;
  }
  return 0;
}
