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

#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;

  Trajectory(std::vector<double> t, std::vector<DensityMatrix> s);
};

/// rho(t) = unvec(exp(t L) vec(rho0)). Rejects t < 0: the extended group
/// exists on the HS space but does not preserve positivity backwards.
DensityMatrix propagate(const SuperoperatorMatrix& L, const DensityMatrix& rho0,
                        double t, const Tolerances& tol = Tolerances{});

/// Group action on arbitrary matrices, any finite t. No state validation.
Matrix evolve_matrix(const SuperoperatorMatrix& L, const Matrix& sigma, double t);

/// Heisenberg-picture evolution of an observable, Phi_t(F) with Phi_t
/// generated by the adjoint superoperator L^dag.
Matrix evolve_dual(const SuperoperatorMatrix& L, const Matrix& f, double t);

/// Equidistant sampling of the evolution on [0, t_max] with `steps` intervals.
Trajectory sample_trajectory(const SuperoperatorMatrix& L, const DensityMatrix& rho0,
                             double t_max, int steps,
                             const Tolerances& tol = Tolerances{});

struct StabilityVerdict {
  double max_real_part = 0.0;
  bool nonzero_imaginary_axis = false;
};

struct SpectrumReport {
  std::vector<Complex> eigenvalues;          // n^2 of them
  std::vector<Matrix> proper_eigenmatrices;  // unit HS norm
  std::vector<bool> generalized_flags;       // eigenvalue sits in a defective cluster
  StabilityVerdict stability_verdict;
};

/// Full spectrum of the superoperator with defectiveness flags per
/// eigenvalue cluster and the stability verdict.
SpectrumReport generator_spectrum(const SuperoperatorMatrix& L,
                                  const Tolerances& tol = Tolerances{});

struct TrajectoryCheckReport {
  bool floor_ok = false;
  bool rank_nondecreasing = false;
  double min_margin = 0.0;
};

/// Eigenvalue floor r_j(t) >= exp(-||h||_op^2 t) r_j(0) - 1e-10 along tracked
/// branches, and monotonicity of the numerical rank (threshold 1e-10 * trace).
/// Branches are matched between grid points by maximal eigenvector overlap.
TrajectoryCheckReport trajectory_checks(const Matrix& h, const Trajectory& traj,
                                        const Tolerances& tol = Tolerances{});

/// Central finite-difference estimates of d^k e / dt^k at t = 0 for the
/// smallest eigenvalue branch emerging from the kernel of rho0, k = 1..order,
/// Richardson-extrapolated over step sizes {1e-2, 5e-3, 2.5e-3}.
std::vector<double> emerging_eigenvalue_derivatives(const Matrix& h,
                                                    const DensityMatrix& rho0,
                                                    int max_order,
                                                    const Tolerances& tol = Tolerances{});

struct EntropyPoint {
  double von_neumann = 0.0;  // -Tr rho ln rho
  double fermi = 0.0;        // Tr rho (1 - rho)
};

std::vector<EntropyPoint> entropy_track(const Trajectory& traj);

/// Projection coordinate Tr[(rho - omega_f)(omega - omega_f)] of rho along
/// the line from the face midpoint omega_f to the maximally mixed state.
double face_coordinate(const DensityMatrix& rho, const std::vector<Vector>& face_basis,
                       const Tolerances& tol = Tolerances{});

/// Adaptive RK45 integration of d rho / dt = D(rho); an independent
/// cross-check of the matrix-exponential propagator and the vectorization.
Matrix integrate_master_equation(const GeneratorSpec& spec, const Matrix& rho0,
                                 double t, double rel_tol = 1e-10,
                                 double abs_tol = 1e-12);

}  // namespace lindblad
