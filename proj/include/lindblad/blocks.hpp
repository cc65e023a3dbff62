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

#include <optional>
#include <vector>

#include "lindblad/types.hpp"

namespace lindblad {

/// Two-way orthogonal splitting of the space: blocks A, B, C, D of h and
/// R, Q, M, S of a general matrix sigma (M = Q^dag when sigma is Hermitian).
struct BlockSplit {
  Matrix a, b, c, d;  // h = [[A, B], [C, D]]
  Matrix r, q, m, s;  // sigma = [[R, Q], [M, S]]

  static BlockSplit from_matrices(const Matrix& h, const Matrix& sigma,
                                  Eigen::Index upper_dim);
  Matrix assemble_h() const;
  Matrix assemble_sigma() const;
};

struct BlockDerivatives {
  Matrix rdot, qdot, mdot, sdot;
  Matrix assemble() const;
};

/// Blockwise derivatives of sigma under D_h. Two regimes are covered: the
/// Schur-triangulated case C = 0 (general sigma), and the boundary case
/// Q = M = S = 0 (general C) where Sdot = C R C^dag. Anything else throws.
BlockDerivatives block_derivatives(const BlockSplit& split);

enum class DephasingMode {
  ScalarPair,       // both parts one-dimensional: exponential decay
  KernelAligned,    // Q D^dag = 0: decay with rates -a_alpha / 2
  EigenvectorLock,  // scalar d, (A - d) Q = 0: flat to second order, then down
};

struct DephasingComponent {
  double gram_eigenvalue = 0.0;  // a_alpha of A^dag A
  double rate = 0.0;             // -a_alpha / 2
  Matrix component;              // Pi_alpha Q
};

struct DephasingReport {
  DephasingMode mode;
  // ScalarPair
  Complex complex_rate{0.0, 0.0};   // a d^* - (|a|^2 + |d|^2)/2
  double modulus_decay_rate = 0.0;  // |a - d|^2 / 2
  // KernelAligned
  std::vector<DephasingComponent> expansion;
  // EigenvectorLock
  double third_derivative = 0.0;        // exact d^3/dt^3 ||Q||^2 at t = 0
  double third_derivative_bound = 0.0;  // -8 ||Qdot||^4 / (|d|^2 ||Q||^2)
};

/// Closed-form dephasing analysis for the three covered regimes of the
/// off-diagonal block Q between indecomposable parts h_j, h_l. Inputs
/// outside these regimes are rejected as Unsupported; no general monotone
/// decay of phase relations exists.
DephasingReport dephasing_analysis(const Matrix& h_j, const Matrix& h_l,
                                   const Matrix& q0,
                                   const Tolerances& tol = Tolerances{});

}  // namespace lindblad
