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

#include "lindblad/types.hpp"

namespace lindblad {

/// D_h(rho) = h rho h^dag - 1/2 (h^dag h rho + rho h^dag h).
Matrix apply_simple_generator(const Matrix& h, const Matrix& rho);

/// Heisenberg-picture dual: D^dag_h(f) = h^dag f h - 1/2 (h^dag h f + f h^dag h).
Matrix apply_dual_generator(const Matrix& h, const Matrix& f);

/// Full generator: -i[H, rho] + sum_alpha D_{h_alpha}(rho).
Matrix apply_full_generator(const GeneratorSpec& spec, const Matrix& rho);

/// Superoperator matrix of the full generator under row-major vectorization.
SuperoperatorMatrix build_superoperator(const GeneratorSpec& spec);
SuperoperatorMatrix build_superoperator(const Matrix& h);

/// Superoperator of rho -> -i[H, rho].
Matrix commutator_superoperator(const Matrix& hamiltonian);

struct CpReport {
  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
};

/// Choi matrix of the map exp(t L); entries C[(i,k),(j,l)] = Phi(E_ij)[k,l].
Matrix choi_matrix(const SuperoperatorMatrix& L, double t);

/// Complete positivity of exp(t L) via the minimal Choi eigenvalue.
/// is_cp iff min eigenvalue >= -1e-10 * n. Negative t probes the extended
/// group, where positivity may fail.
CpReport choi_cp_check(const SuperoperatorMatrix& L, double t);

struct RecoveredOperator {
  Matrix h;
  bool unique_up_to_phase = false;
  double residual = 0.0;
};

/// Inverts L = L_{D_k} for a single jump operator k. The phase is fixed by
/// making the largest-magnitude entry of k real positive. The attribution is
/// unique up to that phase unless k is normal. Throws ValidationFailure when
/// no simple generator reproduces L to tolerance.
RecoveredOperator recover_h(const SuperoperatorMatrix& L,
                            const Tolerances& tol = Tolerances{});

struct UnitaryLimitReport {
  double distance = 0.0;  // ||L_{h(lambda)} - L_{-i[H,.]}||_F
  double expected = 0.0;  // lambda^2 ||L_{D_H}||_F
};

/// Probes the unitary limit h(lambda) = lambda^-1 1 - i lambda H, for which
/// D_{h(lambda)} = -i[H,.] + lambda^2 D_H holds exactly.
UnitaryLimitReport unitary_limit_check(const Matrix& hamiltonian, double lambda);

/// Reshuffle R[(a,c),(b,d)] = L[(a,b),(c,d)]; maps sum A (x) conj(B) forms
/// to sum vec(A) vec(B)^dag.
Matrix reshuffle(const Matrix& superop, Eigen::Index n);

}  // namespace lindblad
