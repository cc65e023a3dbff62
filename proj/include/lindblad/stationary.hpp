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

#include "lindblad/structure.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

enum class StationaryCase {
  UniqueInterior,   // dissipation: one full-rank stationary state
  AttractiveFace,   // decay: the proper zero-eigenspace face attracts
  Commutant,        // elementary dephasing: everything commuting with h
  Composite,        // stationary splitting plus phase relations
};

const char* stationary_case_name(StationaryCase c);

struct BlockStationary {
  StationaryCase kind;  // UniqueInterior or AttractiveFace
  std::optional<DensityMatrix> interior;  // in the block basis
  std::optional<Matrix> face_projector;   // in the block basis
  int dimension = 0;  // complex dimension contributed to ker L
};

struct PhaseRelationBasis {
  int block_j = 0;
  int block_l = 0;
  std::vector<Matrix> basis;  // invariant off-diagonal blocks, d_j x d_l
};

struct StationarySet {
  StationaryCase kind;
  // UniqueInterior
  std::optional<DensityMatrix> interior;
  // AttractiveFace
  std::optional<Matrix> face_projector;
  // Commutant: unitary eigenbasis columns and eigenvalue cluster sizes
  std::optional<Matrix> commutant_eigenbasis;
  std::vector<int> commutant_degeneracies;
  // Composite
  std::optional<Decomposition> decomposition;
  std::vector<BlockStationary> block_results;
  std::vector<PhaseRelationBasis> phase_relations;  // pairs j < l

  /// Complex dimension of the stationary set = dim ker L, counting both
  /// orientations of each phase-relation block.
  int stationary_dimension = 0;
};

/// Complete classification of the stationary states of D_h.
StationarySet classify_stationary(const Matrix& h, const Tolerances& tol = Tolerances{});

/// rho_inf = (h^dag h)^-1 / Tr[(h^dag h)^-1] for indecomposable h without
/// zero eigenvalues.
DensityMatrix interior_stationary(const Matrix& h, const Tolerances& tol = Tolerances{});

/// Projector onto the span of proper zero-eigenvectors of an indecomposable
/// h with zero eigenvalue; every state supported there is stationary and the
/// face attracts all trajectories.
Matrix attractive_face(const Matrix& h, const Tolerances& tol = Tolerances{});

/// Basis of invariant off-diagonal blocks between two indecomposable parts:
/// ket-bras of proper zero-eigenvectors when both have kernels, the
/// one-dimensional span of rho_j U when unitarily equivalent without
/// kernels, empty otherwise.
std::vector<Matrix> phase_relation_invariants(const Matrix& h_j, const Matrix& h_l,
                                              const Tolerances& tol = Tolerances{});

/// Builds a simple generator with the prescribed unique stationary state:
/// a nilpotent shift out of the target vector for pure targets, U |h| with
/// |h| = rho^{-1/2} and a cyclic shift U for full-rank targets. Rejects the
/// maximally mixed state and rank-deficient mixed targets.
Matrix design_generator(const DensityMatrix& rho_target,
                        const Tolerances& tol = Tolerances{});

}  // namespace lindblad
