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

/// Orthonormal basis (as matrices) of the joint commutant {X : [X,g]=0 for
/// all g in ops}. For ops = {h, h^dag} this is a *-algebra.
std::vector<Matrix> commutant_basis(const std::vector<Matrix>& ops,
                                    double threshold = 1e-10);
int commutant_dimension(const Matrix& h, double threshold = 1e-10);

struct EquivalenceClasses {
  std::vector<int> class_of;           // block index -> class id (0-based)
  std::vector<Matrix> witness_to_rep;  // unitary U with block = U rep U^dag
  int class_count = 0;

  /// Witness for two blocks of the same class: U h_l U^dag = h_j.
  Matrix witness(int j, int l) const {
    return witness_to_rep[j] * witness_to_rep[l].adjoint();
  }
};

/// Groups square blocks by unitary equivalence, h_j = U h_l U^dag, with
/// certifying witnesses. Cheap unitary invariants reject first; a joint
/// intertwiner solve with polar correction certifies.
EquivalenceClasses equivalence_classes(const std::vector<Matrix>& blocks,
                                       const Tolerances& tol = Tolerances{});

/// Splitting h = (+)_j h_j over mutually orthogonal enclosure subspaces,
/// with each part indecomposable and equivalent parts grouped.
struct Decomposition {
  std::vector<Matrix> projectors;  // P_j on the full space
  std::vector<Matrix> bases;       // n x d_j isometries V_j, P_j = V_j V_j^dag
  std::vector<Matrix> blocks;      // h_j = V_j^dag h V_j
  EquivalenceClasses classes;
  double threshold = 0.0;  // null-space threshold used for the commutant

  std::size_t size() const { return blocks.size(); }
};

/// Maximal splitting via spectral projectors of random Hermitian commutant
/// elements, refined recursively until every block has trivial commutant.
Decomposition decompose(const Matrix& h, const Tolerances& tol = Tolerances{},
                        unsigned seed = 0x5eed51u);

enum class SchurOrder { AsComputed, ZerosFirst };

struct SchurResult {
  Matrix unitary;     // U
  Matrix triangular;  // T, h = U T U^dag
};

/// Unitary Schur triangulation; with SchurOrder::ZerosFirst the numerically
/// zero eigenvalues are swapped to the leading diagonal positions.
SchurResult schur_triangulate(const Matrix& h,
                              SchurOrder order = SchurOrder::AsComputed,
                              const Tolerances& tol = Tolerances{});

/// True iff range(P) is invariant under h: ||hP - PhP|| <= tol.lazy * ||h||.
bool is_lazy_subspace(const Matrix& h, const Matrix& projector,
                      const Tolerances& tol = Tolerances{});

struct JordanChain {
  Complex eigenvalue;
  std::vector<Vector> vectors;  // psi_0 proper, (h - lambda) psi_m = psi_{m-1}
};

struct JordanStructure {
  std::vector<JordanChain> chains;

  /// Geometric multiplicity of the eigenvalue cluster containing lambda.
  int geometric_multiplicity(Complex lambda, double match_tol) const;
};

JordanStructure jordan_structure(const Matrix& h,
                                 const Tolerances& tol = Tolerances{});

/// Projectors onto every subspace spanned by chain prefixes (closed under
/// the chain rule), enumerated over all prefix combinations.
std::vector<Matrix> canonical_lazy_subspaces(const Matrix& h,
                                             const Tolerances& tol = Tolerances{});

/// Eigenvalues of h from its Schur form.
std::vector<Complex> matrix_eigenvalues(const Matrix& h);

/// |lambda| <= tol.zero_eigenvalue * max(1, ||h||) for some eigenvalue.
bool has_zero_eigenvalue(const Matrix& h, const Tolerances& tol = Tolerances{});

/// Orthonormal basis of ker(h) (proper zero-eigenvectors) via SVD.
std::vector<Vector> kernel_basis(const Matrix& h,
                                 const Tolerances& tol = Tolerances{});

}  // namespace lindblad
