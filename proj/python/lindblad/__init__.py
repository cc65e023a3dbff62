# Copyright 2026 The lindblad authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum dynamical semigroups with simple GKS-Lindblad generators.

Dense numerical toolkit for generators of the form
D_h(rho) = h rho h^dag - (h^dag h rho + rho h^dag h)/2: superoperator
construction, time evolution, spectral analysis, structural decomposition,
stationary-state classification, and inverse design of a generator for a
prescribed stationary state.
"""

from lindblad._core import (  # noqa: F401
    ValidationError,
    NumericalError,
    apply_simple_generator,
    apply_dual_generator,
    apply_full_generator,
    build_superoperator,
    build_full_superoperator,
    choi_cp_check,
    recover_h,
    unitary_limit_check,
    propagate,
    generator_spectrum,
    emerging_eigenvalue_derivatives,
    entropy,
    face_coordinate,
    decompose,
    schur_triangulate,
    is_lazy_subspace,
    canonical_lazy_subspaces,
    classify_stationary,
    interior_stationary,
    attractive_face,
    design_generator,
    block_derivatives,
    qubit_stationary,
    qubit_spectrum,
    __version__,
)

__all__ = [
    "ValidationError",
    "NumericalError",
    "apply_simple_generator",
    "apply_dual_generator",
    "apply_full_generator",
    "build_superoperator",
    "build_full_superoperator",
    "choi_cp_check",
    "recover_h",
    "unitary_limit_check",
    "propagate",
    "generator_spectrum",
    "emerging_eigenvalue_derivatives",
    "entropy",
    "face_coordinate",
    "decompose",
    "schur_triangulate",
    "is_lazy_subspace",
    "canonical_lazy_subspaces",
    "classify_stationary",
    "interior_stationary",
    "attractive_face",
    "design_generator",
    "block_derivatives",
    "qubit_stationary",
    "qubit_spectrum",
    "__version__",
]
