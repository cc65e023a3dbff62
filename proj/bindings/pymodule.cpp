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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lindblad/blocks.hpp"
#include "lindblad/evolution.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/qubit.hpp"
#include "lindblad/stationary.hpp"
#include "lindblad/structure.hpp"

namespace py = pybind11;
using namespace lindblad;

namespace {

GeneratorSpec make_spec(const std::optional<Matrix>& hamiltonian,
                        const std::vector<Matrix>& jumps) {
  return GeneratorSpec(hamiltonian, jumps);
}

SuperoperatorMatrix superop_from_dense(const Matrix& entries) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(entries.rows()))));
  return SuperoperatorMatrix(n, entries);
}

py::dict stationary_to_dict(const StationarySet& set) {
  py::dict out;
  out["case"] = stationary_case_name(set.kind);
  out["dimension"] = set.stationary_dimension;
  if (set.interior) out["state"] = set.interior->matrix();
  if (set.face_projector) out["face_projector"] = *set.face_projector;
  if (set.commutant_eigenbasis) {
    out["eigenbasis"] = *set.commutant_eigenbasis;
    out["degeneracies"] = set.commutant_degeneracies;
  }
  if (set.decomposition) {
    py::list blocks;
    for (std::size_t i = 0; i < set.block_results.size(); ++i) {
      py::dict entry;
      entry["case"] = stationary_case_name(set.block_results[i].kind);
      entry["projector"] = set.decomposition->projectors[i];
      if (set.block_results[i].interior)
        entry["state"] = set.block_results[i].interior->matrix();
      if (set.block_results[i].face_projector)
        entry["face_projector"] = *set.block_results[i].face_projector;
      blocks.append(std::move(entry));
    }
    out["blocks"] = std::move(blocks);
    py::list relations;
    for (const auto& rel : set.phase_relations) {
      py::dict entry;
      entry["block_j"] = rel.block_j;
      entry["block_l"] = rel.block_l;
      entry["basis"] = rel.basis;
      relations.append(std::move(entry));
    }
    out["phase_relations"] = std::move(relations);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum dynamical semigroups with simple GKS-Lindblad generators";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("apply_simple_generator", &apply_simple_generator, py::arg("h"), py::arg("rho"),
        "D_h(rho) = h rho h^dag - (h^dag h rho + rho h^dag h)/2");
  m.def("apply_dual_generator", &apply_dual_generator, py::arg("h"), py::arg("f"));
  m.def(
      "apply_full_generator",
      [](const std::optional<Matrix>& hamiltonian, const std::vector<Matrix>& jumps,
         const Matrix& rho) { return apply_full_generator(make_spec(hamiltonian, jumps), rho); },
      py::arg("hamiltonian"), py::arg("jump_operators"), py::arg("rho"));
  m.def(
      "build_superoperator",
      [](const Matrix& h) { return build_superoperator(h).entries(); }, py::arg("h"),
      "n^2 x n^2 matrix of D_h on row-major vectorized states");
  m.def(
      "build_full_superoperator",
      [](const std::optional<Matrix>& hamiltonian, const std::vector<Matrix>& jumps) {
        return build_superoperator(make_spec(hamiltonian, jumps)).entries();
      },
      py::arg("hamiltonian"), py::arg("jump_operators"));
  m.def(
      "choi_cp_check",
      [](const Matrix& superop, double t) {
        const CpReport r = choi_cp_check(superop_from_dense(superop), t);
        return py::make_tuple(r.is_cp, r.min_choi_eigenvalue);
      },
      py::arg("superoperator"), py::arg("t"),
      "(is_cp, min_choi_eigenvalue) for the map exp(t L)");
  m.def(
      "recover_h",
      [](const Matrix& superop) {
        const RecoveredOperator r = recover_h(superop_from_dense(superop));
        return py::make_tuple(r.h, r.unique_up_to_phase, r.residual);
      },
      py::arg("superoperator"), "(h, unique_up_to_phase, residual)");
  m.def(
      "unitary_limit_check",
      [](const Matrix& hamiltonian, double lam) {
        const UnitaryLimitReport r = unitary_limit_check(hamiltonian, lam);
        return py::make_tuple(r.distance, r.expected);
      },
      py::arg("hamiltonian"), py::arg("lam"));

  m.def(
      "propagate",
      [](const Matrix& h, const Matrix& rho0, double t) {
        return propagate(build_superoperator(h), DensityMatrix(rho0), t).matrix();
      },
      py::arg("h"), py::arg("rho0"), py::arg("t"));
  m.def(
      "generator_spectrum",
      [](const Matrix& h) {
        const SpectrumReport r = generator_spectrum(build_superoperator(h));
        py::dict out;
        out["eigenvalues"] = r.eigenvalues;
        out["eigenmatrices"] = r.proper_eigenmatrices;
        out["generalized_flags"] = r.generalized_flags;
        out["max_real_part"] = r.stability_verdict.max_real_part;
        out["nonzero_imaginary_axis"] = r.stability_verdict.nonzero_imaginary_axis;
        return out;
      },
      py::arg("h"));
  m.def(
      "emerging_eigenvalue_derivatives",
      [](const Matrix& h, const Matrix& rho0, int max_order) {
        return emerging_eigenvalue_derivatives(h, DensityMatrix(rho0), max_order);
      },
      py::arg("h"), py::arg("rho0"), py::arg("max_order") = 4);
  m.def(
      "entropy",
      [](const Matrix& rho) {
        std::vector<double> t{0.0};
        std::vector<DensityMatrix> s{DensityMatrix(rho)};
        const auto points = entropy_track(Trajectory(std::move(t), std::move(s)));
        return py::make_tuple(points.front().von_neumann, points.front().fermi);
      },
      py::arg("rho"), "(von_neumann, fermi)");
  m.def(
      "face_coordinate",
      [](const Matrix& rho, const std::vector<Vector>& basis) {
        return face_coordinate(DensityMatrix(rho), basis);
      },
      py::arg("rho"), py::arg("face_basis"));

  m.def(
      "decompose",
      [](const Matrix& h) {
        const Decomposition d = decompose(h);
        py::list parts;
        for (std::size_t i = 0; i < d.size(); ++i) {
          py::dict entry;
          entry["projector"] = d.projectors[i];
          entry["block"] = d.blocks[i];
          entry["class_id"] = d.classes.class_of[i];
          parts.append(std::move(entry));
        }
        return parts;
      },
      py::arg("h"));
  m.def(
      "schur_triangulate",
      [](const Matrix& h, bool zeros_first) {
        const SchurResult r = schur_triangulate(
            h, zeros_first ? SchurOrder::ZerosFirst : SchurOrder::AsComputed);
        return py::make_tuple(r.unitary, r.triangular);
      },
      py::arg("h"), py::arg("zeros_first") = false, "(U, T) with h = U T U^dag");
  m.def("is_lazy_subspace",
        [](const Matrix& h, const Matrix& p) { return is_lazy_subspace(h, p); },
        py::arg("h"), py::arg("projector"));
  m.def("canonical_lazy_subspaces",
        [](const Matrix& h) { return canonical_lazy_subspaces(h); }, py::arg("h"));

  m.def("classify_stationary",
        [](const Matrix& h) { return stationary_to_dict(classify_stationary(h)); },
        py::arg("h"));
  m.def(
      "interior_stationary",
      [](const Matrix& h) { return interior_stationary(h).matrix(); }, py::arg("h"));
  m.def("attractive_face", [](const Matrix& h) { return attractive_face(h); },
        py::arg("h"));
  m.def(
      "design_generator",
      [](const Matrix& rho) { return design_generator(DensityMatrix(rho)); },
      py::arg("rho_target"));

  m.def(
      "block_derivatives",
      [](const Matrix& h, const Matrix& sigma, Eigen::Index upper_dim) {
        const BlockDerivatives d =
            block_derivatives(BlockSplit::from_matrices(h, sigma, upper_dim));
        return py::make_tuple(d.rdot, d.qdot, d.mdot, d.sdot);
      },
      py::arg("h"), py::arg("sigma"), py::arg("upper_dim"));

  m.def(
      "qubit_stationary",
      [](Complex a, Complex b, Complex d) {
        return qubit_stationary(QubitParams{a, b, d}).matrix();
      },
      py::arg("a"), py::arg("b"), py::arg("d"));
  m.def(
      "qubit_spectrum",
      [](Complex a, Complex b, Complex d) { return qubit_spectrum(QubitParams{a, b, d}); },
      py::arg("a"), py::arg("b"), py::arg("d"));

  m.attr("__version__") = "0.1.0";
}
