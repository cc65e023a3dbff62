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

#include "lindblad/io.hpp"

#include <cstdio>
#include <sstream>

#include "lindblad/generator.hpp"

namespace lindblad {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(ErrorCode::MalformedMatrixJson,
                          "complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void append_number(std::ostringstream& out, double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  out << buffer;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ValidationError(ErrorCode::MalformedMatrixJson,
                          "matrix JSON needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() <= 0) {
    throw ValidationError(ErrorCode::MalformedMatrixJson, "\"dim\" must be a positive integer");
  }
  const Eigen::Index n = j["dim"].get<Eigen::Index>();
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n) {
    throw ValidationError(ErrorCode::MalformedMatrixJson,
                          "\"entries\" must have exactly dim rows");
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ValidationError(ErrorCode::MalformedMatrixJson,
                            "ragged or misshapen entries array");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

GeneratorSpec generator_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries")) {
    return GeneratorSpec::simple(matrix_from_json(j));
  }
  if (j.is_object() && j.contains("h")) {
    return GeneratorSpec::simple(matrix_from_json(j["h"]));
  }
  if (j.is_object() && (j.contains("jump_operators") || j.contains("hamiltonian"))) {
    std::optional<Matrix> hamiltonian;
    if (j.contains("hamiltonian") && !j["hamiltonian"].is_null()) {
      hamiltonian = matrix_from_json(j["hamiltonian"]);
    }
    std::vector<Matrix> jumps;
    if (j.contains("jump_operators")) {
      if (!j["jump_operators"].is_array()) {
        throw ValidationError(ErrorCode::MalformedMatrixJson,
                              "\"jump_operators\" must be an array of matrices");
      }
      for (const auto& item : j["jump_operators"]) jumps.push_back(matrix_from_json(item));
    }
    if (jumps.empty() && hamiltonian) {
      jumps.push_back(Matrix::Zero(hamiltonian->rows(), hamiltonian->cols()));
    }
    return GeneratorSpec(std::move(hamiltonian), std::move(jumps));
  }
  throw ValidationError(ErrorCode::MalformedMatrixJson,
                        "expected a matrix object, {\"h\": ...}, or a generator spec");
}

Json spectrum_to_json(const SpectrumReport& report, bool include_eigenmatrices) {
  Json eigenvalues = Json::array();
  for (const auto& lambda : report.eigenvalues) eigenvalues.push_back(complex_to_json(lambda));
  Json j{{"eigenvalues", std::move(eigenvalues)},
         {"generalized_flags", report.generalized_flags},
         {"stability",
          {{"max_real_part", report.stability_verdict.max_real_part},
           {"nonzero_imaginary_axis", report.stability_verdict.nonzero_imaginary_axis}}}};
  if (include_eigenmatrices) {
    Json mats = Json::array();
    for (const auto& sigma : report.proper_eigenmatrices) mats.push_back(matrix_to_json(sigma));
    j["eigenmatrices"] = std::move(mats);
  }
  return j;
}

Json decomposition_to_json(const Decomposition& decomposition) {
  Json parts = Json::array();
  for (std::size_t i = 0; i < decomposition.size(); ++i) {
    parts.push_back(Json{{"subspace_dim", decomposition.blocks[i].rows()},
                         {"block", matrix_to_json(decomposition.blocks[i])},
                         {"class_id", decomposition.classes.class_of[i]}});
  }
  return Json{{"threshold", decomposition.threshold},
              {"num_parts", decomposition.size()},
              {"num_classes", decomposition.classes.class_count},
              {"parts", std::move(parts)}};
}

Json stationary_to_json(const StationarySet& set, const Matrix& h) {
  const double scale = std::max(1.0, h.squaredNorm());
  Json j{{"case", stationary_case_name(set.kind)},
         {"stationary_dimension", set.stationary_dimension}};
  Json residuals = Json::object();
  switch (set.kind) {
    case StationaryCase::UniqueInterior: {
      j["state"] = matrix_to_json(set.interior->matrix());
      residuals["interior"] =
          apply_simple_generator(h, set.interior->matrix()).norm() / scale;
      break;
    }
    case StationaryCase::AttractiveFace: {
      j["face_projector"] = matrix_to_json(*set.face_projector);
      const double trace = set.face_projector->trace().real();
      residuals["face_midpoint"] =
          apply_simple_generator(h, *set.face_projector / trace).norm() / scale;
      break;
    }
    case StationaryCase::Commutant: {
      j["eigenbasis"] = matrix_to_json(*set.commutant_eigenbasis);
      j["degeneracies"] = set.commutant_degeneracies;
      const Eigen::Index dim = h.rows();
      Vector probs(dim);
      for (Eigen::Index i = 0; i < dim; ++i) probs(i) = Complex(i + 1, 0);
      probs /= probs.sum();
      const Matrix sigma = *set.commutant_eigenbasis * probs.asDiagonal() *
                           set.commutant_eigenbasis->adjoint();
      residuals["commuting_state"] = apply_simple_generator(h, sigma).norm() / scale;
      break;
    }
    case StationaryCase::Composite: {
      Json blocks = Json::array();
      for (std::size_t i = 0; i < set.block_results.size(); ++i) {
        const auto& leaf = set.block_results[i];
        Json entry{{"case", stationary_case_name(leaf.kind)},
                   {"dimension", leaf.dimension}};
        const Matrix& block = set.decomposition->blocks[i];
        if (leaf.interior) {
          entry["state"] = matrix_to_json(leaf.interior->matrix());
          entry["residual"] =
              apply_simple_generator(block, leaf.interior->matrix()).norm() / scale;
        }
        if (leaf.face_projector) {
          entry["face_projector"] = matrix_to_json(*leaf.face_projector);
          const double trace = leaf.face_projector->trace().real();
          entry["residual"] =
              apply_simple_generator(block, *leaf.face_projector / trace).norm() / scale;
        }
        blocks.push_back(std::move(entry));
      }
      j["blocks"] = std::move(blocks);
      Json relations = Json::array();
      for (const auto& rel : set.phase_relations) {
        Json basis = Json::array();
        double rel_residual = 0.0;
        for (const auto& q : rel.basis) {
          basis.push_back(matrix_to_json(q));
          const Matrix embedded = set.decomposition->bases[rel.block_j] * q *
                                  set.decomposition->bases[rel.block_l].adjoint();
          rel_residual =
              std::max(rel_residual, apply_simple_generator(h, embedded).norm() / scale);
        }
        relations.push_back(Json{{"block_j", rel.block_j},
                                 {"block_l", rel.block_l},
                                 {"residual", rel_residual},
                                 {"basis", std::move(basis)}});
      }
      j["phase_relations"] = std::move(relations);
      break;
    }
  }
  j["residual_norms"] = std::move(residuals);
  return j;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  const Eigen::Index n = traj.states.front().dim();
  std::ostringstream out;
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out << ", entry_" << i << j << "_re, entry_" << i << j << "_im";
  out << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    append_number(out, traj.times[k]);
    const Matrix& rho = traj.states[k].matrix();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        out << ", ";
        append_number(out, rho(i, j).real());
        out << ", ";
        append_number(out, rho(i, j).imag());
      }
    out << "\n";
  }
  return out.str();
}

std::string entropy_to_csv(const Trajectory& traj) {
  const auto entropies = entropy_track(traj);
  std::ostringstream out;
  out << "t, von_neumann, fermi\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    append_number(out, traj.times[k]);
    out << ", ";
    append_number(out, entropies[k].von_neumann);
    out << ", ";
    append_number(out, entropies[k].fermi);
    out << "\n";
  }
  return out.str();
}

}  // namespace lindblad
