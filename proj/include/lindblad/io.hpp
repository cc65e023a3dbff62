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

#include <string>

#include <json.hpp>

#include "lindblad/evolution.hpp"
#include "lindblad/stationary.hpp"
#include "lindblad/structure.hpp"
#include "lindblad/types.hpp"

namespace lindblad {

using Json = nlohmann::json;

/// Shared matrix schema: {"dim": n, "entries": [[[re, im], ...], ...]},
/// row-major, complex entries always as [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Accepts a bare matrix object, {"h": matrix}, or
/// {"hamiltonian": matrix, "jump_operators": [matrix, ...]}.
GeneratorSpec generator_from_json(const Json& j);

Json spectrum_to_json(const SpectrumReport& report, bool include_eigenmatrices = true);
Json decomposition_to_json(const Decomposition& decomposition);
Json stationary_to_json(const StationarySet& set, const Matrix& h);

/// Trajectory CSV: header `t, entry_00_re, entry_00_im, ...` row-major.
std::string trajectory_to_csv(const Trajectory& traj);
/// Entropy CSV: header `t, von_neumann, fermi`.
std::string entropy_to_csv(const Trajectory& traj);

}  // namespace lindblad
