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

#include <doctest.h>

#include <cmath>

#include "lindblad/evolution.hpp"
#include "lindblad/generator.hpp"
#include "lindblad/qubit.hpp"
#include "lindblad/stationary.hpp"
#include "support.hpp"

using namespace lindblad;
using namespace lindblad::testing;

namespace {

QubitParams random_params(std::mt19937_64& rng, bool nonzero_b = true) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&]() { return Complex(gauss(rng), gauss(rng)); };
  QubitParams p{draw(), draw(), draw()};
  while (nonzero_b && std::abs(p.b) < 0.1) p.b = draw();
  // Keep h^dag h well conditioned so closed forms and solves agree tightly.
  while (std::abs(p.a) < 0.1) p.a = draw();
  while (std::abs(p.d) < 0.1) p.d = draw();
  return p;
}

}  // namespace

TEST_CASE("qubit stationary state") {
  SUBCASE("a = b = d = 1") {
    const DensityMatrix rho = qubit_stationary({1, 1, 1});
    Matrix expected(2, 2);
    expected << 2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0;
    CHECK((rho.matrix() - expected).norm() < 1e-14);
  }
  SUBCASE("a = 0 gives a pure stationary state") {
    const DensityMatrix rho = qubit_stationary({0, 1, 1});
    Matrix expected(2, 2);
    expected << 1, 0, 0, 0;
    CHECK((rho.matrix() - expected).norm() < 1e-14);
  }
  SUBCASE("b = 0 has no unique stationary state") {
    CHECK_THROWS_AS(qubit_stationary({1, 0, 2}), ValidationError);
  }
  SUBCASE("closed form agrees with the generic modules") {
    auto rng = make_rng(71);
    for (int k = 0; k < 100; ++k) {
      const QubitParams p = random_params(rng);
      const Matrix h = p.matrix();
      const DensityMatrix oracle = qubit_stationary(p);
      if (has_zero_eigenvalue(h)) {
        // Pure face state: the face projector is the state itself.
        const Matrix face = attractive_face(h);
        CHECK((face - oracle.matrix()).norm() < 1e-12);
      } else {
        CHECK((interior_stationary(h).matrix() - oracle.matrix()).norm() < 1e-12);
      }
      CHECK(apply_simple_generator(h, oracle.matrix()).norm() < 1e-12 * h.squaredNorm());
    }
  }
}

TEST_CASE("qubit spectrum") {
  SUBCASE("a = 0, b = 1, d = 2") {
    const auto eigs = qubit_spectrum({0, 1, 2});
    CHECK(multiset_distance(eigs, {Complex(0, 0), Complex(-1, 0), Complex(-2.5, 0),
                                   Complex(-2.5, 0)}) < 1e-12);
  }
  SUBCASE("real a, d and real b pin one eigenvalue at -(|a-d|^2+|b|^2)/2") {
    const QubitParams p{1.0, 0.7, -0.4};
    const auto eigs = qubit_spectrum(p);
    const double expected = -(std::norm(p.a - p.d) + std::norm(p.b)) / 2.0;
    double best = 1e300;
    for (const auto& lambda : eigs) best = std::min(best, std::abs(lambda - expected));
    CHECK(best < 1e-12);
  }
  SUBCASE("matches the generic superoperator spectrum") {
    auto rng = make_rng(72);
    for (int k = 0; k < 100; ++k) {
      const QubitParams p = random_params(rng, /*nonzero_b=*/false);
      const auto oracle = qubit_spectrum(p);
      const auto generic =
          generator_spectrum(build_superoperator(p.matrix())).eigenvalues;
      CHECK(multiset_distance(oracle, generic) < 1e-10 * std::max(1.0, p.matrix().squaredNorm()));
    }
  }
}

TEST_CASE("qubit eigenmatrices for a = 0") {
  SUBCASE("b = 1, d = 2") {
    const auto em = qubit_eigenmatrices_a0(1, 2);
    Matrix expected(2, 2);
    expected << -3, 4, 4, 3;
    CHECK((em.sigma1 - expected).norm() < 1e-14);
    const SuperoperatorMatrix L = build_superoperator(QubitParams{0, 1, 2}.matrix());
    CHECK((L.apply(em.sigma1) - (-1.0) * em.sigma1).norm() < 1e-12);
    CHECK_FALSE(em.generalized.has_value());
  }
  SUBCASE("sigma2 and sigma3 are eigenmatrices for random parameters") {
    auto rng = make_rng(73);
    for (int k = 0; k < 20; ++k) {
      QubitParams p = random_params(rng);
      p.a = 0;
      const auto em = qubit_eigenmatrices_a0(p.b, p.d);
      const SuperoperatorMatrix L = build_superoperator(p.matrix());
      const double lambda23 = -(std::norm(p.b) + std::norm(p.d)) / 2.0;
      CHECK((L.apply(em.sigma2) - lambda23 * em.sigma2).norm() < 1e-12 * (1 + std::abs(lambda23)));
      CHECK((L.apply(em.sigma3) - lambda23 * em.sigma3).norm() < 1e-12 * (1 + std::abs(lambda23)));
    }
  }
  SUBCASE("degenerate |b| = |d| case satisfies the generalized relation") {
    const auto em = qubit_eigenmatrices_a0(1, 1);
    REQUIRE(em.generalized.has_value());
    const SuperoperatorMatrix L = build_superoperator(QubitParams{0, 1, 1}.matrix());
    // D(sigma_hat) + |b|^2 sigma_hat = |b|^2 (sigma2 + sigma3)
    const Matrix lhs = L.apply(*em.generalized) + *em.generalized;
    const Matrix rhs = em.sigma2 + em.sigma3;
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("qubit emergence constants") {
  SUBCASE("a = 1, b = 1, d = 0") {
    const QubitEmergence e = qubit_emergence_constants({1, 1, 0});
    CHECK(e.third == doctest::Approx(0.5));
    CHECK_FALSE(e.fourth.has_value());
  }
  SUBCASE("a = d = b = 1") {
    const QubitEmergence e = qubit_emergence_constants({1, 1, 1});
    CHECK(e.third == doctest::Approx(0.0));
    REQUIRE(e.fourth.has_value());
    CHECK(*e.fourth == doctest::Approx(7.0 / 8.0));
  }
  SUBCASE("a = 0 vanishes") {
    const QubitEmergence e = qubit_emergence_constants({0, 1, 2});
    CHECK(e.third == doctest::Approx(0.0));
  }
  SUBCASE("matches finite differences from the propagated trajectory") {
    auto rng = make_rng(74);
    for (int k = 0; k < 3; ++k) {
      QubitParams p = random_params(rng);
      p.a = Complex(std::abs(p.a), 0);  // keep the branch well separated
      p.d = Complex(std::abs(p.d) + 0.5, 0);
      const QubitEmergence oracle = qubit_emergence_constants(p);
      const DensityMatrix rho0(
          (Matrix(2, 2) << 1, 0, 0, 0).finished());
      const auto deriv =
          emerging_eigenvalue_derivatives(p.matrix(), rho0, 3);
      CHECK(deriv[2] == doctest::Approx(oracle.third).epsilon(5e-3));
    }
  }
}
