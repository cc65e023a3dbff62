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

#include "lindblad/blocks.hpp"

#include <algorithm>
#include <cmath>

#include "lindblad/generator.hpp"
#include "lindblad/structure.hpp"

namespace lindblad {

BlockSplit BlockSplit::from_matrices(const Matrix& h, const Matrix& sigma,
                                     Eigen::Index upper_dim) {
  require_square(h, "operator");
  require_same_dim(h, sigma, "block split");
  const Eigen::Index n = h.rows();
  if (upper_dim <= 0 || upper_dim >= n) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "splitting dimension must be strictly between 0 and n");
  }
  const Eigen::Index k = upper_dim, l = n - upper_dim;
  BlockSplit split;
  split.a = h.topLeftCorner(k, k);
  split.b = h.topRightCorner(k, l);
  split.c = h.bottomLeftCorner(l, k);
  split.d = h.bottomRightCorner(l, l);
  split.r = sigma.topLeftCorner(k, k);
  split.q = sigma.topRightCorner(k, l);
  split.m = sigma.bottomLeftCorner(l, k);
  split.s = sigma.bottomRightCorner(l, l);
  return split;
}

Matrix BlockSplit::assemble_h() const {
  const Eigen::Index k = a.rows(), l = d.rows();
  Matrix h(k + l, k + l);
  h << a, b, c, d;
  return h;
}

Matrix BlockSplit::assemble_sigma() const {
  const Eigen::Index k = r.rows(), l = s.rows();
  Matrix sigma(k + l, k + l);
  sigma << r, q, m, s;
  return sigma;
}

Matrix BlockDerivatives::assemble() const {
  const Eigen::Index k = rdot.rows(), l = sdot.rows();
  Matrix out(k + l, k + l);
  out << rdot, qdot, mdot, sdot;
  return out;
}

BlockDerivatives block_derivatives(const BlockSplit& split) {
  const double hscale = std::max(1.0, split.assemble_h().norm());
  const bool c_zero = split.c.norm() <= 1e-14 * hscale;
  const Matrix& a = split.a;
  const Matrix& b = split.b;
  const Matrix& d = split.d;
  const Matrix& r = split.r;
  const Matrix& q = split.q;
  const Matrix& m = split.m;
  const Matrix& s = split.s;
  BlockDerivatives out;

  if (c_zero) {
    const Matrix ad = a.adjoint();
    const Matrix bd = b.adjoint();
    const Matrix dd = d.adjoint();
    out.rdot = apply_simple_generator(a, r) + b * s * bd + a * q * bd + b * m * ad -
               0.5 * (q * bd * a + ad * b * m);
    out.qdot = a * q * dd + b * s * dd -
               0.5 * (ad * a * q + q * bd * b + q * dd * d + r * ad * b + ad * b * s);
    out.mdot = d * m * ad + d * s * bd -
               0.5 * (m * ad * a + bd * b * m + dd * d * m + bd * a * r + s * bd * a);
    out.sdot = apply_simple_generator(d, s) -
               0.5 * (bd * b * s + s * bd * b + bd * a * q + m * ad * b);
    return out;
  }

  const double sscale = std::max(1.0, split.assemble_sigma().norm());
  const bool boundary = split.q.norm() <= 1e-14 * sscale &&
                        split.m.norm() <= 1e-14 * sscale &&
                        split.s.norm() <= 1e-14 * sscale;
  if (!boundary) {
    throw ValidationError(ErrorCode::InvalidArgument,
                          "C != 0 requires the boundary form Q = M = S = 0");
  }
  // Boundary state: only R is populated. Sdot = C R C^dag; the remaining
  // blocks follow from expanding h rho h^dag - (h^dag h rho + rho h^dag h)/2.
  const Matrix& c = split.c;
  const Matrix hh_tl = a.adjoint() * a + c.adjoint() * c;
  out.rdot = a * r * a.adjoint() - 0.5 * (hh_tl * r + r * hh_tl);
  out.qdot = a * r * c.adjoint() - 0.5 * r * (a.adjoint() * b + c.adjoint() * d);
  out.mdot = c * r * a.adjoint() - 0.5 * (b.adjoint() * a + d.adjoint() * c) * r;
  out.sdot = c * r * c.adjoint();
  return out;
}

DephasingReport dephasing_analysis(const Matrix& h_j, const Matrix& h_l,
                                   const Matrix& q0, const Tolerances&) {
  require_square(h_j, "block");
  require_square(h_l, "block");
  if (q0.rows() != h_j.rows() || q0.cols() != h_l.rows()) {
    throw ValidationError(ErrorCode::DimensionMismatch,
                          "off-diagonal block must be dim(h_j) x dim(h_l)");
  }
  if (commutant_dimension(h_j) > 1 || commutant_dimension(h_l) > 1) {
    throw ValidationError(ErrorCode::Decomposable,
                          "dephasing analysis applies to indecomposable parts");
  }
  if (q0.norm() == 0.0) {
    throw ValidationError(ErrorCode::InvalidArgument, "off-diagonal block is zero");
  }
  const double scale = std::max({1.0, h_j.norm(), h_l.norm()});

  DephasingReport report;
  if (h_j.rows() == 1 && h_l.rows() == 1) {
    report.mode = DephasingMode::ScalarPair;
    const Complex a = h_j(0, 0), d = h_l(0, 0);
    report.complex_rate = a * std::conj(d) - 0.5 * (std::norm(a) + std::norm(d));
    report.modulus_decay_rate = 0.5 * std::norm(a - d);
    return report;
  }

  if ((q0 * h_l.adjoint()).norm() <= 1e-12 * scale * q0.norm()) {
    // Q D^dag = 0: Qdot = -A^dag A Q / 2, expand over the Gram spectrum.
    report.mode = DephasingMode::KernelAligned;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h_j.adjoint() * h_j);
    if (es.info() != Eigen::Success) {
      throw NumericalError("eigensolver failed on A^dag A");
    }
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Vector u = es.eigenvectors().col(i);
      Matrix component = u * (u.adjoint() * q0);
      if (component.norm() <= 1e-12 * q0.norm()) continue;
      DephasingComponent part;
      part.gram_eigenvalue = es.eigenvalues()(i);
      part.rate = -0.5 * es.eigenvalues()(i);
      part.component = std::move(component);
      report.expansion.push_back(std::move(part));
    }
    return report;
  }

  if (h_l.rows() == 1) {
    const Complex d = h_l(0, 0);
    const Matrix residual = h_j * q0 - d * q0;
    if (residual.norm() <= 1e-10 * scale * q0.norm()) {
      // (A - d) Q = 0 with d != 0: ||Q||^2 is flat to second order, and
      // d^3/dt^3 ||Q||^2 = -2 ||(A - d) Qdot||^2 < 0 with
      // Qdot = d (d^* - A^dag) Q / 2. Cauchy-Schwarz through |Q><Q|/||Q||^2
      // bounds it by -8 ||Qdot||^4 / (|d|^2 ||Q||^2).
      report.mode = DephasingMode::EigenvectorLock;
      const Matrix qdot = 0.5 * d * (std::conj(d) * q0 - h_j.adjoint() * q0);
      const Matrix locked = h_j * qdot - d * qdot;
      report.third_derivative = -2.0 * locked.squaredNorm();
      report.third_derivative_bound =
          -8.0 * std::pow(qdot.norm(), 4) / (std::norm(d) * q0.squaredNorm());
      return report;
    }
  }

  throw ValidationError(ErrorCode::Unsupported,
                        "no closed-form dephasing law covers this configuration");
}

}  // namespace lindblad
