// Copyright 2026 The Symplectica Authors
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

#include "symplectica/standardform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace symplectica {

namespace {

Matrix block(const Matrix &m, int i, int j) {
  return m.block(2 * i, 2 * j, 2, 2);
}

Matrix quarter_turns(int count) {
  Matrix r = Matrix::Identity(2, 2);
  const Matrix j = rotation(std::numbers::pi / 2.0);
  for (int k = 0; k < count; ++k) r = r * j;
  return r;
}

// Symplectic L with L^T A L = sqrt(det A) I for a 2x2 positive definite A.
// The rotation part is the one closest to the identity, so blocks that are
// already diagonal keep their x and p axes.
Matrix local_williamson(const Matrix &a) {
  const double scale = a.trace();
  if (std::abs(a(0, 0) - a(1, 1)) + 2.0 * std::abs(a(0, 1)) <=
      1e-14 * scale) {
    return Matrix::Identity(2, 2);
  }
  const SymEigResult eig = sym_eig(a);
  Matrix r = eig.eigenvectors;
  if (r.determinant() < 0.0) r.col(1) = -r.col(1);
  Vector lambda = eig.eigenvalues;
  int best = 0;
  double best_trace = -3.0;
  for (int q = 0; q < 4; ++q) {
    const double t = (r * quarter_turns(q)).trace();
    if (t > best_trace + 1e-12) {
      best_trace = t;
      best = q;
    }
  }
  r = r * quarter_turns(best);
  if (best % 2 == 1) std::swap(lambda(0), lambda(1));
  const double target = std::sqrt(lambda(0) * lambda(1));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::sqrt(target / lambda(0));
  d(1, 1) = std::sqrt(target / lambda(1));
  return r * d;
}

// Rotations U, V with U^T C V diagonal and a nonnegative (0,0) entry. Among
// the equivalent choices (quarter turns on both sides) the pair closest to
// the identity is taken.
std::pair<Matrix, Matrix> rotation_svd(const Matrix &c) {
  const double e = 0.5 * (c(0, 0) + c(1, 1));
  const double f = 0.5 * (c(0, 0) - c(1, 1));
  const double g = 0.5 * (c(1, 0) + c(0, 1));
  const double h = 0.5 * (c(1, 0) - c(0, 1));
  // A vanishing (e, h) or (f, g) pair leaves its angle free; rounding noise
  // must not pick it.
  const double noise = 1e-13 * norm_inf(c);
  const double a1 = std::hypot(f, g) <= noise ? 0.0 : std::atan2(g, f);
  const double a2 = std::hypot(e, h) <= noise ? 0.0 : std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  // C = Rot(phi) diag Rot(theta) with Rot counter-clockwise; rotation(t) in
  // this library is Rot(-t).
  const Matrix u = rotation(-phi);
  const Matrix v = rotation(theta);
  const double floor = -1e-14 * std::max(norm_inf(c), 1e-300);
  std::pair<Matrix, Matrix> best{u, v};
  double best_trace = -1e300;
  for (int qa = 0; qa < 4; ++qa) {
    for (int qb = qa % 2; qb < 4; qb += 2) {
      const Matrix uu = u * quarter_turns(qa);
      const Matrix vv = v * quarter_turns(qb);
      if ((uu.transpose() * c * vv)(0, 0) < floor) continue;
      // Keeping the x and p axes outranks avoiding sign flips.
      const double t = 4.0 * (std::abs(uu(0, 0)) + std::abs(vv(0, 0))) +
                       uu.trace() + vv.trace();
      if (t > best_trace + 1e-12) {
        best_trace = t;
        best = {uu, vv};
      }
    }
  }
  return best;
}

// Reduction with the pair partners and the odd mode chosen by `order`
// (0-based mode labels). The identity order gives the documented form.
StandardFormResult reduce_ordered(const CovarianceMatrix &sigma,
                                  const std::vector<int> &order,
                                  const Tolerances &tol) {
  const int n = sigma.modes();
  std::vector<Matrix> ops(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    ops[static_cast<size_t>(j)] = local_williamson(block(sigma.matrix(), j, j));
  }
  Matrix current = conjugate_cm(sigma.matrix(), local_symplectic(ops));
  const double scale = std::max(norm_inf(current), 1.0);

  auto apply = [&](int mode, const Matrix &q) {
    ops[static_cast<size_t>(mode)] = ops[static_cast<size_t>(mode)] * q;
    current.middleCols(2 * mode, 2) = current.middleCols(2 * mode, 2) * q;
    current.middleRows(2 * mode, 2) = q.transpose() * current.middleRows(2 * mode, 2);
  };

  for (int p = 0; p + 1 < n; p += 2) {
    const int i = order[static_cast<size_t>(p)];
    const int j = order[static_cast<size_t>(p + 1)];
    const Matrix c = block(current, i, j);
    if (norm_inf(c) <= tol.sym * scale) continue;
    auto [u, v] = rotation_svd(c);
    apply(i, u);
    apply(j, v);
  }
  if (n % 2 == 1 && n > 1) {
    const int first = order.front();
    const int last = order.back();
    const Matrix m = block(current, first, last);
    const double r = std::hypot(m(0, 0), m(0, 1));
    if (r > tol.sym * scale) {
      Matrix q(2, 2);
      q << m(0, 0) / r, -m(0, 1) / r, m(0, 1) / r, m(0, 0) / r;
      apply(last, q);
    }
  }

  std::vector<SymplecticMatrix> local;
  local.reserve(static_cast<size_t>(n));
  for (const Matrix &op : ops) {
    local.emplace_back(op, scaled_symplectic_tol(op, tol.symp));
  }
  std::vector<double> a(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    a[static_cast<size_t>(j)] = 0.5 * block(current, j, j).trace();
  }
  const SymplecticMatrix total = local_symplectic(ops);
  return StandardFormResult{
      CovarianceMatrix(conjugate_cm(sigma.matrix(), total), tol),
      std::move(local), std::move(a)};
}

void require_modes(const CovarianceMatrix &sigma, int n, ErrorCode code,
                   const char *what) {
  if (sigma.modes() != n) {
    std::ostringstream os;
    os << what << " needs " << n << " modes, got " << sigma.modes();
    throw Error(code, os.str());
  }
}

}  // namespace

StandardFormResult reduce_mixed(const CovarianceMatrix &sigma,
                                const Tolerances &tol) {
  std::vector<int> order(static_cast<size_t>(sigma.modes()));
  for (int j = 0; j < sigma.modes(); ++j) order[static_cast<size_t>(j)] = j;
  return reduce_ordered(sigma, order, tol);
}

DofTable dof(int n) {
  if (n < 1) {
    throw Error(ErrorCode::TooFewModes, "dof needs n >= 1");
  }
  DofTable t{};
  t.n = n;
  t.mixed_total = 2 * n * n + n;
  t.mixed_invariant = n == 1 ? 1 : 2 * n * n - 2 * n;
  t.pure_total = n * n + n;
  t.pure_invariant = n == 1 ? 0 : (n == 2 ? 1 : n * n - 2 * n);
  t.blockdiag_invariant = n * (n - 1) / 2;
  return t;
}

int schmidt_dof_check(int m, int n) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::TooFewModes, "both sides need at least one mode");
  }
  const int lo = std::min(m, n);
  const int hi = std::max(m, n);
  const int lhs =
      lo + (2 * hi * hi + hi) + (2 * lo * lo + lo) - (lo - hi) * (lo - hi) - lo;
  const int rhs = (lo + hi) * (lo + hi) + (lo + hi);
  if (lhs != rhs) {
    throw std::logic_error("Schmidt parameter count does not reconcile");
  }
  return lo;
}

TwoModeReduction reduce_pure_two_mode(const CovarianceMatrix &sigma,
                                      const Tolerances &tol) {
  require_modes(sigma, 2, ErrorCode::DimensionMismatch,
                "reduce_pure_two_mode");
  require_pure(sigma, tol.pure, "reduce_pure_two_mode");
  StandardFormResult sf = reduce_mixed(sigma, tol);
  const Matrix c = block(sf.sigma_std.matrix(), 0, 1);
  // asinh of the correlation is better conditioned than arccosh(a) near 0.
  const double r = std::asinh(0.5 * (std::abs(c(0, 0)) + std::abs(c(1, 1))));
  return TwoModeReduction{r, std::move(sf.local_ops)};
}

bool check_tms_rotation_orbit(const CovarianceMatrix &sigma, double tol) {
  if (sigma.modes() != 2) return false;
  const CmBlocks b = blocks(sigma);
  const double norm = std::max(1.0, norm_inf(sigma.matrix()));
  const double lin = tol * norm;
  const double quad = tol * norm * norm;
  const double a = b.sigma_x(0, 0);
  const double c1 = b.sigma_x(0, 1);
  const double c2 = b.sigma_p(0, 1);
  const double y = b.sigma_xp(0, 1);
  const double z = b.sigma_xp(1, 0);
  const bool pattern = std::abs(b.sigma_x(1, 1) - a) <= lin &&
                       std::abs(b.sigma_p(0, 0) - a) <= lin &&
                       std::abs(b.sigma_p(1, 1) - a) <= lin &&
                       std::abs(b.sigma_xp(0, 0)) <= lin &&
                       std::abs(b.sigma_xp(1, 1)) <= lin;
  return pattern && std::abs(c1 + c2) <= lin && std::abs(y - z) <= lin &&
         std::abs(a * a - c1 * c1 - 1.0 - y * y) <= quad;
}

StandardFormResult annihilate_xp_three_mode(const CovarianceMatrix &sigma,
                                            const Tolerances &tol) {
  require_modes(sigma, 3, ErrorCode::Not3Mode, "annihilate_xp_three_mode");
  require_pure(sigma, tol.pure, "annihilate_xp_three_mode");
  // The sparse form forces sigma_xp = 0 when the chosen pair is correlated.
  // Uncorrelated pairs (a vacuum factor, say) leave the remaining block
  // untouched, so every choice of pair and odd mode is tried.
  static const std::array<std::array<int, 3>, 6> kOrders = {{
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}};
  StandardFormResult best = reduce_ordered(sigma, {0, 1, 2}, tol);
  double best_xp = norm_inf(blocks(best.sigma_std).sigma_xp);
  for (size_t k = 1; k < kOrders.size() && best_xp > 0.0; ++k) {
    const std::vector<int> order(kOrders[k].begin(), kOrders[k].end());
    StandardFormResult candidate = reduce_ordered(sigma, order, tol);
    const double xp = norm_inf(blocks(candidate.sigma_std).sigma_xp);
    if (xp < best_xp) {
      best_xp = xp;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace symplectica
