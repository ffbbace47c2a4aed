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

#include "symplectica/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace symplectica {

namespace {

constexpr double kVacuumFloor = 1e-9;
constexpr double kDegenerateGap = 1e-8;

ModeList iota_modes(int first, int count) {
  ModeList out(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<size_t>(k)] = first + k;
  return out;
}

}  // namespace

SchmidtForm schmidt_decompose(const CovarianceMatrix &sigma,
                              const ModeList &side_a, const Tolerances &tol) {
  const int total = sigma.modes();
  std::set<int> in_a;
  for (int mode : side_a) {
    if (mode < 1 || mode > total || !in_a.insert(mode).second) {
      std::ostringstream os;
      os << "mode index " << mode << " invalid or repeated for " << total
         << " modes";
      throw Error(ErrorCode::BadModeIndex, os.str());
    }
  }
  if (in_a.empty() || static_cast<int>(in_a.size()) == total) {
    throw Error(ErrorCode::BadModeIndex,
                "side A must be a proper nonempty subset of the modes");
  }
  require_pure(sigma, 1e-8, "schmidt_decompose");

  SchmidtForm form;
  ModeList a = side_a;
  ModeList b;
  for (int mode = 1; mode <= total; ++mode) {
    if (!in_a.count(mode)) b.push_back(mode);
  }
  if (a.size() > b.size()) {
    std::swap(a, b);
    form.swapped = true;
  }
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  ModeList order = a;
  order.insert(order.end(), b.begin(), b.end());
  const CovarianceMatrix split = reduced(sigma, order);

  // Williamson on each side leaves both local blocks diagonal.
  const SymplecticMatrix l_a =
      williamson(reduced(split, iota_modes(1, m)), tol).s.inverse();
  const SymplecticMatrix l_b =
      williamson(reduced(split, iota_modes(m + 1, n)), tol).s.inverse();
  const Matrix local = direct_sum({l_a.matrix(), l_b.matrix()});
  const Matrix tau = local.transpose() * split.matrix() * local;

  // Each correlated A mode i has a 2 x 2n correlation strip whose rows are
  // orthogonal with common norm sinh(r_i). Measuring r from the strip avoids
  // the square-root loss of arccosh near nu = 1.
  std::vector<double> s(static_cast<size_t>(m));
  int correlated = 0;
  for (int i = 0; i < m; ++i) {
    const double norm = tau.block(2 * i, 2 * m, 2, 2 * n).norm() / std::sqrt(2.0);
    s[static_cast<size_t>(i)] = norm;
    if (norm >= kVacuumFloor) correlated = i + 1;
  }

  Matrix s_b = l_b.matrix();
  if (correlated > 0) {
    const Matrix c = tau.block(0, 2 * m, 2 * correlated, 2 * correlated);
    const Matrix q = inv_sqrt_spd(c * c.transpose(), tol) * c;
    Matrix flip = Matrix::Identity(2 * correlated, 2 * correlated);
    for (int k = 0; k < correlated; ++k) flip(2 * k + 1, 2 * k + 1) = -1.0;
    const Matrix align = q.transpose() * flip;
    s_b = s_b * embed(align, iota_modes(1, correlated), n).matrix();
  }

  form.m = m;
  form.n = n;
  form.side_a = std::move(a);
  form.side_b = std::move(b);
  form.s_a = l_a;
  form.s_b = SymplecticMatrix(s_b, scaled_symplectic_tol(s_b, tol.symp));
  form.r.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double si = s[static_cast<size_t>(i)];
    form.r[static_cast<size_t>(i)] = si < kVacuumFloor ? 0.0 : std::asinh(si);
  }
  for (int i = 1; i < m; ++i) {
    if (std::cosh(form.r[static_cast<size_t>(i - 1)]) -
            std::cosh(form.r[static_cast<size_t>(i)]) <
        kDegenerateGap) {
      form.degenerate = true;
    }
  }
  return form;
}

ModeList paired_layout(const SchmidtForm &form) {
  ModeList out;
  for (int i = 0; i < form.m; ++i) {
    out.push_back(form.side_a[static_cast<size_t>(i)]);
    out.push_back(form.side_b[static_cast<size_t>(i)]);
  }
  for (int j = form.m; j < form.n; ++j) {
    out.push_back(form.side_b[static_cast<size_t>(j)]);
  }
  return out;
}

SymplecticMatrix schmidt_local_ops(const SchmidtForm &form) {
  const int total = form.m + form.n;
  ModeList a_slots, b_slots;
  for (int i = 0; i < form.m; ++i) {
    a_slots.push_back(2 * i + 1);
    b_slots.push_back(2 * i + 2);
  }
  for (int j = form.m; j < form.n; ++j) b_slots.push_back(form.m + j + 1);
  return embed(form.s_a, a_slots, total) * embed(form.s_b, b_slots, total);
}

CovarianceMatrix schmidt_target(const SchmidtForm &form) {
  std::vector<Matrix> parts;
  for (double r : form.r) parts.push_back(two_mode_squeezed(r).matrix());
  if (form.n > form.m) {
    parts.push_back(Matrix::Identity(2 * (form.n - form.m), 2 * (form.n - form.m)));
  }
  return CovarianceMatrix(direct_sum(parts));
}

}  // namespace symplectica
