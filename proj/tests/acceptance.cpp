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

// Acceptance checks. Prints one PASS/FAIL line per check and exits nonzero
// if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "symplectica/engineer.hpp"
#include "symplectica/sampler.hpp"
#include "symplectica/schmidt.hpp"
#include "symplectica/standardform.hpp"
#include "test_util.hpp"

using namespace symplectica;
using namespace symplectica::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

int failures = 0;

void check(const char *name, double limit_seconds, const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", name,
              o.detail.c_str(), elapsed, limit_seconds, in_time ? "" : " TOO SLOW");
  std::fflush(stdout);
}

Matrix omega(int n) {
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    w(2 * j, 2 * j + 1) = 1.0;
    w(2 * j + 1, 2 * j) = -1.0;
  }
  return w;
}

double symplectic_residual(const Matrix &s) {
  const int n = static_cast<int>(s.rows() / 2);
  return max_abs(s * omega(n) * s.transpose() - omega(n));
}

double purity_defect(const Matrix &sigma) {
  const int n = static_cast<int>(sigma.rows() / 2);
  const Matrix w = omega(n);
  return max_abs(-sigma * w * sigma * w - Matrix::Identity(2 * n, 2 * n));
}

double entropy_oracle(double nu) {
  if (nu <= 1.0) return 0.0;
  const double p = 0.5 * (nu + 1.0), q = 0.5 * (nu - 1.0);
  return p * std::log(p) - q * std::log(q);
}

Matrix tms(double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  Matrix m(4, 4);
  m << c, 0, s, 0, 0, c, 0, -s, s, 0, c, 0, 0, -s, 0, c;
  return m;
}

Matrix rot(double t) {
  Matrix r(2, 2);
  r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return r;
}

// Squeezings log-uniform in [1/2, 2]; seraphique angles in [clo, chi].
SchemeParams random_params(int n, Rng &rng, double clo = 0.0,
                           double chi = 2 * std::numbers::pi) {
  const SchemeParamCount shape = scheme_shape(n);
  auto squeeze = [&] { return std::exp(uniform(rng, -std::log(2.0), std::log(2.0))); };
  SchemeParams p;
  p.n = n;
  p.s = squeeze();
  for (int k = 0; k < shape.individual_squeezings; ++k) p.r.push_back(squeeze());
  p.b = random_values(shape.beam_splitters, 0.0, 2 * std::numbers::pi, rng);
  p.c = random_values(shape.seraphiques, clo, chi, rng);
  return p;
}

Outcome decompositions() {
  Rng rng(1001);
  double wrec = 0, wsym = 0, erec = 0, esym = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    const CovarianceMatrix sigma(random_cm(n, 5.0, 3.0, rng));
    const double scale = max_abs(sigma.matrix());
    const WilliamsonResult w = williamson(sigma);
    const Matrix back = w.s.matrix().transpose() *
                        thermal_diag(w.nu.values) * w.s.matrix();
    wrec = std::max(wrec, max_abs(back - sigma.matrix()) / scale);
    wsym = std::max(wsym, symplectic_residual(w.s.matrix()));

    const EulerFactors f = euler_decompose(w.s);
    const Matrix &s = w.s.matrix();
    const Matrix prod = f.left.matrix() * squeeze_diag(f.z) * f.right.matrix();
    erec = std::max(erec, max_abs(prod - s) / max_abs(s));
    esym = std::max({esym, symplectic_residual(f.left.matrix()),
                     symplectic_residual(f.right.matrix())});
  }
  return {wrec <= 1e-8 && wsym <= 1e-9 && erec <= 1e-8 && esym <= 1e-9,
          fmt("1000 states; williamson rec %.2e sym %.2e; euler rec %.2e sym %.2e", wrec,
              wsym, erec, esym)};
}

Outcome purity_suite() {
  Rng rng(1002);
  double pur = 0, dt = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 200; ++k) {
      const Matrix sigma = apply_scheme(random_params(n, rng)).matrix();
      pur = std::max(pur, purity_defect(sigma));
      dt = std::max(dt, std::abs(sigma.determinant() - 1.0));
    }
  }
  return {pur <= 1e-9 && dt <= 1e-8,
          fmt("1400 engineered states; max purity defect %.2e; max |det-1| %.2e", pur, dt)};
}

Outcome counting() {
  const int pure_inv[] = {0, 1, 3, 8, 15, 24, 35, 48, 63, 80};
  int bad = 0;
  for (int n = 1; n <= 10; ++n) {
    const DofTable t = dof(n);
    const int mixed_inv = n == 1 ? 1 : 2 * n * n - 2 * n;
    bad += t.n != n;
    bad += t.mixed_total != 2 * n * n + n;
    bad += t.mixed_invariant != mixed_inv;
    bad += t.pure_total != n * n + n;
    bad += t.pure_invariant != pure_inv[n - 1];
    bad += t.blockdiag_invariant != n * (n - 1) / 2;
    if (n >= 3) bad += scheme_param_count(n).total() != t.pure_invariant;
  }
  bad += dof(3).mixed_invariant != 12;
  bad += dof(4).mixed_invariant != 24;
  return {bad == 0, fmt("n = 1..10; %d mismatches", bad)};
}

Outcome two_mode_reduction() {
  Rng rng(1004);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double r = uniform(rng, 0.0, 2.5);
    const Matrix local = direct_sum({random_local(2.0, rng), random_local(2.0, rng)});
    const CovarianceMatrix sigma(
        Matrix(0.5 * (local.transpose() * tms(r) * local +
                      (local.transpose() * tms(r) * local).transpose())));
    worst = std::max(worst, std::abs(reduce_pure_two_mode(sigma).r - r));
  }
  return {worst <= 1e-7, fmt("500 states; max |r error| %.2e", worst)};
}

Outcome annihilation() {
  Rng rng(1005);
  double worst3 = 0;
  for (int k = 0; k < 200; ++k) {
    const CovarianceMatrix sigma = apply_scheme(random_params(3, rng));
    worst3 = std::max(worst3, max_abs(blocks(annihilate_xp_three_mode(sigma).sigma_std).sigma_xp));
  }
  double least4 = INFINITY;
  for (int k = 0; k < 100; ++k) {
    const CovarianceMatrix sigma = apply_scheme(random_params(4, rng, 0.3, 1.2));
    least4 = std::min(least4, max_abs(blocks(reduce_mixed(sigma).sigma_std).sigma_xp));
  }
  return {worst3 <= 1e-7 && least4 > 1e-3,
          fmt("3 modes: max |sigma_xp| %.2e; 4 modes: min |sigma_xp| %.3e", worst3, least4)};
}

// Paired-layout Schmidt form dressed with local symplectics, scattered over
// random mode labels.
struct Planted {
  Matrix sigma;
  ModeList side_a;
  std::vector<double> r;
};

Planted plant(int m, int n, std::vector<double> r, Rng &rng) {
  const int total = m + n;
  Matrix form = Matrix::Identity(2 * total, 2 * total);
  for (int i = 0; i < m; ++i) form.block(4 * i, 4 * i, 4, 4) = tms(r[static_cast<size_t>(i)]);
  std::vector<int> a_slots, b_slots;
  for (int i = 0; i < m; ++i) {
    a_slots.push_back(2 * i);
    b_slots.push_back(2 * i + 1);
  }
  for (int j = m; j < n; ++j) b_slots.push_back(m + j);
  Matrix local = Matrix::Zero(2 * total, 2 * total);
  auto place = [&](const Matrix &op, const std::vector<int> &slots) {
    for (size_t x = 0; x < slots.size(); ++x)
      for (size_t y = 0; y < slots.size(); ++y)
        local.block(2 * slots[x], 2 * slots[y], 2, 2) =
            op.block(2 * static_cast<Eigen::Index>(x), 2 * static_cast<Eigen::Index>(y), 2, 2);
  };
  place(random_symplectic(m, 2.0, rng), a_slots);
  place(random_symplectic(n, 2.0, rng), b_slots);
  const Matrix dressed = local.transpose() * form * local;
  std::vector<int> labels(static_cast<size_t>(total));
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  Matrix sigma(2 * total, 2 * total);
  for (int x = 0; x < total; ++x)
    for (int y = 0; y < total; ++y)
      sigma.block(2 * (labels[static_cast<size_t>(x)] - 1),
                  2 * (labels[static_cast<size_t>(y)] - 1), 2, 2) = dressed.block(2 * x, 2 * y, 2, 2);
  Planted out{0.5 * (sigma + sigma.transpose()), {}, r};
  for (int s : a_slots) out.side_a.push_back(labels[static_cast<size_t>(s)]);
  std::sort(out.r.rbegin(), out.r.rend());
  return out;
}

Outcome schmidt_suite() {
  Rng rng(1006);
  double rerr = 0, rec = 0, ent = 0;
  int trials = 0;
  for (int m = 1; m <= 3; ++m) {
    for (int n = m; m + n <= 7; ++n) {
      for (int k = 0; k < 40; ++k, ++trials) {
        const Planted p = plant(m, n, random_values(m, 0.0, 2.0, rng), rng);
        const CovarianceMatrix sigma(p.sigma);
        const SchmidtForm f = schmidt_decompose(sigma, p.side_a);
        for (int i = 0; i < m; ++i) rerr = std::max(rerr, std::abs(f.r[i] - p.r[i]));
        const Matrix got = conjugate_cm(reduced(sigma, paired_layout(f)).matrix(),
                                        schmidt_local_ops(f));
        Matrix target = Matrix::Identity(2 * (m + n), 2 * (m + n));
        for (int i = 0; i < m; ++i) target.block(4 * i, 4 * i, 4, 4) = tms(p.r[i]);
        rec = std::max(rec, max_abs(got - target));
        double expected = 0;
        for (double ri : f.r) expected += entropy_oracle(std::cosh(ri));
        ent = std::max(ent, std::abs(entanglement_entropy(sigma, p.side_a, 1e-8) - expected));
      }
    }
  }
  return {rerr <= 1e-7 && rec <= 1e-7 && ent <= 1e-7,
          fmt("%d states; r err %.2e; reconstruction %.2e; entropy %.2e", trials, rerr, rec,
              ent)};
}

Outcome redundancy() {
  Rng rng(1007);
  double first = 0, second = 0, redu1 = 0, redu2 = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 6;
    const Matrix x = random_spd(n, rng);
    const Matrix xp = random_symmetric(n, rng) * x.inverse();
    const CmBlocks b = blocks(complete_pure(x, xp));
    const Matrix id = Matrix::Identity(n, n);
    const Matrix &sx = b.sigma_x, &sp = b.sigma_p, &sxp = b.sigma_xp;
    const Matrix sxpt = sxp.transpose();
    first = std::max(first, max_abs(sx * sp - id - sxp * sxp));
    second = std::max(second, max_abs(sxp * sx - sx * sxpt));
    redu1 = std::max(redu1, max_abs(sp * sx - id - sxpt * sxpt));
    redu2 = std::max(redu2, max_abs(sxpt * sp - sp * sxp));
  }
  return {first <= 1e-9 && second <= 1e-9 && redu1 <= 1e-9 && redu2 <= 1e-9,
          fmt("500 states; given %.2e, %.2e; implied %.2e, %.2e", first, second, redu1,
              redu2)};
}

Outcome tms_orbit() {
  Rng rng(1008);
  int passed = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix local = direct_sum({rot(uniform(rng, 0, 2 * std::numbers::pi)),
                                     rot(uniform(rng, 0, 2 * std::numbers::pi))});
    const Matrix m = local.transpose() * tms(uniform(rng, 0.0, 2.5)) * local;
    passed += check_tms_rotation_orbit(CovarianceMatrix(Matrix(0.5 * (m + m.transpose()))));
  }
  return {passed == 500, fmt("%d/500 states on the orbit", passed)};
}

constexpr std::uint64_t kExperimentSeed = 2026;

ExperimentConfig experiment_config() {
  ExperimentConfig c;
  c.n_values = {4, 5, 6, 7, 8};
  c.energy_per_mode = 5.0;
  c.samples = 2000;
  c.seed = kExperimentSeed;
  c.threads = 1;
  return c;
}

std::string first_csv;

Outcome typical_entanglement() {
  const std::vector<ExperimentRecord> rec = run_experiment(experiment_config());
  first_csv = experiment_csv(rec);
  std::vector<double> gap, se;
  for (size_t k = 0; k + 1 < rec.size(); k += 2) {
    gap.push_back(rec[k].mean_entropy - rec[k + 1].mean_entropy);
    se.push_back(std::hypot(rec[k].std_error, rec[k + 1].std_error));
  }
  bool separated = true, ordered = true;
  std::string detail = "gaps";
  for (size_t i = 0; i < gap.size(); ++i) {
    separated = separated && gap[i] > 3.0 * se[i];
    detail += fmt(" n=%d %.4f(+-%.4f)", rec[2 * i].n, gap[i], se[i]);
    if (i > 0) ordered = ordered && gap[i] >= gap[i - 1] - std::hypot(se[i], se[i - 1]);
  }
  detail += separated ? "; all > 3 se" : "; NOT separated";
  detail += ordered ? "; nondecreasing within 1 se" : "; NOT nondecreasing";
  return {separated && ordered, detail};
}

Outcome determinism() {
  const std::string again = experiment_csv(run_experiment(experiment_config()));
  return {!first_csv.empty() && again == first_csv,
          fmt("%zu CSV bytes, %s", again.size(),
              again == first_csv ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  check("decomposition round-trips", 30, decompositions);
  check("purity of engineered states", 30, purity_suite);
  check("parameter counting table", 1, counting);
  check("two-mode reduction", 10, two_mode_reduction);
  check("three-mode xp annihilation and four-mode obstruction", 20, annihilation);
  check("schmidt decomposition", 30, schmidt_suite);
  check("redundant purity conditions", 10, redundancy);
  check("two-mode squeezed rotation orbit", 5, tms_orbit);
  check("typical entanglement ordering", 180, typical_entanglement);
  check("experiment determinism", 180, determinism);
  std::printf("%d of 10 checks failed\n", failures);
  return failures == 0 ? 0 : 1;
}
