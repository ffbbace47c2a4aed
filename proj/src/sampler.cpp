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

#include "symplectica/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

namespace symplectica {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index),
      engine_(seeded_engine(seed, stream_index)) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::string_view ensemble_name(Ensemble e) {
  return e == Ensemble::General ? "general" : "blockdiag";
}

Ensemble parse_ensemble(std::string_view name) {
  if (name == "general") return Ensemble::General;
  if (name == "blockdiag") return Ensemble::BlockDiag;
  throw Error(ErrorCode::BadFormat,
              "unknown ensemble '" + std::string(name) + "'");
}

std::uint64_t sample_stream(int n, Ensemble e, std::uint64_t index) {
  return (static_cast<std::uint64_t>(n) << 48) |
         (static_cast<std::uint64_t>(e == Ensemble::General ? 0 : 1) << 40) |
         (index & ((std::uint64_t{1} << 40) - 1));
}

namespace {

void require_modes(int n) {
  if (n < 1) throw Error(ErrorCode::TooFewModes, "sampler needs n >= 1");
}

// Modified Gram-Schmidt on the columns. The triangular factor then has a
// positive diagonal, which is the phase convention that makes Q Haar.
template <typename Mat>
Mat gram_schmidt(Mat g) {
  const Eigen::Index n = g.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    }
    g.col(j) /= g.col(j).norm();
  }
  return g;
}

}  // namespace

SymplecticMatrix haar_orthogonal_symplectic(int n, RngStream &rng) {
  require_modes(n);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = {re, im};
    }
  }
  const Eigen::MatrixXcd u = gram_schmidt(g);
  Matrix blocked(2 * n, 2 * n);
  blocked << u.real(), u.imag(), -u.imag(), u.real();
  return SymplecticMatrix(to_interleaved(blocked));
}

SymplecticMatrix haar_blockdiag_orthogonal(int n, RngStream &rng) {
  require_modes(n);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  const Matrix r = gram_schmidt(g);
  Matrix blocked = Matrix::Zero(2 * n, 2 * n);
  blocked.block(0, 0, n, n) = r;
  blocked.block(n, n, n, n) = r;
  return SymplecticMatrix(to_interleaved(blocked));
}

std::vector<double> sample_squeezings(int n, double energy, RngStream &rng) {
  require_modes(n);
  const double excess = energy - 0.5 * n;
  if (!std::isfinite(energy) || excess < 0.0) {
    std::ostringstream os;
    os << "energy " << energy << " below the vacuum energy " << 0.5 * n;
    throw Error(ErrorCode::EnergyBelowVacuum, os.str());
  }
  // Normalised exponentials are uniform on the simplex.
  std::vector<double> w(static_cast<size_t>(n));
  double total = 0.0;
  for (double &x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  std::vector<double> z(static_cast<size_t>(n));
  for (size_t j = 0; j < z.size(); ++j) {
    const double eps = 0.5 + excess * (total > 0.0 ? w[j] / total : 1.0 / n);
    const double z2 = 2.0 * eps + std::sqrt(std::max(4.0 * eps * eps - 1.0, 0.0));
    z[j] = std::sqrt(z2);
  }
  return z;
}

CovarianceMatrix sample_pure(int n, double energy, Ensemble e, RngStream &rng) {
  const SymplecticMatrix o = e == Ensemble::General
                                 ? haar_orthogonal_symplectic(n, rng)
                                 : haar_blockdiag_orthogonal(n, rng);
  const std::vector<double> z = sample_squeezings(n, energy, rng);
  Vector z2(2 * n);
  for (int j = 0; j < n; ++j) {
    const double s = z[static_cast<size_t>(j)] * z[static_cast<size_t>(j)];
    z2(2 * j) = s;
    z2(2 * j + 1) = 1.0 / s;
  }
  const Matrix &om = o.matrix();
  Matrix sigma = om.transpose() * z2.asDiagonal() * om;
  sigma = 0.5 * (sigma + sigma.transpose());
  CovarianceMatrix cm(sigma);
  require_pure(cm, 1e-8, "sampled state");
  if (std::abs(mean_energy(cm) - energy) > 1e-8 * std::max(1.0, energy)) {
    std::ostringstream os;
    os << "sampled state has energy " << mean_energy(cm) << ", expected "
       << energy;
    throw Error(ErrorCode::Unphysical, os.str());
  }
  return cm;
}

SchemeParams random_scheme_params(int n, RngStream &rng, double zmax) {
  const SchemeParamCount shape = scheme_shape(n);
  const double span = std::log(zmax);
  auto squeeze = [&] { return std::exp(span * (2.0 * rng.uniform() - 1.0)); };
  auto angle = [&] { return 2.0 * std::numbers::pi * rng.uniform(); };
  SchemeParams p;
  p.n = n;
  p.s = squeeze();
  for (int k = 0; k < shape.individual_squeezings; ++k) p.r.push_back(squeeze());
  for (int k = 0; k < shape.beam_splitters; ++k) p.b.push_back(angle());
  for (int k = 0; k < shape.seraphiques; ++k) p.c.push_back(angle());
  return p;
}

int threads_from_env() {
  const char *value = std::getenv("SYMPLECTICA_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  char *end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 0) {
    throw Error(ErrorCode::BadFormat,
                "SYMPLECTICA_THREADS must be a nonnegative integer");
  }
  return static_cast<int>(std::min(parsed, 1024L));
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig &config) {
  if (config.samples < 1) {
    throw Error(ErrorCode::BadFormat, "samples must be >= 1");
  }
  int threads = config.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  std::vector<ExperimentRecord> records;
  for (int n : config.n_values) {
    if (n < 2) {
      throw Error(ErrorCode::TooFewModes,
                  "one-vs-rest entropy needs at least two modes");
    }
    const double energy = config.energy_per_mode * n;
    for (Ensemble e : {Ensemble::General, Ensemble::BlockDiag}) {
      std::vector<double> entropy(static_cast<size_t>(config.samples));
      std::vector<std::exception_ptr> failure(static_cast<size_t>(threads));
      auto work = [&](int worker) {
        try {
          for (int k = worker; k < config.samples; k += threads) {
            RngStream rng(config.seed,
                          sample_stream(n, e, static_cast<std::uint64_t>(k)));
            const CovarianceMatrix sigma = sample_pure(n, energy, e, rng);
            entropy[static_cast<size_t>(k)] =
                entanglement_entropy(sigma, {1}, 1e-8);
          }
        } catch (...) {
          failure[static_cast<size_t>(worker)] = std::current_exception();
        }
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (std::thread &t : pool) t.join();
      }
      for (const auto &f : failure) {
        if (f) std::rethrow_exception(f);
      }
      // Fold in index order so the sums do not depend on scheduling.
      double sum = 0.0;
      for (double s : entropy) sum += s;
      const double mean = sum / config.samples;
      double sq = 0.0;
      for (double s : entropy) sq += (s - mean) * (s - mean);
      const double stddev =
          config.samples > 1 ? std::sqrt(sq / (config.samples - 1)) : 0.0;
      records.push_back(ExperimentRecord{
          n, e, config.samples, energy, mean, stddev,
          stddev / std::sqrt(static_cast<double>(config.samples))});
    }
  }
  return records;
}

std::string experiment_csv(const std::vector<ExperimentRecord> &records) {
  std::string out = "n,ensemble,samples,energy,mean_entropy,stddev,stderr\n";
  char line[256];
  for (const ExperimentRecord &r : records) {
    std::snprintf(line, sizeof line, "%d,%s,%d,%.12g,%.12g,%.12g,%.12g\n", r.n,
                  std::string(ensemble_name(r.ensemble)).c_str(), r.samples,
                  r.energy, r.mean_entropy, r.stddev, r.std_error);
    out += line;
  }
  return out;
}

}  // namespace symplectica
