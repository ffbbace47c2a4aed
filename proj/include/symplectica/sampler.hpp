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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "symplectica/engineer.hpp"
#include "symplectica/gstate.hpp"

namespace symplectica {

/// Reproducible random stream. Uniforms and normals are derived from the raw
/// 64-bit engine output by fixed formulas, so draws match across standard
/// libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  double uniform();  // [0, 1)
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class Ensemble { General, BlockDiag };

std::string_view ensemble_name(Ensemble e);
Ensemble parse_ensemble(std::string_view name);

/// Stream index for draw `index` of the (n, ensemble) cell.
std::uint64_t sample_stream(int n, Ensemble e, std::uint64_t index);

SymplecticMatrix haar_orthogonal_symplectic(int n, RngStream &rng);
SymplecticMatrix haar_blockdiag_orthogonal(int n, RngStream &rng);

/// Per-mode energies uniform on {sum eps_j = E, eps_j >= 1/2}, mapped to the
/// squeezing z_j >= 1 with (z_j^2 + z_j^-2) / 4 = eps_j.
std::vector<double> sample_squeezings(int n, double energy, RngStream &rng);

/// sigma = O^T Z^2 O with O from the ensemble's Haar measure.
CovarianceMatrix sample_pure(int n, double energy, Ensemble e, RngStream &rng);

/// Scheme parameters with log-uniform squeezings in [1/zmax, zmax] and
/// uniform angles.
SchemeParams random_scheme_params(int n, RngStream &rng, double zmax = 2.0);

struct ExperimentRecord {
  int n;
  Ensemble ensemble;
  int samples;
  double energy;
  double mean_entropy;  // nats
  double stddev;
  double std_error;
};

struct ExperimentConfig {
  std::vector<int> n_values;
  double energy_per_mode = 5.0;
  int samples = 2000;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 picks the hardware concurrency
};

/// One-vs-rest entropy of mode 1, per n and ensemble (general first).
/// Results do not depend on the thread count.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig &config);

std::string experiment_csv(const std::vector<ExperimentRecord> &records);

/// Thread count from SYMPLECTICA_THREADS (0 or unset means automatic).
int threads_from_env();

inline constexpr std::string_view kMeasureName =
    "haar-orbit/uniform-simplex-mode-energy";

}  // namespace symplectica
