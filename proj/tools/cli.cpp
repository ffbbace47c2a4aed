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

#include "cli.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "symplectica/engineer.hpp"
#include "symplectica/io.hpp"
#include "symplectica/sampler.hpp"
#include "symplectica/schmidt.hpp"
#include "symplectica/standardform.hpp"

namespace symplectica {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  double tol = 0.0;  // 0 keeps the defaults
  std::string ordering;

  Tolerances tolerances() const {
    if (tol <= 0.0) return {};
    Tolerances t;
    t.sym = t.orth = t.rec = t.symp = t.phys = t.pure = tol;
    return t;
  }

  std::optional<ModeOrdering> order() const {
    if (ordering.empty()) return std::nullopt;
    return parse_ordering(ordering);
  }
};

int parse_int(const std::string &text, const char *what) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

ModeList parse_modes(const std::string &text) {
  ModeList modes;
  for (const std::string &p : split(text, ',')) modes.push_back(parse_int(p, "mode"));
  if (modes.empty()) throw UsageError("empty mode list");
  return modes;
}

// "4..8", "4,6,8" or "5".
std::vector<int> parse_n_values(const std::string &text) {
  std::vector<int> values;
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots), "mode count");
    const int hi = parse_int(text.substr(dots + 2), "mode count");
    if (hi < lo) throw UsageError("empty mode-count range '" + text + "'");
    for (int n = lo; n <= hi; ++n) values.push_back(n);
  } else {
    for (const std::string &p : split(text, ',')) values.push_back(parse_int(p, "mode count"));
  }
  if (values.empty()) throw UsageError("no mode counts given");
  return values;
}

Json load_json(const std::string &path) {
  return parse_json(read_text_file(path), path);
}

CovarianceMatrix load_cm(const std::string &path, const Globals &g) {
  return CovarianceMatrix(read_matrix_document(load_json(path), g.order()),
                          g.tolerances());
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

void emit(const Json &j, const std::string &path, std::ostream &out) {
  emit(j.dump(2) + "\n", path, out);
}

Json ops_to_json(const std::vector<SymplecticMatrix> &ops) {
  Json list = Json::array();
  for (const SymplecticMatrix &op : ops) list.push_back(matrix_to_json(op.matrix()));
  return list;
}

Json standard_form_json(const char *mode, const StandardFormResult &r) {
  Json j;
  j["mode"] = mode;
  j["sigma_std"] = cm_to_json(r.sigma_std.matrix());
  j["local_eigenvalues"] = r.local_eigenvalues;
  j["local_ops"] = ops_to_json(r.local_ops);
  j["sigma_xp_norm"] = norm_inf(blocks(r.sigma_std).sigma_xp);
  return j;
}

Json record_json(const ExperimentRecord &r) {
  Json j;
  j["n"] = r.n;
  j["ensemble"] = ensemble_name(r.ensemble);
  j["samples"] = r.samples;
  j["energy"] = r.energy;
  j["mean_entropy"] = r.mean_entropy;
  j["stddev"] = r.stddev;
  j["stderr"] = r.std_error;
  return j;
}

using Handler = std::function<void()>;

class Cli {
 public:
  Cli(std::ostream &out) : out_(out) {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.set_version_flag("--version", std::string(kVersion));
    app_.add_option("--tol", g_.tol, "Override all numerical tolerances")
        ->check(CLI::PositiveNumber);
    app_.add_option("--ordering", g_.ordering,
                    "Quadrature ordering of input matrices without one")
        ->check(CLI::IsMember({"interleaved", "blocked"}));
    add_gen();
    add_check();
    add_simple_readers();
    add_standard_form();
    add_schmidt();
    add_engineer();
    add_dof();
    add_sample();
    add_experiment();
  }

  CLI::App &app() { return app_; }

  void run() {
    for (auto &[sub, handler] : handlers_) {
      if (sub->parsed()) {
        handler();
        return;
      }
    }
  }

 private:
  void on(CLI::App *sub, Handler h) { handlers_.emplace_back(sub, std::move(h)); }

  CLI::App *reader(const char *name, const char *help) {
    CLI::App *sub = app_.add_subcommand(name, help);
    sub->add_option("file", file_, "Covariance matrix JSON file")->required();
    return sub;
  }

  void add_gen() {
    CLI::App *gen = app_.add_subcommand("gen", "Generate a standard state");
    gen->require_subcommand(1);
    auto leaf = [&](const char *name, const char *help) {
      CLI::App *sub = gen->add_subcommand(name, help);
      sub->add_option("--out", out_path_, "Output file (default: stdout)");
      return sub;
    };
    CLI::App *vac = leaf("vacuum", "Vacuum of n modes");
    vac->add_option("--n", n_, "Number of modes")->required();
    on(vac, [this] { emit(cm_to_json(vacuum(n_).matrix()), out_path_, out_); });

    CLI::App *th = leaf("thermal", "Product of thermal modes");
    th->add_option("--nu", nu_, "Symplectic eigenvalues, comma separated")
        ->required()
        ->delimiter(',');
    on(th, [this] { emit(cm_to_json(thermal(nu_).matrix()), out_path_, out_); });

    CLI::App *tm = leaf("tmss", "Two-mode squeezed vacuum");
    tm->add_option("--r", r_, "Squeezing parameter")->required();
    on(tm, [this] {
      emit(cm_to_json(two_mode_squeezed(r_).matrix()), out_path_, out_);
    });
  }

  void add_check() {
    CLI::App *sub = reader("check", "Validate a covariance matrix");
    sub->add_flag("--pure", flag_, "Fail unless the state is pure");
    on(sub, [this] {
      const CovarianceMatrix sigma = load_cm(file_, g_);
      const bool pure = is_pure(sigma, g_.tolerances().pure);
      Json j;
      j["n"] = sigma.modes();
      j["physical"] = true;
      j["symplectic_eigenvalues"] = sigma.spectrum().values;
      j["purity"] = purity(sigma);
      j["purity_residual"] = purity_residual(sigma);
      j["pure"] = pure;
      emit(j, "", out_);
      if (flag_ && !pure) throw Error(ErrorCode::NotPure, "state is not pure");
    });
  }

  void add_simple_readers() {
    on(reader("spectrum", "Symplectic eigenvalues"), [this] {
      const CovarianceMatrix sigma = load_cm(file_, g_);
      Json j;
      j["n"] = sigma.modes();
      j["symplectic_eigenvalues"] = symplectic_eigenvalues(sigma).values;
      emit(j, "", out_);
    });

    on(reader("williamson", "Williamson decomposition"), [this] {
      const CovarianceMatrix sigma = load_cm(file_, g_);
      const WilliamsonResult w = williamson(sigma, g_.tolerances());
      Vector diag(2 * sigma.modes());
      for (int k = 0; k < sigma.modes(); ++k) {
        diag(2 * k) = diag(2 * k + 1) = w.nu.values[static_cast<size_t>(k)];
      }
      const Matrix back = conjugate_cm(Matrix(diag.asDiagonal()), w.s);
      Json j;
      j["nu"] = w.nu.values;
      j["S"] = matrix_to_json(w.s.matrix());
      j["reconstruction_residual"] =
          norm_inf(back - sigma.matrix()) / norm_inf(sigma.matrix());
      emit(j, "", out_);
    });

    CLI::App *eu = app_.add_subcommand("euler", "Euler decomposition of a symplectic matrix");
    eu->add_option("file", file_, "Symplectic matrix JSON file")->required();
    on(eu, [this] {
      const Tolerances tol = g_.tolerances();
      const Matrix m = read_matrix_document(load_json(file_), g_.order());
      const SymplecticMatrix s(m, scaled_symplectic_tol(m, tol.symp));
      const EulerFactors f = euler_decompose(s, tol);
      Json j;
      j["left"] = matrix_to_json(f.left.matrix());
      j["z"] = f.z;
      j["right"] = matrix_to_json(f.right.matrix());
      j["reconstruction_residual"] =
          norm_inf((f.left * f.squeeze * f.right).matrix() - m) / norm_inf(m);
      emit(j, "", out_);
    });

    on(reader("blocks", "Position, momentum and cross blocks"), [this] {
      const CmBlocks b = blocks(load_cm(file_, g_));
      Json j;
      j["sigma_x"] = matrix_to_json(b.sigma_x);
      j["sigma_p"] = matrix_to_json(b.sigma_p);
      j["sigma_xp"] = matrix_to_json(b.sigma_xp);
      emit(j, "", out_);
    });
  }

  void add_standard_form() {
    CLI::App *sub = reader("standard-form", "Local-unitary standard form");
    sub->add_option("--mode", mode_, "mixed, pure2 or pure3")
        ->check(CLI::IsMember({"mixed", "pure2", "pure3"}));
    on(sub, [this] {
      const CovarianceMatrix sigma = load_cm(file_, g_);
      const Tolerances tol = g_.tolerances();
      if (mode_ == "pure2") {
        const TwoModeReduction red = reduce_pure_two_mode(sigma, tol);
        Json j;
        j["mode"] = "pure2";
        j["r"] = red.r;
        j["local_ops"] = ops_to_json(red.local_ops);
        emit(j, "", out_);
      } else if (mode_ == "pure3") {
        emit(standard_form_json("pure3", annihilate_xp_three_mode(sigma, tol)), "", out_);
      } else {
        emit(standard_form_json("mixed", reduce_mixed(sigma, tol)), "", out_);
      }
    });
  }

  void add_schmidt() {
    CLI::App *sub = reader("schmidt", "Phase-space Schmidt decomposition");
    sub->add_option("--modes", modes_, "Side A as comma-separated 1-based modes")
        ->required();
    on(sub, [this] {
      const CovarianceMatrix sigma = load_cm(file_, g_);
      const ModeList side = parse_modes(modes_);
      const SchmidtForm f = schmidt_decompose(sigma, side, g_.tolerances());
      Json j;
      j["side_a"] = f.side_a;
      j["side_b"] = f.side_b;
      j["swapped"] = f.swapped;
      j["r"] = f.r;
      j["degenerate"] = f.degenerate;
      j["entropy"] = entanglement_entropy(sigma, side, 1e-8);
      emit(j, "", out_);
    });
  }

  void add_engineer() {
    CLI::App *sub = app_.add_subcommand("engineer", "Build a state from an optical network");
    sub->add_option("--params", params_path_, "Scheme parameter JSON file");
    sub->add_flag("--random", flag_, "Random scheme parameters");
    sub->add_option("--n", n_, "Number of modes (with --random)");
    sub->add_option("--seed", seed_, "Seed (with --random)");
    sub->add_option("--circuit", circuit_path_, "Circuit JSON file");
    sub->add_option("--out", out_path_, "Output state file (default: stdout)");
    sub->add_option("--circuit-out", circuit_out_, "Write the circuit used");
    on(sub, [this] {
      const int sources = (params_path_.empty() ? 0 : 1) + (flag_ ? 1 : 0) +
                          (circuit_path_.empty() ? 0 : 1);
      if (sources != 1) {
        throw UsageError("give exactly one of --params, --random, --circuit");
      }
      Circuit c;
      if (flag_) {
        if (n_ == 0 || !seed_) throw UsageError("--random needs --n and --seed");
        RngStream rng(*seed_, 0);
        c = build_scheme(random_scheme_params(n_, rng));
      } else if (!params_path_.empty()) {
        c = build_scheme(params_from_json(load_json(params_path_)));
      } else {
        c = circuit_from_json(load_json(circuit_path_));
      }
      const SymplecticMatrix s = circuit_to_symplectic(c);
      const CovarianceMatrix sigma(
          conjugate_cm(Matrix::Identity(2 * c.n, 2 * c.n), s), g_.tolerances());
      if (!circuit_out_.empty()) {
        write_file_atomic(circuit_out_, circuit_to_json(c).dump(2) + "\n");
      }
      emit(cm_to_json(sigma.matrix()), out_path_, out_);
    });
  }

  void add_dof() {
    CLI::App *sub = app_.add_subcommand("dof", "Parameter counting");
    sub->add_option("--n", n_, "Number of modes")->required();
    on(sub, [this] {
      const DofTable t = dof(n_);
      Json j;
      j["n"] = t.n;
      j["mixed_total"] = t.mixed_total;
      j["mixed_invariant"] = t.mixed_invariant;
      j["pure_total"] = t.pure_total;
      j["pure_invariant"] = t.pure_invariant;
      j["blockdiag_invariant"] = t.blockdiag_invariant;
      if (n_ >= 3) {
        const SchemeParamCount c = scheme_param_count(n_);
        j["scheme"] = {{"initial_squeezing", c.initial_squeezing},
                       {"individual_squeezings", c.individual_squeezings},
                       {"beam_splitters", c.beam_splitters},
                       {"seraphiques", c.seraphiques},
                       {"total", c.total()}};
      }
      emit(j, "", out_);
    });
  }

  void add_sample() {
    CLI::App *sub = app_.add_subcommand("sample", "Draw one random pure state");
    sub->add_option("--n", n_, "Number of modes")->required();
    sub->add_option("--seed", seed_, "Seed")->required();
    sub->add_option("--energy", energy_, "Total energy (default 5n)");
    sub->add_option("--ensemble", ensemble_, "general or blockdiag")
        ->check(CLI::IsMember({"general", "blockdiag"}));
    sub->add_option("--index", index_, "Draw index within the stream family");
    sub->add_option("--out", out_path_, "Output file (default: stdout)");
    on(sub, [this] {
      const Ensemble e = parse_ensemble(ensemble_);
      const double energy = energy_ ? *energy_ : 5.0 * n_;
      RngStream rng(*seed_, sample_stream(n_, e, index_));
      emit(cm_to_json(sample_pure(n_, energy, e, rng).matrix()), out_path_, out_);
    });
  }

  void add_experiment() {
    CLI::App *sub = app_.add_subcommand("experiment", "Typical entanglement experiment");
    sub->add_option("--n", n_values_, "Mode counts: a..b or a comma list")->required();
    sub->add_option("--samples", samples_, "Samples per cell")
        ->check(CLI::PositiveNumber);
    sub->add_option("--energy-per-mode", energy_per_mode_, "Energy per mode")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_, "Seed")->required();
    sub->add_flag("--csv", flag_, "Print CSV instead of JSON");
    sub->add_option("--out", out_path_, "Write CSV here plus a .meta.json sidecar");
    on(sub, [this] {
      ExperimentConfig config;
      config.n_values = parse_n_values(n_values_);
      config.samples = samples_;
      config.energy_per_mode = energy_per_mode_;
      config.seed = *seed_;
      config.threads = threads_from_env();
      const std::vector<ExperimentRecord> records = run_experiment(config);
      Json meta;
      meta["seed"] = config.seed;
      meta["measure"] = kMeasureName;
      meta["entropy_base"] = "nats";
      meta["version"] = kVersion;
      meta["n_values"] = config.n_values;
      meta["samples"] = config.samples;
      meta["energy_per_mode"] = config.energy_per_mode;
      const std::string csv = experiment_csv(records);
      if (!out_path_.empty()) {
        write_file_atomic(out_path_, csv);
        std::filesystem::path side(out_path_);
        side.replace_extension(".meta.json");
        write_file_atomic(side.string(), meta.dump(2) + "\n");
      } else if (flag_) {
        out_ << csv;
      } else {
        Json j;
        j["metadata"] = meta;
        j["records"] = Json::array();
        for (const ExperimentRecord &r : records) j["records"].push_back(record_json(r));
        emit(j, "", out_);
      }
    });
  }

  std::ostream &out_;
  CLI::App app_{"Symplectic analysis of multimode Gaussian states", "symplectica"};
  Globals g_;
  std::vector<std::pair<CLI::App *, Handler>> handlers_;

  std::string file_, out_path_, modes_, mode_ = "mixed";
  std::string params_path_, circuit_path_, circuit_out_;
  std::string ensemble_ = "general", n_values_;
  std::vector<double> nu_;
  double r_ = 0.0;
  int n_ = 0;
  bool flag_ = false;
  std::optional<std::uint64_t> seed_;
  std::optional<double> energy_;
  std::uint64_t index_ = 0;
  int samples_ = 2000;
  double energy_per_mode_ = 5.0;
};

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  Cli cli(out);
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("symplectica");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &s : storage) argv.push_back(s.data());
  try {
    cli.app().parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success &e) {
    return cli.app().exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    cli.run();
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BadFormat ? 2 : 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace symplectica
