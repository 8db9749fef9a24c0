#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "anacomp/construction/decode.hpp"
#include "anacomp/construction/kappa.hpp"
#include "anacomp/errors.hpp"
#include "anacomp/parallel.hpp"
#include "anacomp/recovery/decode_circle.hpp"
#include "anacomp/recovery/decode_kron.hpp"
#include "anacomp/recovery/decode_result.hpp"
#include "anacomp/recovery/decode_sparse.hpp"
#include "anacomp/recovery/ensemble.hpp"
#include "anacomp/recovery/models.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::recovery {

struct ExperimentConfig {
  SignalModel model = SparseModel{20, 3};
  std::vector<std::size_t> n_values{4};
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  double tol = 1e-8;
  int restarts = 8;
  // A trial counts as correct when ||x_hat - x|| <= match_tol (1 + ||x||).
  double match_tol = 1e-6;
  // Draw one A per n instead of one per trial.
  bool fixed_A = false;
  unsigned threads = 0;
};

// Stream ids mixed into the per-trial seed derive_seed(base_seed, n, trial).
inline constexpr std::uint64_t kSignalStream = 1;
inline constexpr std::uint64_t kMatrixStream = 2;
inline constexpr std::uint64_t kSolverStream = 3;
inline constexpr std::uint64_t kFixedMatrixTrial = ~std::uint64_t{0};

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  DecodeStatus status = DecodeStatus::error_symbol;
  double residual = 0.0;
  std::size_t work = 0;
  bool correct = false;
  bool solver_failure = false;
};

struct RecoveryStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double recovered_rate = 0.0;
  double wrong_rate = 0.0;  // recovered, but not the true signal
  double ambiguity_rate = 0.0;
  double error_symbol_rate = 0.0;
  std::size_t solver_failures = 0;
  double mean_residual = 0.0;  // over trials with a finite residual
  double mean_work = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  ModelMetadata metadata;
  std::vector<RecoveryStats> stats;
  std::vector<TrialRecord> trials;
};

namespace detail {

inline TrialRecord run_graph_trial(const GraphModel& g, const construction::KappaTruncation<double>& trunc,
                                   std::uint64_t trial_seed) {
  Rng rng(derive_seed(trial_seed, kSignalStream));
  GraphPoint p = sample_graph_point(rng, g.L);
  double y = construction::kappa(p.z1, p.z2, trunc);
  // The only admissible tolerance scale here is the depth-L separation.
  double e3_tol = construction::separation_lower_bound(g.L, trunc) / 4;
  auto res = construction::decode_from_e3(y, trunc, e3_tol);
  TrialRecord rec;
  rec.work = res.nodes_visited;
  if (res.is_error_symbol()) {
    rec.status = DecodeStatus::error_symbol;
    rec.residual = std::numeric_limits<double>::infinity();
    return rec;
  }
  rec.status = DecodeStatus::recovered;
  double cx = res.square->center_x.convert_to<double>();
  double cy = res.square->center_y.convert_to<double>();
  rec.residual = std::abs(y - construction::kappa(cx, cy, trunc));
  rec.correct = res.square->index == p.square;
  return rec;
}

inline TrialRecord run_linear_trial(const ExperimentConfig& cfg, std::size_t n, const Eigen::MatrixXd* fixed,
                                    std::uint64_t trial_seed) {
  const std::size_t m = ambient_dim(cfg.model);
  Eigen::VectorXd x = sample_signal(cfg.model, derive_seed(trial_seed, kSignalStream));
  MeasurementEnsemble a = fixed ? MeasurementEnsemble::from_matrix(*fixed)
                                : MeasurementEnsemble::gaussian(n, m, derive_seed(trial_seed, kMatrixStream));
  Eigen::VectorXd y = measure(a, x);

  DecodeResult res = std::visit(
      [&](const auto& model) -> DecodeResult {
        using M = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<M, SparseModel>) {
          return decode_sparse(a.matrix, y, model.s, cfg.tol);
        } else if constexpr (std::is_same_v<M, KronModel>) {
          KronSolveOptions opt;
          opt.tol = cfg.tol;
          opt.restarts = cfg.restarts;
          opt.seed = derive_seed(trial_seed, kSolverStream);
          return decode_kron(a.matrix, y, model, opt);
        } else if constexpr (std::is_same_v<M, CircleModel>) {
          return decode_circle(a.matrix, y, cfg.tol);
        } else {
          throw InternalInconsistency("graphG handled separately");
        }
      },
      cfg.model);

  TrialRecord rec;
  rec.status = res.status;
  rec.residual = res.residual;
  rec.work = res.work.total();
  rec.solver_failure = res.solver_failure;
  rec.correct = res.status == DecodeStatus::recovered && same_within(res.x_hat, x, cfg.match_tol);
  return rec;
}

inline RecoveryStats summarize(std::size_t n, const std::vector<TrialRecord>& recs) {
  RecoveryStats s;
  s.n = n;
  s.trials = recs.size();
  double finite_sum = 0.0;
  std::size_t finite = 0;
  double work = 0.0;
  std::size_t success = 0, recovered = 0, ambiguous = 0, errors = 0;
  for (const auto& r : recs) {
    success += r.correct;
    recovered += r.status == DecodeStatus::recovered;
    ambiguous += r.status == DecodeStatus::ambiguous;
    errors += r.status == DecodeStatus::error_symbol;
    s.solver_failures += r.solver_failure;
    if (std::isfinite(r.residual)) {
      finite_sum += r.residual;
      ++finite;
    }
    work += static_cast<double>(r.work);
  }
  if (s.trials == 0) return s;
  const auto t = static_cast<double>(s.trials);
  s.success_rate = static_cast<double>(success) / t;
  s.recovered_rate = static_cast<double>(recovered) / t;
  s.wrong_rate = static_cast<double>(recovered - success) / t;
  s.ambiguity_rate = static_cast<double>(ambiguous) / t;
  s.error_symbol_rate = static_cast<double>(errors) / t;
  s.mean_residual = finite ? finite_sum / static_cast<double>(finite) : 0.0;
  s.mean_work = work / t;
  return s;
}

}  // namespace detail

inline void validate(const ExperimentConfig& cfg) {
  validate(cfg.model);
  if (cfg.trials == 0) throw InvalidInput("experiment: trials must be >= 1");
  if (cfg.n_values.empty()) throw InvalidInput("experiment: n_values is empty");
  if (!(cfg.tol > 0.0) || !(cfg.match_tol > 0.0)) throw InvalidInput("experiment: tolerances must be positive");
  if (cfg.restarts < 1) throw InvalidInput("experiment: restarts must be >= 1");
  const std::size_t m = ambient_dim(cfg.model);
  const bool graph = std::holds_alternative<GraphModel>(cfg.model);
  for (std::size_t n : cfg.n_values) {
    if (n == 0 || n > m) throw InvalidInput("experiment: need 1 <= n <= " + std::to_string(m));
    if (graph && n != 1) throw InvalidInput("experiment: graphG uses the single measurement e3, so n must be 1");
  }
}

// Trials for each n run in parallel; record i always lands in slot i, so the
// report does not depend on the thread count.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport report;
  report.config = cfg;
  report.metadata = model_metadata(cfg.model);

  std::optional<construction::KappaTruncation<double>> trunc;
  if (const auto* g = std::get_if<GraphModel>(&cfg.model)) trunc = construction::make_truncation<double>(g->L);

  for (std::size_t n : cfg.n_values) {
    std::optional<Eigen::MatrixXd> fixed;
    if (cfg.fixed_A && !trunc)
      fixed = MeasurementEnsemble::gaussian(n, ambient_dim(cfg.model),
                                            derive_seed(derive_seed(cfg.base_seed, n, kFixedMatrixTrial), kMatrixStream))
                  .matrix;
    std::vector<TrialRecord> recs(cfg.trials);
    parallel_for(
        cfg.trials,
        [&](std::size_t t) {
          const std::uint64_t seed = derive_seed(cfg.base_seed, n, t);
          TrialRecord rec = trunc ? detail::run_graph_trial(std::get<GraphModel>(cfg.model), *trunc, seed)
                                  : detail::run_linear_trial(cfg, n, fixed ? &*fixed : nullptr, seed);
          rec.n = n;
          rec.trial = t;
          recs[t] = rec;
        },
        cfg.threads);
    report.stats.push_back(detail::summarize(n, recs));
    report.trials.insert(report.trials.end(), recs.begin(), recs.end());
  }
  return report;
}

// ---- JSON / CSV ---------------------------------------------------------

inline nlohmann::json model_to_json(const SignalModel& model) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>)
          return {{"kind", "sparse"}, {"m", m.m}, {"s", m.s}};
        else if constexpr (std::is_same_v<M, KronModel>)
          return {{"kind", "kron"}, {"k", m.k}, {"l", m.l}, {"r", m.r}, {"t", m.t}};
        else if constexpr (std::is_same_v<M, CircleModel>)
          return {{"kind", "circle"}};
        else
          return {{"kind", "graphG"}, {"L", m.L}};
      },
      model);
}

inline SignalModel model_from_json(const nlohmann::json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sparse") return SparseModel{j.at("m").get<std::size_t>(), j.at("s").get<std::size_t>()};
    if (kind == "kron")
      return KronModel{j.at("k").get<std::size_t>(), j.at("l").get<std::size_t>(), j.at("r").get<std::size_t>(),
                       j.at("t").get<std::size_t>()};
    if (kind == "circle") return CircleModel{};
    if (kind == "graphG") return GraphModel{j.value("L", 3)};
    throw InvalidInput("unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("model: ") + e.what());
  }
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.model = model_from_json(j.at("model"));
    cfg.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    cfg.tol = j.value("tol", cfg.tol);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.match_tol = j.value("match_tol", cfg.match_tol);
    cfg.fixed_A = j.value("fixed_A", cfg.fixed_A);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("experiment config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {{"model", model_to_json(cfg.model)}, {"n_values", cfg.n_values}, {"trials", cfg.trials},
          {"base_seed", cfg.base_seed},       {"tol", cfg.tol},           {"restarts", cfg.restarts},
          {"match_tol", cfg.match_tol},       {"fixed_A", cfg.fixed_A}};
}

inline nlohmann::json to_json(const RecoveryStats& s) {
  return {{"n", s.n},
          {"trials", s.trials},
          {"success_rate", s.success_rate},
          {"recovered_rate", s.recovered_rate},
          {"wrong_rate", s.wrong_rate},
          {"ambiguity_rate", s.ambiguity_rate},
          {"error_symbol_rate", s.error_symbol_rate},
          {"solver_failures", s.solver_failures},
          {"mean_residual", s.mean_residual},
          {"mean_work", s.mean_work}};
}

inline nlohmann::json to_json(const ModelMetadata& md) {
  return {{"stochastic_sparsity", md.stochastic_sparsity},
          {"rect_parameter", md.rect_parameter},
          {"min_measurements_achievable", md.min_measurements_achievable},
          {"converse_floor", md.converse_floor}};
}

// Summary without run metadata; byte-identical for identical configs.
inline nlohmann::json summary_json(const ExperimentReport& r) {
  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : r.stats) stats.push_back(to_json(s));
  return {{"model", model_name(r.config.model)},
          {"config", to_json(r.config)},
          {"metadata", to_json(r.metadata)},
          {"stats", stats}};
}

inline void write_trials_csv(std::ostream& out, const ExperimentReport& r) {
  const std::string name = model_name(r.config.model);
  out << "model,n,trial,status,residual,work,correct,solver_failure\n";
  char buf[64];
  for (const auto& t : r.trials) {
    std::snprintf(buf, sizeof buf, "%.17g", t.residual);
    out << '"' << name << "\"," << t.n << ',' << t.trial << ',' << to_string(t.status) << ',' << buf << ','
        << t.work << ',' << (t.correct ? 1 : 0) << ',' << (t.solver_failure ? 1 : 0) << '\n';
  }
}

}  // namespace anacomp::recovery
