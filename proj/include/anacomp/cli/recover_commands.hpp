#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "anacomp/cli/common.hpp"
#include "anacomp/cli/context.hpp"
#include "anacomp/nullspace/verifier.hpp"
#include "anacomp/recovery/ensemble.hpp"
#include "anacomp/recovery/experiment.hpp"

namespace anacomp::cli {

struct NullspaceOptions {
  std::size_t n = 4;
  std::size_t m = 20;
  std::size_t s = 3;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  double threshold = nullspace::kDefaultThreshold;
  bool support_csv = false;
};

inline void register_recover(CLI::App& app, Context& ctx) {
  auto* rec = app.add_subcommand("recover", "Recovery experiments and null-space checks");
  rec->require_subcommand(1);

  {
    auto* sub = rec->add_subcommand("run", "Monte Carlo recovery experiment from a JSON config");
    auto config = std::make_shared<std::string>();
    auto threads = std::make_shared<unsigned>(0);
    auto dir = add_output_dir(sub);
    sub->add_option("--config", *config, "Experiment config JSON")->required();
    sub->add_option("--threads", *threads, "Worker threads (0: all cores); results do not depend on it");
    sub->callback([&ctx, config, threads, dir] {
      ctx.action = [&ctx, config, threads, dir] {
        auto cfg = recovery::config_from_json(read_json_file(*config));
        cfg.threads = *threads;
        auto report = recovery::run_experiment(cfg);
        OutputDir outdir(*dir);
        outdir.write("trials.csv", [&](std::ostream& o) { recovery::write_trials_csv(o, report); });
        outdir.write_json("summary.json", recovery::summary_json(report));
        ctx.out << "model " << recovery::model_name(cfg.model) << "\n";
        for (const auto& s : report.stats)
          ctx.out << "n " << s.n << " success " << fmt_g(s.success_rate, 6) << " ambiguous "
                  << fmt_g(s.ambiguity_rate, 6) << " error_symbol " << fmt_g(s.error_symbol_rate, 6)
                  << " solver_failures " << s.solver_failures << "\n";
        return int(kOk);
      };
    });
  }

  {
    auto* sub = rec->add_subcommand("nullspace", "Restricted singular values of Gaussian matrices over s-sparse supports");
    auto o = std::make_shared<NullspaceOptions>();
    auto dir = add_output_dir(sub);
    sub->add_option("--n", o->n, "Rows")->required();
    sub->add_option("--m", o->m, "Columns")->required();
    sub->add_option("--s", o->s, "Sparsity")->required();
    sub->add_option("--trials", o->trials, "Number of Gaussian draws");
    sub->add_option("--seed", o->seed, "Base seed");
    sub->add_option("--threshold", o->threshold, "Singular-value threshold")->check(CLI::PositiveNumber);
    sub->add_flag("--support-csv", o->support_csv, "Also write per-support minima of the first draw");
    sub->callback([&ctx, o, dir] {
      ctx.action = [&ctx, o, dir] {
        if (o->n == 0 || o->n > o->m) throw InvalidInput("need 1 <= n <= m");
        auto rep = nullspace::monte_carlo_nullspace(o->n, o->m, o->s, o->trials, o->seed, o->threshold);
        OutputDir outdir(*dir);
        if (o->support_csv) {
          auto a = recovery::MeasurementEnsemble::gaussian(o->n, o->m, derive_seed(o->seed, 0));
          auto first = nullspace::check_sparse_nullspace(a.matrix, o->s, o->threshold);
          outdir.write("support_minima.csv", [&](std::ostream& out) { nullspace::write_support_minima_csv(out, first); });
        }
        outdir.write_json("nullspace.json", nullspace::to_json(rep));
        ctx.out << "trials " << rep.trials << " failures " << rep.failures << " global_min " << fmt_g(rep.global_min, 6)
                << "\n";
        if (rep.boundary_caveat) ctx.out << "note: s == n lies outside the strict inequality s < n\n";
        return int(kOk);
      };
    });
  }
}

}  // namespace anacomp::cli
