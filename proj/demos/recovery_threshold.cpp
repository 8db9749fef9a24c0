// Success rate of the consistency decoder against the number of
// measurements n for s-sparse, Kronecker and circle signals.

#include <cstdio>

#include "anacomp/recovery/experiment.hpp"

using namespace anacomp::recovery;

namespace {

void sweep(SignalModel model, std::vector<std::size_t> ns, std::size_t trials) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.n_values = std::move(ns);
  cfg.trials = trials;
  cfg.base_seed = 11;
  cfg.restarts = 20;
  auto md = model_metadata(model);
  auto report = run_experiment(cfg);
  std::printf("%s  (S = %zu, rectifiable parameter %zu)\n", model_name(model).c_str(), md.stochastic_sparsity,
              md.rect_parameter);
  for (const auto& s : report.stats)
    std::printf("  n=%zu  success %.3f  ambiguous %.3f  error %.3f\n", s.n, s.success_rate, s.ambiguity_rate,
                s.error_symbol_rate);
}

}  // namespace

int main() {
  sweep(SparseModel{12, 3}, {1, 2, 3, 4, 5}, 100);
  sweep(KronModel{4, 4, 2, 2}, {2, 3, 4}, 40);
  sweep(CircleModel{}, {1, 2}, 200);
}
