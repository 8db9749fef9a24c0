// Box-counting slopes of the Cantor set, the Sierpinski gasket and the
// harmonic set {0, 1/2, 1/3, ...}, next to their similarity dimensions.

#include <cmath>
#include <cstdio>
#include <vector>

#include "anacomp/dimension/estimate.hpp"
#include "anacomp/dimension/ifs.hpp"

using namespace anacomp::dimension;

namespace {

void report(const char* name, const DimensionEstimate& est, double reference) {
  std::printf("%-22s global %.4f  lower %.4f  upper %.4f  reference %.4f\n", name, est.slope_global,
              est.slope_lower, est.slope_upper, reference);
  for (const auto& w : est.warnings) std::printf("  warning: %s\n", w.c_str());
}

}  // namespace

int main() {
  auto cantor = ifs_generate(IfsSystem::cantor(), Deterministic{10});
  report("cantor (depth 10)", estimate_minkowski(cantor, ScaleLadder::geometric(3, 2, 9)),
         attractor_dimension(IfsSystem::cantor().ratios()).value);

  auto gasket = ifs_generate(IfsSystem::sierpinski(), ChaosGame{200000, 1});
  report("sierpinski (chaos)", estimate_minkowski(gasket, ScaleLadder::geometric(2, 1, 7)),
         attractor_dimension(IfsSystem::sierpinski().ratios()).value);

  std::vector<double> h{0.0};
  for (int i = 2; i <= 2000; ++i) h.push_back(1.0 / i);
  auto f = PointSet::from_values(h);
  auto ladder = ScaleLadder::geometric(2, 3, 10);
  report("harmonic set", estimate_minkowski(f, ladder), 0.5);
  report("harmonic, singletons", estimate_modified(Partition::singletons(f), ladder).combined, 0.0);
}
