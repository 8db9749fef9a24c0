// Builds the truncated kappa series, certifies that it separates the
// depth-L square centers and decodes a few points from e3 . h(z) alone.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "anacomp/construction/certificate.hpp"
#include "anacomp/construction/decode.hpp"
#include "anacomp/construction/kappa.hpp"
#include "anacomp/seeding.hpp"
#include "anacomp/recovery/models.hpp"

using namespace anacomp;
using namespace anacomp::construction;

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 3;
  auto trunc = make_truncation<double>(L);
  for (int k = 1; k <= L; ++k)
    std::printf("k=%d  M_hat %.4g  weight %.4g  separation bound %.4g\n", k, trunc.m(k), trunc.weight(k),
                separation_lower_bound(k, trunc));

  auto cert = certify_injectivity(trunc);
  std::printf("certificate: %zu/%zu pairs pass\n", cert.passed, cert.pairs.size());

  const double tol = separation_lower_bound(L, trunc) / 4;
  Rng rng(42);
  for (int i = 0; i < 5; ++i) {
    auto p = recovery::sample_graph_point(rng, L);
    double y = kappa(p.z1, p.z2, trunc);
    auto res = decode_from_e3(y, trunc, tol);
    std::printf("z = (%.4f, %.4f)  kappa %.17g  square %llu  decoded %s\n", p.z1, p.z2, y,
                static_cast<unsigned long long>(p.square),
                res.square ? std::to_string(res.square->index).c_str() : "error");
  }
}
