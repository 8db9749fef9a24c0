#pragma once

#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "anacomp/cli/common.hpp"
#include "anacomp/cli/context.hpp"
#include "anacomp/construction/certificate.hpp"
#include "anacomp/construction/decode.hpp"
#include "anacomp/construction/io.hpp"
#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/real.hpp"
#include "anacomp/construction/squares.hpp"

namespace anacomp::cli {

struct ConstructOptions {
  int depth = 3;
  unsigned big_bits = 0;  // 0: double precision
  double grid_step = construction::kDefaultGridStep;
};

inline void add_construct_common(CLI::App* sub, ConstructOptions& o, bool with_big) {
  sub->add_option("--depth", o.depth, "Depth L of the nested squares")->check(CLI::PositiveNumber);
  if (with_big) {
    sub->add_option("--big", o.big_bits, "Use multiprecision floats with this many bits (e.g. 256)");
    sub->add_option("--grid-step", o.grid_step, "Finite-difference step for derivative bounds, in units of delta^2")
        ->check(CLI::PositiveNumber);
  }
}

inline construction::Precision precision_of(const ConstructOptions& o) {
  return o.big_bits ? construction::Precision::big_precision(o.big_bits) : construction::Precision::double_precision();
}

template <typename Real>
Real parse_real(const std::string& s) {
  if constexpr (std::is_same_v<Real, double>) {
    return parse_number(s);
  } else {
    try {
      return Real(s);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: '" + s + "'");
    }
  }
}

// Calls f.template operator()<Real>() with Real = double or BigFloat (inside
// a precision scope).
template <typename F>
int with_real(const ConstructOptions& o, F&& f) {
  if (o.big_bits == 0) return f.template operator()<double>();
  construction::BigPrecisionScope scope(o.big_bits);
  return f.template operator()<construction::BigFloat>();
}

inline void register_construct(CLI::App& app, Context& ctx) {
  auto* con = app.add_subcommand("construct", "Nested squares, the kappa map and its injectivity certificate");
  con->require_subcommand(1);

  {
    auto* sub = con->add_subcommand("squares", "Exact nested squares Q_1..Q_k");
    auto o = std::make_shared<ConstructOptions>();
    auto dir = add_output_dir(sub);
    add_construct_common(sub, *o, false);
    sub->add_option("--big", o->big_bits, "Lift the depth limit (squares are exact rationals either way)");
    sub->callback([&ctx, o, dir] {
      ctx.action = [&ctx, o, dir] {
        construction::NestedSquares nested(o->depth, precision_of(*o));
        OutputDir(*dir).write_json("squares.json", construction::to_json(nested));
        const auto side = construction::side_at_depth(o->depth);
        ctx.out << "depth " << o->depth << "\n"
                << "squares " << nested.at(o->depth).size() << "\n"
                << "side " << side << "\n"
                << "area " << construction::area_of_Qk(o->depth) << "\n";
        return int(kOk);
      };
    });
  }

  {
    auto* sub = con->add_subcommand("kappa", "Weights and derivative bounds of the truncated kappa series");
    auto o = std::make_shared<ConstructOptions>();
    auto at = std::make_shared<std::string>();
    auto dir = add_output_dir(sub);
    add_construct_common(sub, *o, true);
    sub->add_option("--at", *at, "Evaluate h(z) = (z1, z2, kappa(z)) at z = \"z1,z2\"");
    sub->callback([&ctx, o, at, dir] {
      ctx.action = [&ctx, o, at, dir] {
        return with_real(*o, [&]<typename Real>() {
          auto trunc = construction::make_truncation<Real>(o->depth, precision_of(*o), o->grid_step);
          nlohmann::json j = construction::to_json(trunc);
          if (!at->empty()) {
            auto parts = split(*at, ',');
            if (parts.size() != 2) throw InvalidInput("--at expects z1,z2");
            auto h = construction::embed_h(parse_real<Real>(parts[0]), parse_real<Real>(parts[1]), trunc);
            j["h"] = {construction::to_decimal(h[0]), construction::to_decimal(h[1]), construction::to_decimal(h[2])};
            ctx.out << "kappa " << construction::to_decimal(h[2]) << "\n";
          }
          OutputDir(*dir).write_json("kappa.json", j);
          ctx.out << "L " << trunc.L << " precision " << trunc.precision.label() << "\n";
          for (int k = 1; k <= trunc.L; ++k)
            ctx.out << "k " << k << " m_hat " << fmt_g(trunc.m(k), 6) << " weight "
                    << construction::to_decimal(trunc.weight(k)) << "\n";
          return int(kOk);
        });
      };
    });
  }

  {
    auto* sub = con->add_subcommand("certify-injectivity", "Check the separation bound for all pairs of depth-L centers");
    auto o = std::make_shared<ConstructOptions>();
    auto dir = add_output_dir(sub);
    add_construct_common(sub, *o, true);
    sub->callback([&ctx, o, dir] {
      ctx.action = [&ctx, o, dir] {
        return with_real(*o, [&]<typename Real>() {
          auto trunc = construction::make_truncation<Real>(o->depth, precision_of(*o), o->grid_step);
          auto cert = construction::certify_injectivity(trunc);
          nlohmann::json j = construction::to_json(cert);
          j["truncation"] = construction::to_json(trunc);
          OutputDir(*dir).write_json("certificate.json", j);
          ctx.out << "pairs " << cert.pairs.size() << " passed " << cert.passed << "\n"
                  << (cert.all_pass() ? "all_pass true" : "all_pass false") << "\n";
          return int(kOk);
        });
      };
    });
  }

  {
    auto* sub = con->add_subcommand("decode-e3", "Recover the depth-L square from y = kappa(z)");
    auto o = std::make_shared<ConstructOptions>();
    auto y = std::make_shared<std::string>();
    auto tol = std::make_shared<std::string>();
    auto dir = add_output_dir(sub);
    add_construct_common(sub, *o, true);
    sub->add_option("--y", *y, "Measured value e3 . h(z)")->required();
    sub->add_option("--tol", *tol, "Match tolerance (default: a quarter of the depth-L separation bound)");
    sub->callback([&ctx, o, y, tol, dir] {
      ctx.action = [&ctx, o, y, tol, dir] {
        return with_real(*o, [&]<typename Real>() {
          auto trunc = construction::make_truncation<Real>(o->depth, precision_of(*o), o->grid_step);
          Real yv = parse_real<Real>(*y);
          Real tv = tol->empty() ? Real(construction::separation_lower_bound(trunc.L, trunc) / 4)
                                 : parse_real<Real>(*tol);
          auto res = construction::decode_from_e3(yv, trunc, tv);
          nlohmann::json j = {{"L", trunc.L},
                              {"y", construction::to_decimal(yv)},
                              {"tol", construction::to_decimal(tv)},
                              {"nodes_visited", res.nodes_visited}};
          if (res.is_error_symbol()) {
            j["result"] = "error_symbol";
            ctx.out << "error_symbol\n";
          } else {
            j["result"] = "square";
            j["square"] = construction::to_json(*res.square);
            ctx.out << "square " << res.square->index << "\n";
          }
          OutputDir(*dir).write_json("decode_e3.json", j);
          return int(kOk);
        });
      };
    });
  }
}

}  // namespace anacomp::cli
