#pragma once

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "anacomp/cli/common.hpp"
#include "anacomp/cli/context.hpp"
#include "anacomp/dimension/box_count.hpp"
#include "anacomp/dimension/estimate.hpp"
#include "anacomp/dimension/ifs.hpp"
#include "anacomp/dimension/io.hpp"

namespace anacomp::cli {

inline constexpr const char* kDefaultScales = "2^-2..2^-8";

inline dimension::PointSet read_points(const std::string& path) {
  auto in = open_input(path);
  return dimension::read_point_csv(in);
}

inline dimension::IfsSystem resolve_system(const std::string& name) {
  if (name == "cantor") return dimension::IfsSystem::cantor();
  if (name == "sierpinski") return dimension::IfsSystem::sierpinski();
  if (name == "unequal") return dimension::IfsSystem::unequal_interval();
  return dimension::ifs_from_json(read_json_file(name));
}

inline void print_estimate(std::ostream& out, const dimension::DimensionEstimate& est) {
  out << "slope_global " << fmt_g(est.slope_global) << "\n"
      << "slope_lower " << fmt_g(est.slope_lower) << "\n"
      << "slope_upper " << fmt_g(est.slope_upper) << "\n";
  for (const auto& w : est.warnings) out << "warning: " << w << "\n";
}

inline void register_dim(CLI::App& app, Context& ctx) {
  auto* dim = app.add_subcommand("dim", "Box-counting and attractor dimensions");
  dim->require_subcommand(1);

  {
    auto* sub = dim->add_subcommand("boxcount", "Grid box counts N(rho) of a point cloud");
    auto input = std::make_shared<std::string>();
    auto scales = std::make_shared<std::string>(kDefaultScales);
    auto dir = add_output_dir(sub);
    sub->add_option("--input", *input, "Point CSV with header x1,...,xm")->required();
    sub->add_option("--scales", *scales, "Radii: b^-i..b^-j or a comma list");
    sub->callback([&ctx, input, scales, dir] {
      ctx.action = [&ctx, input, scales, dir] {
        auto points = read_points(*input);
        auto ladder = parse_scales(*scales, 2);
        OutputDir outdir(*dir);
        std::vector<std::size_t> counts(ladder.size());
        for (std::size_t i = 0; i < ladder.size(); ++i) counts[i] = dimension::box_count(points, ladder.radii()[i]);
        outdir.write("counts.csv", [&](std::ostream& o) {
          o << "rho,count\n";
          for (std::size_t i = 0; i < counts.size(); ++i) o << fmt_g(ladder.radii()[i], 17) << ',' << counts[i] << '\n';
        });
        for (std::size_t i = 0; i < counts.size(); ++i) ctx.out << fmt_g(ladder.radii()[i]) << ' ' << counts[i] << '\n';
        return int(kOk);
      };
    });
  }

  {
    auto* sub = dim->add_subcommand("estimate", "Upper/lower box-dimension slopes of a point cloud");
    auto input = std::make_shared<std::string>();
    auto scales = std::make_shared<std::string>(kDefaultScales);
    auto window = std::make_shared<std::size_t>(2);
    auto dir = add_output_dir(sub);
    sub->add_option("--input", *input, "Point CSV with header x1,...,xm")->required();
    sub->add_option("--scales", *scales, "Radii: b^-i..b^-j or a comma list");
    sub->add_option("--window", *window, "Sliding-window length for lower/upper slopes");
    sub->callback([&ctx, input, scales, window, dir] {
      ctx.action = [&ctx, input, scales, window, dir] {
        auto points = read_points(*input);
        auto est = dimension::estimate_minkowski(points, parse_scales(*scales, *window));
        OutputDir outdir(*dir);
        outdir.write("counts.csv", [&](std::ostream& o) { dimension::write_counts_csv(o, est); });
        outdir.write_json("estimate.json", dimension::to_json(est));
        print_estimate(ctx.out, est);
        return int(kOk);
      };
    });
  }

  {
    auto* sub = dim->add_subcommand("modified", "Supremum of per-piece slopes over a covering");
    auto pieces = std::make_shared<std::string>();
    auto scales = std::make_shared<std::string>(kDefaultScales);
    auto window = std::make_shared<std::size_t>(2);
    auto dir = add_output_dir(sub);
    sub->add_option("--pieces", *pieces, "Directory with one point CSV per piece")->required();
    sub->add_option("--scales", *scales, "Radii: b^-i..b^-j or a comma list");
    sub->add_option("--window", *window, "Sliding-window length for lower/upper slopes");
    sub->callback([&ctx, pieces, scales, window, dir] {
      ctx.action = [&ctx, pieces, scales, window, dir] {
        if (!fs::is_directory(*pieces)) throw InvalidInput("'" + *pieces + "' is not a directory");
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(*pieces))
          if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw InvalidInput("no .csv pieces in '" + *pieces + "'");
        std::vector<dimension::PointSet> sets;
        for (const auto& f : files) sets.push_back(read_points(f.string()));
        auto res = dimension::estimate_modified(dimension::Partition(std::move(sets)), parse_scales(*scales, *window));
        nlohmann::json j = dimension::to_json(res.combined);
        j["pieces"] = files.size();
        j["argmax_piece"] = files[res.argmax_piece].filename().string();
        OutputDir(*dir).write_json("modified.json", j);
        ctx.out << "pieces " << files.size() << "\n";
        print_estimate(ctx.out, res.combined);
        return int(kOk);
      };
    });
  }

  {
    auto* sub = dim->add_subcommand("attractor", "Solve sum c_i^d = 1 for the similarity dimension");
    auto ratios = std::make_shared<std::string>();
    auto dir = add_output_dir(sub);
    sub->add_option("--ratios", *ratios, "Contraction ratios, e.g. 1/3,1/3")->required();
    sub->callback([&ctx, ratios, dir] {
      ctx.action = [&ctx, ratios, dir] {
        auto cs = parse_number_list(*ratios);
        auto d = dimension::attractor_dimension(cs);
        OutputDir(*dir).write_json("attractor.json", {{"ratios", cs},
                                                      {"dimension", d.value},
                                                      {"degenerate", d.degenerate},
                                                      {"warning", d.warning}});
        ctx.out << fmt_g(d.value, 15) << "\n";
        if (!d.warning.empty()) ctx.err << "warning: " << d.warning << "\n";
        return int(kOk);
      };
    });
  }

  {
    auto* sub = dim->add_subcommand("ifs-gen", "Generate attractor points of an iterated function system");
    auto system = std::make_shared<std::string>("cantor");
    auto depth = std::make_shared<int>(0);
    auto chaos = std::make_shared<std::size_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto dir = add_output_dir(sub);
    sub->add_option("--system", *system, "cantor, sierpinski, unequal, or an IFS JSON file");
    auto* d = sub->add_option("--depth", *depth, "Deterministic enumeration depth");
    auto* c = sub->add_option("--chaos", *chaos, "Number of chaos-game points");
    d->excludes(c);
    sub->add_option("--seed", *seed, "Chaos-game seed");
    sub->callback([&ctx, system, depth, chaos, seed, dir] {
      ctx.action = [&ctx, system, depth, chaos, seed, dir] {
        auto sys = resolve_system(*system);
        if ((*depth > 0) == (*chaos > 0)) throw InvalidInput("give exactly one of --depth or --chaos");
        dimension::IfsMode mode = *depth > 0 ? dimension::IfsMode(dimension::Deterministic{*depth})
                                             : dimension::IfsMode(dimension::ChaosGame{*chaos, *seed});
        auto points = dimension::ifs_generate(sys, mode);
        OutputDir outdir(*dir);
        outdir.write("points.csv", [&](std::ostream& o) { dimension::write_point_csv(o, points); });
        outdir.write_json("ifs.json", dimension::to_json(sys));
        ctx.out << "points " << points.size() << "\n";
        return int(kOk);
      };
    });
  }
}

}  // namespace anacomp::cli
