#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "anacomp/dimension/estimate.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kInternal = 1, kBadInput = 2, kPrecision = 3 };

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "ANACOMP_OUTPUT_DIR";

inline std::string default_output_dir() {
  const char* v = std::getenv(kOutputDirEnv);
  return v && *v ? std::string(v) : std::string(".");
}

// Files are only ever created as direct children of the output directory.
class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : root_(path) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_)) throw InvalidInput("cannot create output directory '" + path + "'");
  }

  fs::path file(const std::string& name) const {
    if (name.empty() || name.find('/') != std::string::npos || name == "." || name == "..")
      throw InternalInconsistency("output file name must be a plain name: '" + name + "'");
    return root_ / name;
  }

  // Whole-file write through a temporary sibling and rename.
  void write(const std::string& name, const std::function<void(std::ostream&)>& fill) const {
    fs::path target = file(name);
    fs::path tmp = root_ / ("." + name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InvalidInput("cannot write '" + target.string() + "'");
      fill(out);
      if (!out) throw InvalidInput("write failed for '" + target.string() + "'");
    }
    fs::rename(tmp, target);
  }

  void write_json(const std::string& name, const nlohmann::json& j) const {
    write(name, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
};

inline std::string fmt_g(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidInput("empty entry in list '" + s + "'");
    out.push_back(cur.substr(b, e - b + 1));
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

inline double parse_plain(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

// Accepts decimals, fractions "p/q" and powers "b^e".
inline double parse_number(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos) {
    double den = parse_plain(s.substr(slash + 1));
    if (den == 0.0) throw InvalidInput("zero denominator in '" + s + "'");
    return parse_plain(s.substr(0, slash)) / den;
  }
  if (auto caret = s.find('^'); caret != std::string::npos)
    return std::pow(parse_plain(s.substr(0, caret)), parse_plain(s.substr(caret + 1)));
  return parse_plain(s);
}

inline std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_number(tok));
  return out;
}

inline int parse_int(const std::string& s) {
  double v = parse_plain(s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidInput("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

// "b^-i..b^-j" (integer base, nested ladder b^-i, ..., b^-j) or a comma list.
inline dimension::ScaleLadder parse_scales(const std::string& s, std::size_t window) {
  if (auto dots = s.find(".."); dots != std::string::npos) {
    std::string lo = s.substr(0, dots);
    std::string hi = s.substr(dots + 2);
    auto c1 = lo.find('^');
    auto c2 = hi.find('^');
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InvalidInput("scale range must look like 2^-2..2^-8");
    int base = parse_int(lo.substr(0, c1));
    if (parse_int(hi.substr(0, c2)) != base) throw InvalidInput("scale range must use a single base");
    int e1 = parse_int(lo.substr(c1 + 1));
    int e2 = parse_int(hi.substr(c2 + 1));
    return dimension::ScaleLadder::geometric(base, -e1, -e2, window);
  }
  return dimension::ScaleLadder(parse_number_list(s), window);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

inline nlohmann::json read_json_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

}  // namespace anacomp::cli
