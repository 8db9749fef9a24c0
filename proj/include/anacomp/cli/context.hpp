#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "anacomp/cli/common.hpp"

namespace anacomp::cli {

// Subcommand callbacks only record what to run; the action executes after
// parsing so that library exceptions map to exit codes in one place.
struct Context {
  std::ostream& out;
  std::ostream& err;
  std::function<int()> action;
};

inline std::shared_ptr<std::string> add_output_dir(CLI::App* sub) {
  auto dir = std::make_shared<std::string>(default_output_dir());
  sub->add_option("--output-dir", *dir, std::string("Directory for all output files (default: $") + kOutputDirEnv + " or .)");
  return dir;
}

}  // namespace anacomp::cli
