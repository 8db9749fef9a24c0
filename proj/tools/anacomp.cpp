#include <string>
#include <vector>

#include "anacomp/cli/app.hpp"

int main(int argc, char** argv) {
  return anacomp::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
