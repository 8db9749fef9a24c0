#pragma once

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "anacomp/cli/construct_commands.hpp"
#include "anacomp/cli/context.hpp"
#include "anacomp/cli/dim_commands.hpp"
#include "anacomp/cli/recover_commands.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::cli {

// args excludes the program name. Exit codes: 0 ok, 1 internal failure,
// 2 invalid input, 3 precision limit.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app("Dimension estimates, the kappa construction and recovery experiments", "anacomp");
  app.require_subcommand(1);
  Context ctx{out, err, {}};
  register_dim(app, ctx);
  register_construct(app, ctx);
  register_recover(app, ctx);

  try {
    // CLI11 consumes the argument vector from the back.
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kBadInput;
  }

  if (!ctx.action) {
    err << "error: no command given\n";
    return kBadInput;
  }
  try {
    return ctx.action();
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace anacomp::cli
