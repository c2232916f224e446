#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace critlat::cli {

  enum ExitCode : int {
    Ok           = 0,  // also the Infinite verdict of crit-gate
    Failure      = 2,  // parse, validation and budget errors
    AtMostAleph2 = 3,
  };

  //! Runs one command. `args` excludes the program name. Output is
  //! deterministic for fixed inputs and independent of --threads.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace critlat::cli
