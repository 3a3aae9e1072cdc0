#pragma once

#include <iosfwd>

namespace sphinv::cli {

// Full command-line front end.  Parses argv, writes results to `out` and
// diagnostics to `err`, and returns the process exit code:
//   0   success
//   2   domain/range failure (pole, out-of-range target, missing branch, ...)
//   3   input could not be parsed or transformed to a table row
//   64  command-line usage error
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace sphinv::cli
