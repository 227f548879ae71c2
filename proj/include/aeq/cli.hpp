#pragma once

#include <iosfwd>

namespace aeq::cli {

// Runs the `aeq` command line. Reports go to out as JSON (or CSV with
// --format csv), diagnostics to err. Returns 0 when the checked property
// holds or a construction / search succeeds, 1 when a check fails or a search
// is infeasible, 2 on malformed input or bad flags.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace aeq::cli
