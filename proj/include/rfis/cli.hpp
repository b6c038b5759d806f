#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfis {

// Subcommands: validate, sample, dim, attractor-check, example-paper.
// Returns 0 on success, 1 on usage errors, 2 on validation failures.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfis
