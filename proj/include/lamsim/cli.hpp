// cli.hpp — Subcommand dispatch shared by the binary and the tests

#pragma once

#include <string>
#include <vector>

namespace lamsim {

// Runs one subcommand (levels, rates, match, reflect, spectrum, efficiency,
// validate) with its flags, writing CSV/SVG outputs to the --out directory.
// Returns 0 on success, 2 on configuration errors, 3 on numerical failures.
int run_command(const std::vector<std::string>& args);

}  // namespace lamsim
