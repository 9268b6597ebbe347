#pragma once

// Batch front-end. Every artifact embeds the run manifest (command, input
// files with their hashes, options, seed, grid scale, quadrature config and
// output path) and the hashes of the grids it was computed on. Equal
// manifests give byte-identical artifacts.

#include <iosfwd>
#include <string>
#include <vector>

namespace fockde::cli {

enum ExitCode : int { ok = 0, input_error = 1, numerical_failure = 2 };

/// args excludes the program name, e.g. {"norm", "--function", "f.json"}.
/// Reports go to --out when given, otherwise to `out`; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockde::cli
