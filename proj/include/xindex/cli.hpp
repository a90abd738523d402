#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xindex::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2 };

/// Entry point behind the xindex executable. Subcommands: compute, rank, evaluate,
/// gen, pipeline. Returns 0 on success, 2 for usage/input/I-O errors, 1 for
/// internal invariant violations.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace xindex::cli
