#pragma once

#include <ostream>
#include <span>
#include <string>

namespace hconv::cli {

// Runs one hconv command. args excludes the program name. Writes a single
// JSON document to out on success (exit 0); usage and parse errors go to err
// with exit 2, computation errors with exit 1.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hconv::cli
