#pragma once

#include <iosfwd>

namespace fillings::cli {

/// Runs one command. Exit codes: 0 success, 1 domain error (one line on
/// `err`), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fillings::cli
