#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homonet::cli {

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// status. Tables and reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace homonet::cli
