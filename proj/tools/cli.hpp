#ifndef MOBANON_CLI_HPP
#define MOBANON_CLI_HPP

#include <string>
#include <vector>

namespace mobanon::cli {

/// Runs one toolkit command (args exclude the program name).
/// Returns 0 on success, nonzero with a diagnostic on stderr otherwise.
int run(const std::vector<std::string>& args);

}  // namespace mobanon::cli

#endif  // MOBANON_CLI_HPP
