#ifndef LEMNMAP_TOOLS_CLI_HPP
#define LEMNMAP_TOOLS_CLI_HPP

#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace lemnmap::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification = 1;
inline constexpr int exit_usage = 2;

// Parses "1", "-2.5", "i", "-i", "3i", "1+2i", "1-2e-3i", "1,2" or "1 2".
std::optional<std::complex<double>> parse_complex(const std::string &text);

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace lemnmap::cli

#endif
