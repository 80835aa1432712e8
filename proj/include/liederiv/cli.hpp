#ifndef LIEDERIV_CLI_HPP
#define LIEDERIV_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace liederiv::cli {

// Exit codes: 0 success, 1 golden-file mismatch, 2 parse/usage error,
// 3 failed hypothesis (incl. out-of-scope classifications), 4 internal
// invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitGoldenMismatch = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitInvariant = 4;

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace liederiv::cli

#endif
