#ifndef KAPPA_CLI_HPP
#define KAPPA_CLI_HPP

#include <iosfwd>

namespace kappa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;

/// Runs one `kappa-lab` invocation. Output goes to `out` unless --output is
/// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kappa::cli

#endif  // KAPPA_CLI_HPP
