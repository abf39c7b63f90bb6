// cli.hh -- command-line driver over the library.

#ifndef ATTACKOBS_CLI_HH
#define ATTACKOBS_CLI_HH

#include <ostream>
#include <string>
#include <vector>

namespace attackobs {

/// Runs one subcommand. `args` excludes the program name.
///
/// Returns 0 when the analysis ran, 1 when --fail-on-violation is set and the
/// verdict is positive, and 2 on malformed input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace attackobs

#endif // ATTACKOBS_CLI_HH
