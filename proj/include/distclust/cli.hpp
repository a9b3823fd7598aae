#ifndef DISTCLUST_CLI_HPP
#define DISTCLUST_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace distclust::cli {

/// Runs one command line (argv[0] is the program name). Returns the process
/// exit code; failures print a single "error: ..." line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distclust::cli

#endif  // DISTCLUST_CLI_HPP
