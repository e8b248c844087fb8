// Command dispatch:
//   envmin check|envelope|duality|equilibrium|alternative|lipschitz <config>
//          [--lambda-grid N] [--refine R] [--tol T] [--csv PATH] ...
//   envmin catalog-list [name]
// Exit status: 0 success, 2 when `check` finds a failed hypothesis, 1 on error.
#ifndef ENVMIN_CLI_HPP
#define ENVMIN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace envmin {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace envmin

#endif  // ENVMIN_CLI_HPP
