#ifndef SPINMIRROR_CLI_HPP
#define SPINMIRROR_CLI_HPP

#include <ostream>

namespace spinmirror {

// Command-line front end, in-process so tests can drive it directly.
// Exit codes: 0 success, 2 invalid spec/flags, 3 numerical failure,
// 4 I/O failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinmirror

#endif
