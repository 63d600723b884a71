#pragma once

namespace mcpp {

/// Entry point of the command-line tool, exposed for tests.
/// Exit codes: 0 success, 1 parse/config error, 2 internal failure.
int run_cli(int argc, const char* const* argv);

} // namespace mcpp
