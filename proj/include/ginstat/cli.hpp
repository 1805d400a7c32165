#ifndef GINSTAT_CLI_HPP
#define GINSTAT_CLI_HPP

namespace ginstat {

/// Full command-line entry point (exact | mc | verify | asymptotics).
/// Exit codes: 0 success, 1 check failure or runtime error, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace ginstat

#endif
