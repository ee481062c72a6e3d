#pragma once

namespace graphbench {

/// Entry point for the command-line tool; returns the process exit code
/// (0 success, 1 partial or algorithm failure, 2 usage error).
int run_cli(int argc, char** argv);

} // namespace graphbench
