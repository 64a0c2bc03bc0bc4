#pragma once

namespace tactnet {

/// Command-line entry point. Exit status: 0 on success, 1 on verification
/// or run-time failure, 2 on usage or input parse errors.
int cli_main(int argc, const char* const* argv);

}  // namespace tactnet
