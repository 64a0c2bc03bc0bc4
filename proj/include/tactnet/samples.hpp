#pragma once

#include <string_view>

#include "tactnet/register_machine.hpp"

namespace tactnet::samples {

/// Arithmetic-progression sum: r1 := 0 + 1 + ... + r2, by repeatedly adding
/// the current value of r2 to r1 while counting it into r3, then restoring
/// r2 one smaller. r4 stays 0 and drives the unconditional jumps. Used by
/// the CLI selftest and the test suites.
std::string_view apsum_source();

RmProgram apsum_program();

}  // namespace tactnet::samples
