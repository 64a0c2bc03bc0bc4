#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tactnet/net.hpp"

namespace tactnet {

/// One register-machine instruction. Registers and instruction targets are
/// 1-based; a jump target of m+1 halts the program.
struct RmInstruction {
  enum class Kind { Increment, Decrement, JumpIfZero };

  Kind kind = Kind::Increment;
  int reg = 0;     // 1..n
  int target = 0;  // 1..m+1, JumpIfZero only

  friend bool operator==(const RmInstruction&, const RmInstruction&) = default;
};

struct RmProgram {
  int register_count = 0;
  std::vector<RmInstruction> instructions;       // instruction j is instructions[j-1]
  std::vector<TokenCount> initial_registers;     // r_i is initial_registers[i-1]

  int instruction_count() const { return static_cast<int>(instructions.size()); }
  /// Structural invariants: register indices in range, jump targets in
  /// 1..m+1, initial values non-negative.
  void validate() const;
};

struct RmState {
  int pc = 1;  // 1..m+1; m+1 means halted
  std::vector<TokenCount> registers;

  friend bool operator==(const RmState&, const RmState&) = default;
};

/// Parses the line-based text format:
///   registers <n>
///   init r<i> = <value>
///   <idx>: P <i> | <idx>: Q <i> | <idx>: J <i> <k>
/// '#' starts a comment; instruction indices must be 1..m contiguous.
RmProgram parse_rm(std::string_view text);
std::string print_rm(const RmProgram& program);

/// Executes one instruction. Raises RmTrapError when Q(i) meets a zero
/// register; its precondition is that the register is not zero.
RmState rm_step(const RmState& state, const RmProgram& program);

enum class RmRunReason { Halted, Budget };

struct RmRunResult {
  std::vector<RmState> trace;  // every state, initial first
  RmRunReason reason = RmRunReason::Halted;

  const RmState& final_state() const { return trace.back(); }
};

/// Runs from the program's initial registers, with `inputs` overriding
/// individual registers (pairs of 1-based register index and value).
RmRunResult rm_run(const RmProgram& program,
                   const std::vector<std::pair<int, TokenCount>>& inputs, std::size_t max_steps);

}  // namespace tactnet
