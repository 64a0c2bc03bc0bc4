#include "tactnet/register_machine.hpp"

#include <charconv>
#include <sstream>

namespace tactnet {

void RmProgram::validate() const {
  if (register_count < 0) throw Error("register count cannot be negative");
  if (static_cast<int>(initial_registers.size()) != register_count)
    throw Error("initial register vector does not match register count");
  for (TokenCount v : initial_registers)
    if (v < 0) throw Error("initial register values must be non-negative");
  const int m = instruction_count();
  for (int j = 1; j <= m; ++j) {
    const RmInstruction& ins = instructions[j - 1];
    if (ins.reg < 1 || ins.reg > register_count)
      throw Error("instruction " + std::to_string(j) + ": register index out of range");
    if (ins.kind == RmInstruction::Kind::JumpIfZero && (ins.target < 1 || ins.target > m + 1))
      throw Error("instruction " + std::to_string(j) + ": jump target out of range");
  }
}

namespace {

struct LineScanner {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  // Next non-empty line with comments stripped; false at end of input.
  bool next(std::string& out) {
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      std::size_t begin = line.find_first_not_of(" \t\r");
      if (begin == std::string_view::npos) continue;
      std::size_t end = line.find_last_not_of(" \t\r");
      out.assign(line.substr(begin, end - begin + 1));
      return true;
    }
    return false;
  }
};

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

long long parse_int(const std::string& word, std::size_t line, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + word + "'");
  return value;
}

}  // namespace

RmProgram parse_rm(std::string_view text) {
  RmProgram program;
  LineScanner scanner{text};
  std::string line;

  if (!scanner.next(line)) throw ParseError(scanner.line_no + 1, "missing 'registers <n>' header");
  {
    auto words = split_words(line);
    if (words.size() != 2 || words[0] != "registers")
      throw ParseError(scanner.line_no, "expected 'registers <n>' header");
    long long n = parse_int(words[1], scanner.line_no, "register count");
    if (n < 0 || n > 1'000'000) throw ParseError(scanner.line_no, "register count out of range");
    program.register_count = static_cast<int>(n);
    program.initial_registers.assign(program.register_count, 0);
  }

  struct PendingJump {
    std::size_t line;
    int index;
  };
  std::vector<PendingJump> jumps;
  bool saw_instruction = false;

  while (scanner.next(line)) {
    auto words = split_words(line);
    if (words[0] == "init") {
      if (saw_instruction)
        throw ParseError(scanner.line_no, "'init' lines must precede instructions");
      // init r<i> = <value>
      if (words.size() != 4 || words[2] != "=" || words[1].size() < 2 || words[1][0] != 'r')
        throw ParseError(scanner.line_no, "expected 'init r<i> = <value>'");
      long long reg = parse_int(words[1].substr(1), scanner.line_no, "register index");
      if (reg < 1 || reg > program.register_count)
        throw ParseError(scanner.line_no, "register index out of range");
      long long value = parse_int(words[3], scanner.line_no, "register value");
      if (value < 0) throw ParseError(scanner.line_no, "register values must be non-negative");
      program.initial_registers[reg - 1] = value;
      continue;
    }

    // <idx>: <P|Q|J> <i> [<k>]
    if (words.size() < 2 || words[0].empty() || words[0].back() != ':')
      throw ParseError(scanner.line_no, "expected '<index>: <instruction>'");
    long long index =
        parse_int(words[0].substr(0, words[0].size() - 1), scanner.line_no, "instruction index");
    int expected = program.instruction_count() + 1;
    if (index != expected) {
      if (index < expected)
        throw ParseError(scanner.line_no,
                         "duplicate instruction number " + std::to_string(index));
      throw ParseError(scanner.line_no, "instruction numbers must be contiguous; expected " +
                                            std::to_string(expected));
    }
    saw_instruction = true;

    RmInstruction ins;
    const std::string& op = words[1];
    if (op == "P" || op == "Q") {
      if (words.size() != 3)
        throw ParseError(scanner.line_no, "expected '" + op + " <register>'");
      ins.kind = op == "P" ? RmInstruction::Kind::Increment : RmInstruction::Kind::Decrement;
      long long reg = parse_int(words[2], scanner.line_no, "register index");
      if (reg < 1 || reg > program.register_count)
        throw ParseError(scanner.line_no, "register index out of range");
      ins.reg = static_cast<int>(reg);
    } else if (op == "J") {
      if (words.size() != 4) throw ParseError(scanner.line_no, "expected 'J <register> <target>'");
      ins.kind = RmInstruction::Kind::JumpIfZero;
      long long reg = parse_int(words[2], scanner.line_no, "register index");
      if (reg < 1 || reg > program.register_count)
        throw ParseError(scanner.line_no, "register index out of range");
      ins.reg = static_cast<int>(reg);
      long long target = parse_int(words[3], scanner.line_no, "jump target");
      if (target < 1) throw ParseError(scanner.line_no, "jump target out of range");
      ins.target = static_cast<int>(target);
      jumps.push_back({scanner.line_no, program.instruction_count() + 1});
    } else {
      throw ParseError(scanner.line_no, "unknown instruction '" + op + "'");
    }
    program.instructions.push_back(ins);
  }

  const int m = program.instruction_count();
  for (const PendingJump& jump : jumps) {
    int target = program.instructions[jump.index - 1].target;
    if (target > m + 1)
      throw ParseError(jump.line, "jump target " + std::to_string(target) +
                                      " out of range (program has " + std::to_string(m) +
                                      " instructions)");
  }
  return program;
}

std::string print_rm(const RmProgram& program) {
  program.validate();
  std::ostringstream out;
  out << "registers " << program.register_count << "\n";
  for (int i = 1; i <= program.register_count; ++i)
    if (program.initial_registers[i - 1] != 0)
      out << "init r" << i << " = " << program.initial_registers[i - 1] << "\n";
  for (int j = 1; j <= program.instruction_count(); ++j) {
    const RmInstruction& ins = program.instructions[j - 1];
    out << j << ": ";
    switch (ins.kind) {
      case RmInstruction::Kind::Increment: out << "P " << ins.reg; break;
      case RmInstruction::Kind::Decrement: out << "Q " << ins.reg; break;
      case RmInstruction::Kind::JumpIfZero: out << "J " << ins.reg << " " << ins.target; break;
    }
    out << "\n";
  }
  return out.str();
}

RmState rm_step(const RmState& state, const RmProgram& program) {
  const int m = program.instruction_count();
  if (state.pc < 1 || state.pc > m) throw Error("cannot step a halted or invalid state");
  const RmInstruction& ins = program.instructions[state.pc - 1];
  RmState next = state;
  switch (ins.kind) {
    case RmInstruction::Kind::Increment:
      next.registers[ins.reg - 1] = checked_add(next.registers[ins.reg - 1], 1);
      next.pc = state.pc + 1;
      break;
    case RmInstruction::Kind::Decrement:
      if (next.registers[ins.reg - 1] == 0) throw RmTrapError(state.pc, ins.reg);
      next.registers[ins.reg - 1] -= 1;
      next.pc = state.pc + 1;
      break;
    case RmInstruction::Kind::JumpIfZero:
      next.pc = next.registers[ins.reg - 1] == 0 ? ins.target : state.pc + 1;
      break;
  }
  return next;
}

RmRunResult rm_run(const RmProgram& program,
                   const std::vector<std::pair<int, TokenCount>>& inputs, std::size_t max_steps) {
  program.validate();
  RmState state;
  state.pc = 1;
  state.registers = program.initial_registers;
  for (const auto& [reg, value] : inputs) {
    if (reg < 1 || reg > program.register_count)
      throw Error("input register index out of range: r" + std::to_string(reg));
    if (value < 0) throw Error("input register values must be non-negative");
    state.registers[reg - 1] = value;
  }

  RmRunResult result;
  result.trace.push_back(state);
  const int halt_pc = program.instruction_count() + 1;
  for (std::size_t i = 0; i < max_steps; ++i) {
    if (state.pc == halt_pc) {
      result.reason = RmRunReason::Halted;
      return result;
    }
    state = rm_step(state, program);
    result.trace.push_back(state);
  }
  result.reason = state.pc == halt_pc ? RmRunReason::Halted : RmRunReason::Budget;
  return result;
}

}  // namespace tactnet
