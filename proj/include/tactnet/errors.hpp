#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tactnet {

/// Base class of every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structural problems in a net definition or element lookups.
class NetError : public Error {
public:
  using Error::Error;
};

/// A step violated joint validity: some place would go negative or an
/// inhibitor arc of a fired transition has a marked place.
class InvalidStepError : public Error {
public:
  using Error::Error;
};

/// A finite firing count was demanded for a transition whose multiplicity
/// is unbounded (no regular inputs, or only enabled inhibitor arcs).
class UnboundedStepError : public Error {
public:
  using Error::Error;
};

/// Token arithmetic left the representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Invalid semantics mode, or a mode/net combination that is not defined.
class ModeError : public Error {
public:
  using Error::Error;
};

/// A register place holds fewer tokens than its encoding offset.
class EncodingViolationError : public Error {
public:
  using Error::Error;
};

/// Text input rejected with a 1-based line position.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Decrement of a zero register: the guarded precondition of Q(i) failed.
class RmTrapError : public Error {
public:
  RmTrapError(int pc, int reg)
      : Error("instruction " + std::to_string(pc) + ": decrement of zero register r" +
              std::to_string(reg)),
        pc_(pc),
        reg_(reg) {}

  int pc() const { return pc_; }
  int reg() const { return reg_; }

private:
  int pc_;
  int reg_;
};

}  // namespace tactnet
