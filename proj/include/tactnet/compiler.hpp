#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactnet/net.hpp"
#include "tactnet/register_machine.hpp"
#include "tactnet/semantics.hpp"

namespace tactnet {

/// Zero-check realization the compiled net relies on. Each backend fixes
/// the semantics mode the emitted net must be run under.
enum class Backend { Inhibitor, Priority, StrongSleptsov };

Backend parse_backend(std::string_view text);
std::string format_backend(Backend backend);
SemanticsMode mode_for_backend(Backend backend);

/// Register encoding: token count stored per register value. Inhibitor and
/// priority nets store v as v tokens; the strong-Sleptsov net stores v as
/// v+1 tokens so an empty place means "no value".
TokenCount encoding_offset(Backend backend);

/// Standalone increment / decrement fragments: p1 starts the instruction,
/// p2 signals completion, p3 is the register.
struct FragmentNet {
  NetStructure net;
  PlaceId start = 0;
  PlaceId finish = 0;
  PlaceId reg = 0;
};

FragmentNet make_increment_net();
FragmentNet make_decrement_net();

/// Standalone zero-check fragment: p1 start, p2 finish (fall-through), p3
/// jump, p4 register. The strong-Sleptsov variant adds internal places
/// p5..p7 and the guard p8 which carries one persistent token.
struct ZeroCheckNet {
  NetStructure net;
  PlaceId start = 0;
  PlaceId finish = 0;
  PlaceId jump = 0;
  PlaceId reg = 0;
  std::vector<PlaceId> internal;       // p5..p7 for the strong-Sleptsov variant
  std::optional<PlaceId> guard;        // p8, marked with one token initially
};

ZeroCheckNet make_zero_check_net(Backend backend);

/// A register-machine program lowered to a net. Control flows through
/// places q_1..q_{m+1}; instruction j runs from q_j to q_{j+1}; registers
/// live in places r_1..r_n. Internal gadget places continue the q numbering
/// from q_{m+2} in instruction order; transitions are numbered sequentially.
struct CompiledNet {
  NetStructure net;
  Marking initial;
  Backend backend = Backend::Inhibitor;
  TokenCount offset = 0;

  std::vector<PlaceId> control_places;   // q_1..q_{m+1}
  std::vector<PlaceId> register_places;  // r_1..r_n

  struct InternalPlace {
    PlaceId place;
    int instruction;  // 1-based owner
  };
  std::vector<InternalPlace> internal_places;
  std::vector<PlaceId> guard_places;  // strong-Sleptsov guards, one token each

  struct TransitionInfo {
    TransitionId id;
    int instruction;
    std::string role;
  };
  std::vector<TransitionInfo> transitions;

  PlaceId halt_place() const { return control_places.back(); }

  /// The instruction whose control place is marked, when exactly one is;
  /// nullopt inside a gadget (no control place marked).
  std::optional<int> control_at(const Marking& marking) const;

  /// Register values decoded from the marking. Raises
  /// EncodingViolationError when a register place is under the offset.
  std::vector<TokenCount> decode_registers(const Marking& marking) const;
};

CompiledNet compile(const RmProgram& program, Backend backend);

/// (instruction index, decoded registers) at every instruction boundary of
/// a trace, the initial marking included. Lock-step simulation makes this
/// equal to the interpreter's state sequence.
struct BoundaryPoint {
  int instruction;
  std::vector<TokenCount> registers;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

std::vector<BoundaryPoint> instruction_boundaries(const CompiledNet& compiled,
                                                  const ExecutionTrace& trace);

}  // namespace tactnet
