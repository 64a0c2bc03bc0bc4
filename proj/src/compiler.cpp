#include "tactnet/compiler.hpp"

#include <algorithm>

namespace tactnet {

Backend parse_backend(std::string_view text) {
  if (text == "inhibitor") return Backend::Inhibitor;
  if (text == "priority") return Backend::Priority;
  if (text == "strong-sleptsov") return Backend::StrongSleptsov;
  throw Error("unknown backend '" + std::string(text) +
              "' (expected inhibitor, priority or strong-sleptsov)");
}

std::string format_backend(Backend backend) {
  switch (backend) {
    case Backend::Inhibitor: return "inhibitor";
    case Backend::Priority: return "priority";
    case Backend::StrongSleptsov: return "strong-sleptsov";
  }
  return "?";
}

SemanticsMode mode_for_backend(Backend backend) {
  SemanticsMode mode;
  switch (backend) {
    case Backend::Inhibitor:
      mode.net_class = NetClass::Petri;
      mode.inhibitor_arcs = true;
      break;
    case Backend::Priority:
      mode.net_class = NetClass::Petri;
      mode.priority_relation = true;
      break;
    case Backend::StrongSleptsov:
      mode.net_class = NetClass::Sleptsov;
      mode.strength = Strength::Strong;
      break;
  }
  return mode;
}

TokenCount encoding_offset(Backend backend) {
  return backend == Backend::StrongSleptsov ? 1 : 0;
}

namespace {

// Arcs of one lowered instruction, emitted against caller-supplied port
// places. `names` provides sequential transition names; internal places are
// created through `fresh_place`.
struct GadgetEmitter {
  NetBuilder& builder;
  std::vector<CompiledNet::TransitionInfo>* info = nullptr;  // optional role log
  int instruction = 0;
  int next_transition = 1;

  TransitionId transition(const std::string& role, TokenCount priority = 0) {
    TransitionId t = builder.add_transition("t" + std::to_string(next_transition++), priority);
    if (info) info->push_back({t, instruction, role});
    return t;
  }
};

void emit_increment(GadgetEmitter& em, PlaceId start, PlaceId finish, PlaceId reg) {
  TransitionId t = em.transition("increment");
  em.builder.input_arc(start, t).output_arc(t, finish).output_arc(t, reg);
}

void emit_decrement(GadgetEmitter& em, PlaceId start, PlaceId finish, PlaceId reg) {
  TransitionId t = em.transition("decrement");
  em.builder.input_arc(start, t).input_arc(reg, t).output_arc(t, finish);
}

// Inhibitor / priority zero check: the fall-through transition reads the
// register through a self-loop; the jump transition is enabled on an empty
// register, by inhibitor arc or by losing the priority comparison.
void emit_zero_check_petri(GadgetEmitter& em, Backend backend, PlaceId start, PlaceId finish,
                           PlaceId jump, PlaceId reg) {
  bool priority = backend == Backend::Priority;
  TransitionId cont = em.transition("fall-through", priority ? 1 : 0);
  em.builder.input_arc(start, cont)
      .input_arc(reg, cont)
      .output_arc(cont, reg)
      .output_arc(cont, finish);
  TransitionId jmp = em.transition("jump", 0);
  em.builder.input_arc(start, jmp).output_arc(jmp, jump);
  if (!priority) em.builder.inhibitor_arc(reg, jmp);
}

// Strong-Sleptsov zero check over the +1 register encoding. t1 arms two
// probe tokens; with x >= 2 register tokens t2 outruns the guard-capped t3
// by firing twice and t4 exits to finish; with x = 1 the tied t2/t3 single
// firings both funnel through t5/t6 to the jump exit. Every exit restores
// the register to x.
void emit_zero_check_strong(GadgetEmitter& em, PlaceId start, PlaceId finish, PlaceId jump,
                            PlaceId reg, PlaceId probe, PlaceId pair_done, PlaceId single_done,
                            PlaceId guard) {
  TransitionId arm = em.transition("arm");
  em.builder.input_arc(start, arm)
      .input_arc(reg, arm)  // keeps the gadget dead on an empty register
      .output_arc(arm, reg)
      .output_arc(arm, probe, 2);
  TransitionId drain = em.transition("drain");
  em.builder.input_arc(reg, drain).input_arc(probe, drain).output_arc(drain, pair_done);
  TransitionId drain_gated = em.transition("drain-gated");
  em.builder.input_arc(reg, drain_gated)
      .input_arc(probe, drain_gated)
      .input_arc(guard, drain_gated)
      .output_arc(drain_gated, single_done)
      .output_arc(drain_gated, guard);
  TransitionId exit_nonzero = em.transition("exit-nonzero");
  em.builder.input_arc(pair_done, exit_nonzero, 2)
      .output_arc(exit_nonzero, finish)
      .output_arc(exit_nonzero, reg, 2);
  TransitionId exit_zero = em.transition("exit-zero");
  em.builder.input_arc(probe, exit_zero)
      .input_arc(pair_done, exit_zero)
      .output_arc(exit_zero, jump)
      .output_arc(exit_zero, reg);
  TransitionId exit_zero_gated = em.transition("exit-zero-gated");
  em.builder.input_arc(probe, exit_zero_gated)
      .input_arc(single_done, exit_zero_gated)
      .output_arc(exit_zero_gated, jump)
      .output_arc(exit_zero_gated, reg);
}

}  // namespace

FragmentNet make_increment_net() {
  NetBuilder b;
  FragmentNet f;
  f.start = b.add_place("p1");
  f.finish = b.add_place("p2");
  f.reg = b.add_place("p3");
  GadgetEmitter em{b};
  emit_increment(em, f.start, f.finish, f.reg);
  f.net = b.build();
  return f;
}

FragmentNet make_decrement_net() {
  NetBuilder b;
  FragmentNet f;
  f.start = b.add_place("p1");
  f.finish = b.add_place("p2");
  f.reg = b.add_place("p3");
  GadgetEmitter em{b};
  emit_decrement(em, f.start, f.finish, f.reg);
  f.net = b.build();
  return f;
}

ZeroCheckNet make_zero_check_net(Backend backend) {
  NetBuilder b;
  ZeroCheckNet z;
  z.start = b.add_place("p1");
  z.finish = b.add_place("p2");
  z.jump = b.add_place("p3");
  z.reg = b.add_place("p4");
  GadgetEmitter em{b};
  if (backend == Backend::StrongSleptsov) {
    PlaceId probe = b.add_place("p5");
    PlaceId pair_done = b.add_place("p6");
    PlaceId single_done = b.add_place("p7");
    PlaceId guard = b.add_place("p8");
    z.internal = {probe, pair_done, single_done};
    z.guard = guard;
    emit_zero_check_strong(em, z.start, z.finish, z.jump, z.reg, probe, pair_done, single_done,
                           guard);
  } else {
    emit_zero_check_petri(em, backend, z.start, z.finish, z.jump, z.reg);
  }
  z.net = b.build();
  return z;
}

CompiledNet compile(const RmProgram& program, Backend backend) {
  program.validate();
  const int m = program.instruction_count();
  const int n = program.register_count;

  CompiledNet compiled;
  compiled.backend = backend;
  compiled.offset = encoding_offset(backend);

  NetBuilder b;
  for (int j = 1; j <= m + 1; ++j)
    compiled.control_places.push_back(b.add_place("q" + std::to_string(j)));
  for (int i = 1; i <= n; ++i)
    compiled.register_places.push_back(b.add_place("r" + std::to_string(i)));

  GadgetEmitter em{b, &compiled.transitions};
  int next_internal = m + 2;
  auto fresh_internal = [&](int instruction) {
    PlaceId p = b.add_place("q" + std::to_string(next_internal++));
    compiled.internal_places.push_back({p, instruction});
    return p;
  };

  for (int j = 1; j <= m; ++j) {
    const RmInstruction& ins = program.instructions[j - 1];
    em.instruction = j;
    PlaceId start = compiled.control_places[j - 1];
    PlaceId finish = compiled.control_places[j];
    PlaceId reg = compiled.register_places[ins.reg - 1];
    switch (ins.kind) {
      case RmInstruction::Kind::Increment:
        emit_increment(em, start, finish, reg);
        break;
      case RmInstruction::Kind::Decrement:
        emit_decrement(em, start, finish, reg);
        break;
      case RmInstruction::Kind::JumpIfZero: {
        PlaceId jump = compiled.control_places[ins.target - 1];
        if (backend == Backend::StrongSleptsov) {
          PlaceId probe = fresh_internal(j);
          PlaceId pair_done = fresh_internal(j);
          PlaceId single_done = fresh_internal(j);
          PlaceId guard = fresh_internal(j);
          compiled.guard_places.push_back(guard);
          emit_zero_check_strong(em, start, finish, jump, reg, probe, pair_done, single_done,
                                 guard);
        } else {
          emit_zero_check_petri(em, backend, start, finish, jump, reg);
        }
        break;
      }
    }
  }

  compiled.net = b.build();

  std::vector<TokenCount> tokens(compiled.net.place_count(), 0);
  tokens[compiled.control_places.front()] = 1;
  for (int i = 1; i <= n; ++i)
    tokens[compiled.register_places[i - 1]] =
        checked_add(program.initial_registers[i - 1], compiled.offset);
  for (PlaceId guard : compiled.guard_places) tokens[guard] = 1;
  compiled.initial = Marking(std::move(tokens));
  return compiled;
}

std::optional<int> CompiledNet::control_at(const Marking& marking) const {
  std::optional<int> found;
  for (std::size_t j = 0; j < control_places.size(); ++j) {
    if (marking[control_places[j]] == 0) continue;
    if (found) return std::nullopt;  // more than one control place marked
    found = static_cast<int>(j) + 1;
  }
  return found;
}

std::vector<TokenCount> CompiledNet::decode_registers(const Marking& marking) const {
  std::vector<TokenCount> values;
  values.reserve(register_places.size());
  for (std::size_t i = 0; i < register_places.size(); ++i) {
    TokenCount tokens = marking[register_places[i]];
    if (tokens < offset)
      throw EncodingViolationError("register place r" + std::to_string(i + 1) + " holds " +
                                   std::to_string(tokens) + " tokens, below the encoding offset");
    values.push_back(tokens - offset);
  }
  return values;
}

std::vector<BoundaryPoint> instruction_boundaries(const CompiledNet& compiled,
                                                  const ExecutionTrace& trace) {
  std::vector<BoundaryPoint> points;
  auto visit = [&](const Marking& marking) {
    if (std::optional<int> j = compiled.control_at(marking))
      points.push_back({*j, compiled.decode_registers(marking)});
  };
  visit(trace.initial);
  for (const auto& entry : trace.entries) visit(entry.marking);
  return points;
}

}  // namespace tactnet
