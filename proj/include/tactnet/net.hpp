#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tactnet/errors.hpp"

namespace tactnet {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;

/// Tokens and arc weights. 64-bit with checked arithmetic; overflow raises
/// OverflowError instead of wrapping.
using TokenCount = std::int64_t;

TokenCount checked_add(TokenCount a, TokenCount b);
TokenCount checked_sub(TokenCount a, TokenCount b);
TokenCount checked_mul(TokenCount a, TokenCount b);

/// Firing multiplicity of an arc or transition: a non-negative count, or
/// unbounded. Unbounded arises when nothing finite constrains the transition:
/// an enabled inhibitor arc, or an empty input set.
class Multiplicity {
public:
  static Multiplicity finite(TokenCount value);
  static Multiplicity unbounded() { return Multiplicity(true, 0); }

  bool is_unbounded() const { return unbounded_; }
  bool positive() const { return unbounded_ || value_ > 0; }

  /// Finite value; raises Error when unbounded.
  TokenCount value() const;

  static Multiplicity min(Multiplicity a, Multiplicity b);

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

private:
  Multiplicity(bool unbounded, TokenCount value) : unbounded_(unbounded), value_(value) {}

  bool unbounded_;
  TokenCount value_;
};

/// One weighted arc endpoint, seen from a transition.
struct Arc {
  PlaceId place;
  TokenCount weight;  // >= 1

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Immutable place-transition net: weighted regular arcs, inhibitor arcs and
/// numeric transition priorities. Built through NetBuilder, which enforces
/// the structural invariants; instances are plain values afterwards.
class NetStructure {
public:
  NetStructure() = default;

  std::size_t place_count() const { return place_names_.size(); }
  std::size_t transition_count() const { return transition_names_.size(); }

  const std::string& place_name(PlaceId p) const;
  const std::string& transition_name(TransitionId t) const;
  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;

  /// Weight of the regular arc place -> transition; 0 when absent.
  TokenCount pre_weight(PlaceId p, TransitionId t) const;
  /// Weight of the regular arc transition -> place; 0 when absent.
  TokenCount post_weight(TransitionId t, PlaceId p) const;
  bool has_inhibitor(PlaceId p, TransitionId t) const;

  std::span<const Arc> inputs(TransitionId t) const;
  std::span<const Arc> outputs(TransitionId t) const;
  std::span<const PlaceId> inhibitors(TransitionId t) const;
  TokenCount priority(TransitionId t) const;

  bool has_inhibitor_arcs() const;
  bool has_priorities() const;

  void check_place(PlaceId p) const;
  void check_transition(TransitionId t) const;

  friend bool operator==(const NetStructure&, const NetStructure&) = default;

private:
  friend class NetBuilder;

  std::vector<std::string> place_names_;
  std::vector<std::string> transition_names_;
  std::unordered_map<std::string, PlaceId> place_index_;
  std::unordered_map<std::string, TransitionId> transition_index_;
  std::vector<std::vector<Arc>> inputs_;       // by transition, sorted by place
  std::vector<std::vector<Arc>> outputs_;      // by transition, sorted by place
  std::vector<std::vector<PlaceId>> inhibitors_;  // by transition, sorted
  std::vector<TokenCount> priorities_;
};

/// Incremental net constructor. Rejects duplicate identifiers, duplicate
/// arcs, non-positive weights and pre+inhibitor conflicts as they appear.
class NetBuilder {
public:
  PlaceId add_place(std::string name);
  TransitionId add_transition(std::string name, TokenCount priority = 0);

  NetBuilder& input_arc(PlaceId p, TransitionId t, TokenCount weight = 1);
  NetBuilder& output_arc(TransitionId t, PlaceId p, TokenCount weight = 1);
  NetBuilder& inhibitor_arc(PlaceId p, TransitionId t);
  NetBuilder& set_priority(TransitionId t, TokenCount priority);

  bool has_input_arc(PlaceId p, TransitionId t) const;
  bool has_inhibitor_arc(PlaceId p, TransitionId t) const;

  NetStructure build();

private:
  NetStructure net_;
};

/// Total map place -> tokens, dense over the net's place indices. Values are
/// never negative; operations return fresh markings.
class Marking {
public:
  Marking() = default;
  explicit Marking(std::vector<TokenCount> tokens);
  static Marking zeros(std::size_t place_count);

  TokenCount operator[](PlaceId p) const { return tokens_[p]; }
  std::size_t size() const { return tokens_.size(); }
  std::span<const TokenCount> tokens() const { return tokens_; }
  TokenCount total() const;

  std::size_t hash() const;

  friend bool operator==(const Marking&, const Marking&) = default;
  friend std::strong_ordering operator<=>(const Marking&, const Marking&) = default;

private:
  std::vector<TokenCount> tokens_;
};

/// Multiset of transitions fired together in one tact. Counts are >= 1;
/// enumeration never emits an empty step.
class Step {
public:
  Step() = default;
  static Step single(TransitionId t, TokenCount count);

  /// Inserts a transition with a positive count; the transition must be new.
  void add(TransitionId t, TokenCount count);

  std::span<const std::pair<TransitionId, TokenCount>> items() const { return items_; }
  TokenCount count_of(TransitionId t) const;
  TokenCount total() const;
  bool empty() const { return items_.empty(); }
  std::size_t transition_count() const { return items_.size(); }

  friend bool operator==(const Step&, const Step&) = default;
  friend std::strong_ordering operator<=>(const Step&, const Step&) = default;

private:
  std::vector<std::pair<TransitionId, TokenCount>> items_;  // sorted by transition
};

/// Firability multiplicity of one arc: floor(tokens / weight) for a regular
/// arc; for an inhibitor arc, unbounded when the place is empty, else 0.
/// The pair must be a pre-arc or an inhibitor arc of the net.
Multiplicity arc_multiplicity(const Marking& marking, PlaceId place, TransitionId transition,
                              const NetStructure& net);

/// Minimum of arc_multiplicity over all inputs of the transition. A
/// transition with no inputs at all is unbounded; callers that need a finite
/// count must reject that case.
Multiplicity transition_multiplicity(const Marking& marking, TransitionId transition,
                                     const NetStructure& net);

bool is_firable(const Marking& marking, TransitionId transition, const NetStructure& net);

/// Fires a whole step atomically. The step must be jointly valid: summed
/// consumption fits every place and every inhibitor arc of a fired
/// transition sees an empty place. Raises InvalidStepError otherwise; that
/// signals a bug in the caller, not a dead marking.
Marking apply_step(const Marking& marking, const Step& step, const NetStructure& net);

/// Multiset notation, e.g. "{2·p1, 3·p2}"; unit multipliers are omitted.
std::string format_marking(const NetStructure& net, const Marking& marking);
/// Step contents without braces, e.g. "3·t2" or "t1, t2".
std::string format_step(const NetStructure& net, const Step& step);

}  // namespace tactnet
