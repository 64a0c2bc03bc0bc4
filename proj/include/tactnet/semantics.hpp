#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactnet/net.hpp"

namespace tactnet {

/// The four firing-rule families. Petri fires one transition once; Salwicki
/// fires a maximal set of transitions once each; Sleptsov fires one
/// transition in its full multiplicity; SalwickiSleptsov fires a maximal
/// multiset of transition copies.
enum class NetClass { Petri, Salwicki, Sleptsov, SalwickiSleptsov };

/// Strength of the firing rule relative to the general definition: Strong
/// picks the maximal variant, Weak allows any valid non-empty sub-multiset.
enum class Strength { Weak, General, Strong };

struct SemanticsMode {
  NetClass net_class = NetClass::Petri;
  Strength strength = Strength::General;
  bool inhibitor_arcs = false;
  bool priority_relation = false;

  friend bool operator==(const SemanticsMode&, const SemanticsMode&) = default;
};

/// Parses mode strings like "petri", "petri+inhibitor", "sleptsov-strong",
/// "salwicki-sleptsov-weak". Raises ModeError for unknown or inconsistent
/// combinations.
SemanticsMode parse_mode(std::string_view text);
std::string format_mode(const SemanticsMode& mode);

/// Consistency of the mode itself: Petri admits only the general strength;
/// the priority relation applies only to Petri; inhibitor arcs combine with
/// Petri and Sleptsov but not with joint (Salwicki-family) steps.
void validate_mode(const SemanticsMode& mode);

/// A net with inhibitor arcs can only run under a mode that enables them.
void validate_mode_for_net(const SemanticsMode& mode, const NetStructure& net);

/// Deterministic resolution of the nondeterministic step choice.
struct StepChoicePolicy {
  enum class Kind { SeededRandom, FirstLexicographic };

  Kind kind = Kind::SeededRandom;
  std::uint64_t seed = 0;

  static StepChoicePolicy seeded(std::uint64_t seed) {
    return {Kind::SeededRandom, seed};
  }
  static StepChoicePolicy first_lexicographic() {
    return {Kind::FirstLexicographic, 0};
  }
};

/// Every step the mode permits at the marking, sorted canonically and
/// duplicate-free. Empty exactly when the marking is dead for the mode.
/// Raises UnboundedStepError when a finite-count mode meets a firable
/// transition of unbounded multiplicity.
std::vector<Step> enumerate_steps(const Marking& marking, const NetStructure& net,
                                  const SemanticsMode& mode);

/// One permitted step selected by the policy, or nullopt on a dead marking.
/// A pure function of its inputs: equal inputs give equal choices.
std::optional<Step> choose_step(const Marking& marking, const NetStructure& net,
                                const SemanticsMode& mode, const StepChoicePolicy& policy);

enum class TerminationReason { Dead, Budget };

struct ExecutionTrace {
  struct Entry {
    Step step;
    Marking marking;  // marking after the step
  };

  Marking initial;
  std::vector<Entry> entries;
  TerminationReason reason = TerminationReason::Dead;

  const Marking& final_marking() const {
    return entries.empty() ? initial : entries.back().marking;
  }
};

/// Tact-by-tact execution: repeatedly choose and apply one step until the
/// marking is dead or max_steps tacts have fired.
ExecutionTrace run(const Marking& initial, const NetStructure& net, const SemanticsMode& mode,
                   const StepChoicePolicy& policy, std::size_t max_steps);

}  // namespace tactnet
