#include "tactnet/semantics.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace tactnet {

namespace {

const char* class_name(NetClass c) {
  switch (c) {
    case NetClass::Petri: return "petri";
    case NetClass::Salwicki: return "salwicki";
    case NetClass::Sleptsov: return "sleptsov";
    case NetClass::SalwickiSleptsov: return "salwicki-sleptsov";
  }
  return "?";
}

}  // namespace

SemanticsMode parse_mode(std::string_view text) {
  SemanticsMode mode;
  // Split off "+extension" suffixes first.
  std::string base;
  std::vector<std::string> extensions;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    std::string part(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
    if (start == 0)
      base = part;
    else
      extensions.push_back(part);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }

  auto try_class = [&](std::string_view name, NetClass value) {
    if (base == name) {
      mode.net_class = value;
      mode.strength = Strength::General;
      return true;
    }
    if (base == std::string(name) + "-weak") {
      mode.net_class = value;
      mode.strength = Strength::Weak;
      return true;
    }
    if (base == std::string(name) + "-strong") {
      mode.net_class = value;
      mode.strength = Strength::Strong;
      return true;
    }
    return false;
  };

  // Longest class name first so "salwicki-sleptsov-strong" parses whole.
  if (!try_class("salwicki-sleptsov", NetClass::SalwickiSleptsov) &&
      !try_class("salwicki", NetClass::Salwicki) && !try_class("sleptsov", NetClass::Sleptsov) &&
      !try_class("petri", NetClass::Petri))
    throw ModeError("unknown semantics mode '" + std::string(text) + "'");

  for (const std::string& ext : extensions) {
    if (ext == "inhibitor")
      mode.inhibitor_arcs = true;
    else if (ext == "priority")
      mode.priority_relation = true;
    else
      throw ModeError("unknown mode extension '+" + ext + "'");
  }
  validate_mode(mode);
  return mode;
}

std::string format_mode(const SemanticsMode& mode) {
  std::string out = class_name(mode.net_class);
  if (mode.strength == Strength::Weak) out += "-weak";
  if (mode.strength == Strength::Strong) out += "-strong";
  if (mode.inhibitor_arcs) out += "+inhibitor";
  if (mode.priority_relation) out += "+priority";
  return out;
}

void validate_mode(const SemanticsMode& mode) {
  if (mode.net_class == NetClass::Petri && mode.strength != Strength::General)
    throw ModeError("petri semantics admits only the general strength");
  if (mode.priority_relation && mode.net_class != NetClass::Petri)
    throw ModeError("the priority relation applies only to petri semantics");
  if (mode.inhibitor_arcs &&
      (mode.net_class == NetClass::Salwicki || mode.net_class == NetClass::SalwickiSleptsov))
    throw ModeError("inhibitor arcs are not defined for joint-step (" +
                    std::string(class_name(mode.net_class)) + ") semantics");
}

void validate_mode_for_net(const SemanticsMode& mode, const NetStructure& net) {
  if (!mode.inhibitor_arcs && net.has_inhibitor_arcs())
    throw ModeError("net contains inhibitor arcs; run it under a +inhibitor mode");
}

namespace {

// Finite multiplicities of all firable transitions; a firable transition
// with unbounded multiplicity is rejected because the mode needs a count.
std::vector<std::pair<TransitionId, TokenCount>> finite_firable(const Marking& marking,
                                                                const NetStructure& net) {
  std::vector<std::pair<TransitionId, TokenCount>> out;
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    Multiplicity m = transition_multiplicity(marking, t, net);
    if (!m.positive()) continue;
    if (m.is_unbounded())
      throw UnboundedStepError("transition " + net.transition_name(t) +
                               " has unbounded multiplicity; a finite firing count is undefined");
    out.emplace_back(t, m.value());
  }
  return out;
}

std::vector<Step> petri_steps(const Marking& marking, const NetStructure& net,
                              const SemanticsMode& mode) {
  std::vector<TransitionId> firable;
  for (TransitionId t = 0; t < net.transition_count(); ++t)
    if (is_firable(marking, t, net)) firable.push_back(t);
  if (mode.priority_relation && !firable.empty()) {
    TokenCount top = net.priority(firable.front());
    for (TransitionId t : firable) top = std::max(top, net.priority(t));
    std::erase_if(firable, [&](TransitionId t) { return net.priority(t) != top; });
  }
  std::vector<Step> steps;
  steps.reserve(firable.size());
  for (TransitionId t : firable) steps.push_back(Step::single(t, 1));
  return steps;
}

std::vector<Step> sleptsov_steps(const Marking& marking, const NetStructure& net,
                                 Strength strength) {
  auto firable = finite_firable(marking, net);
  std::vector<Step> steps;
  switch (strength) {
    case Strength::General:
      for (const auto& [t, c] : firable) steps.push_back(Step::single(t, c));
      break;
    case Strength::Weak:
      for (const auto& [t, c] : firable)
        for (TokenCount k = 1; k <= c; ++k) steps.push_back(Step::single(t, k));
      break;
    case Strength::Strong: {
      TokenCount top = 0;
      for (const auto& [t, c] : firable) top = std::max(top, c);
      for (const auto& [t, c] : firable)
        if (c == top) steps.push_back(Step::single(t, c));
      break;
    }
  }
  return steps;
}

// Joint-step enumeration shared by the Salwicki (set) and Salwicki-Sleptsov
// (multiset) families. Walks transitions in index order choosing a count for
// each, with the remaining marking as the running bound, so every valid
// combination is produced exactly once.
class JointStepSearch {
public:
  JointStepSearch(const Marking& marking, const NetStructure& net, Strength strength,
                  bool set_semantics)
      : net_(net),
        strength_(strength),
        set_semantics_(set_semantics),
        remaining_(marking.tokens().begin(), marking.tokens().end()),
        counts_(net.transition_count(), 0) {
    if (!set_semantics_) (void)finite_firable(marking, net);  // reject unbounded counts up front
  }

  std::vector<Step> run() {
    descend(0);
    return std::move(results_);
  }

private:
  // Copies of t that fit in the remaining marking. Set semantics caps at 1.
  TokenCount fitting_copies(TransitionId t) const {
    TokenCount cap = set_semantics_ ? 1 : std::numeric_limits<TokenCount>::max();
    for (const Arc& arc : net_.inputs(t)) {
      cap = std::min(cap, remaining_[arc.place] / arc.weight);
      if (cap == 0) return 0;
    }
    return cap;
  }

  bool any_fits(bool skip_members) const {
    for (TransitionId t = 0; t < net_.transition_count(); ++t) {
      if (skip_members && counts_[t] > 0) continue;
      bool fits = true;
      for (const Arc& arc : net_.inputs(t)) {
        if (remaining_[arc.place] < arc.weight) {
          fits = false;
          break;
        }
      }
      if (fits) return true;
    }
    return false;
  }

  void emit_if_selected() {
    TokenCount total = 0;
    for (TokenCount c : counts_) total += c;
    if (total == 0) return;
    switch (strength_) {
      case Strength::Weak:
        break;
      case Strength::General:
        // Maximal: no transition (no *new* transition, for sets) fits in the
        // residual marking, so no count can be raised by one.
        if (any_fits(set_semantics_)) return;
        break;
      case Strength::Strong:
        if (total < best_total_) return;
        if (total > best_total_) {
          best_total_ = total;
          results_.clear();
        }
        break;
    }
    Step step;
    for (TransitionId t = 0; t < net_.transition_count(); ++t)
      if (counts_[t] > 0) step.add(t, counts_[t]);
    results_.push_back(std::move(step));
  }

  void descend(TransitionId t) {
    if (t == net_.transition_count()) {
      emit_if_selected();
      return;
    }
    TokenCount max_copies = fitting_copies(t);
    for (TokenCount k = 0; k <= max_copies; ++k) {
      counts_[t] = k;
      if (k > 0)
        for (const Arc& arc : net_.inputs(t)) remaining_[arc.place] -= arc.weight;
      descend(t + 1);
    }
    for (const Arc& arc : net_.inputs(t)) remaining_[arc.place] += max_copies * arc.weight;
    counts_[t] = 0;
  }

  const NetStructure& net_;
  Strength strength_;
  bool set_semantics_;
  std::vector<TokenCount> remaining_;
  std::vector<TokenCount> counts_;
  std::vector<Step> results_;
  TokenCount best_total_ = 0;
};

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL + b;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<Step> enumerate_steps(const Marking& marking, const NetStructure& net,
                                  const SemanticsMode& mode) {
  validate_mode(mode);
  validate_mode_for_net(mode, net);
  if (marking.size() != net.place_count())
    throw NetError("marking domain does not match the net's place set");

  std::vector<Step> steps;
  switch (mode.net_class) {
    case NetClass::Petri:
      steps = petri_steps(marking, net, mode);
      break;
    case NetClass::Sleptsov:
      steps = sleptsov_steps(marking, net, mode.strength);
      break;
    case NetClass::Salwicki:
      steps = JointStepSearch(marking, net, mode.strength, /*set_semantics=*/true).run();
      break;
    case NetClass::SalwickiSleptsov:
      steps = JointStepSearch(marking, net, mode.strength, /*set_semantics=*/false).run();
      break;
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

std::optional<Step> choose_step(const Marking& marking, const NetStructure& net,
                                const SemanticsMode& mode, const StepChoicePolicy& policy) {
  std::vector<Step> steps = enumerate_steps(marking, net, mode);
  if (steps.empty()) return std::nullopt;
  if (policy.kind == StepChoicePolicy::Kind::FirstLexicographic) return steps.front();
  // The draw depends only on (seed, marking), so equal inputs repeat the
  // same choice and a recorded run replays exactly.
  std::mt19937_64 gen(mix64(policy.seed, marking.hash()));
  return steps[gen() % steps.size()];
}

ExecutionTrace run(const Marking& initial, const NetStructure& net, const SemanticsMode& mode,
                   const StepChoicePolicy& policy, std::size_t max_steps) {
  ExecutionTrace trace;
  trace.initial = initial;
  Marking current = initial;
  for (std::size_t i = 0; i < max_steps; ++i) {
    std::optional<Step> step = choose_step(current, net, mode, policy);
    if (!step) {
      trace.reason = TerminationReason::Dead;
      return trace;
    }
    current = apply_step(current, *step, net);
    trace.entries.push_back({std::move(*step), current});
  }
  // Distinguish a run that stopped on budget from one that happens to end
  // dead exactly at the limit.
  trace.reason = choose_step(current, net, mode, policy) ? TerminationReason::Budget
                                                         : TerminationReason::Dead;
  return trace;
}

}  // namespace tactnet
