// Shared fixtures and generators for the test suites.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tactnet/net.hpp"
#include "tactnet/net_format.hpp"
#include "tactnet/semantics.hpp"

namespace testutil {

using namespace tactnet;

// The two-transition addition net: t1 moves p1 tokens to p3, t2 moves p2
// tokens to p3, initial marking (2, 3, 0).
inline NetDocument addition_net() {
  return parse_net(
      "place p1 init 2\n"
      "place p2 init 3\n"
      "place p3\n"
      "trans t1\n"
      "trans t2\n"
      "arc p1 -> t1\n"
      "arc t1 -> p3\n"
      "arc p2 -> t2\n"
      "arc t2 -> p3\n");
}

inline Marking marking_of(const NetStructure& net,
                          std::initializer_list<std::pair<const char*, TokenCount>> items) {
  std::vector<TokenCount> tokens(net.place_count(), 0);
  for (const auto& [name, value] : items) tokens[*net.find_place(name)] = value;
  return Marking(std::move(tokens));
}

inline Step step_of(const NetStructure& net,
                    std::initializer_list<std::pair<const char*, TokenCount>> items) {
  Step step;
  for (const auto& [name, value] : items) step.add(*net.find_transition(name), value);
  return step;
}

struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return range(1, 100) <= percent; }
};

struct NetGenOptions {
  int min_places = 2;
  int max_places = 4;
  int min_transitions = 1;
  int max_transitions = 4;
  TokenCount max_weight = 2;
  bool conservative = false;   // per-transition input weight sum == output sum
  bool priorities = false;
  bool inhibitors = false;
  bool allow_source_transitions = false;  // transitions with no inputs
};

// Random small net. Every transition gets at least one input unless sources
// are allowed; conservative nets balance each transition's weights so total
// tokens are invariant.
inline NetStructure random_net(Rng& rng, const NetGenOptions& opt = {}) {
  NetBuilder b;
  int places = static_cast<int>(rng.range(opt.min_places, opt.max_places));
  int transitions = static_cast<int>(rng.range(opt.min_transitions, opt.max_transitions));
  std::vector<PlaceId> ps;
  std::vector<TransitionId> ts;
  for (int i = 0; i < places; ++i) ps.push_back(b.add_place("p" + std::to_string(i + 1)));
  for (int i = 0; i < transitions; ++i) {
    TokenCount priority = opt.priorities ? rng.range(0, 2) : 0;
    ts.push_back(b.add_transition("t" + std::to_string(i + 1), priority));
  }
  for (TransitionId t : ts) {
    TokenCount in_total = 0;
    std::vector<bool> used(places, false);
    int inputs = static_cast<int>(rng.range(opt.allow_source_transitions ? 0 : 1, 2));
    for (int i = 0; i < inputs; ++i) {
      PlaceId p = ps[rng.range(0, places - 1)];
      if (used[p]) continue;
      used[p] = true;
      TokenCount w = rng.range(1, opt.max_weight);
      b.input_arc(p, t, w);
      in_total += w;
    }
    if (opt.inhibitors && rng.chance(25)) {
      PlaceId p = ps[rng.range(0, places - 1)];
      if (!used[p]) b.inhibitor_arc(p, t);
    }
    if (opt.conservative) {
      // Scatter exactly in_total units of output weight.
      std::vector<TokenCount> out(places, 0);
      for (TokenCount u = 0; u < in_total; ++u) out[rng.range(0, places - 1)] += 1;
      for (int p = 0; p < places; ++p)
        if (out[p] > 0) b.output_arc(t, ps[p], out[p]);
    } else {
      int outputs = static_cast<int>(rng.range(0, 2));
      std::vector<bool> used_out(places, false);
      for (int i = 0; i < outputs; ++i) {
        PlaceId p = ps[rng.range(0, places - 1)];
        if (used_out[p]) continue;
        used_out[p] = true;
        b.output_arc(t, ps[p], rng.range(1, opt.max_weight));
      }
    }
  }
  return b.build();
}

inline Marking random_marking(Rng& rng, std::size_t places, TokenCount max_tokens = 4) {
  std::vector<TokenCount> tokens(places);
  for (auto& v : tokens) v = rng.range(0, max_tokens);
  return Marking(std::move(tokens));
}

inline SemanticsMode mode_of(NetClass net_class, Strength strength) {
  SemanticsMode mode;
  mode.net_class = net_class;
  mode.strength = strength;
  return mode;
}

}  // namespace testutil
