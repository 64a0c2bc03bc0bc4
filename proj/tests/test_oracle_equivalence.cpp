#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "common.hpp"
#include "oracle.hpp"
#include "tactnet/reachability.hpp"
#include "tactnet/semantics.hpp"

// Exact step-set equivalence between the engine and the brute-force oracle
// over randomized nets and markings, for every mode the net supports.

using namespace tactnet;

namespace {

std::set<oracle::Counts> engine_step_set(const Marking& m, const NetStructure& net,
                                         const SemanticsMode& mode) {
  std::set<oracle::Counts> out;
  for (const Step& step : enumerate_steps(m, net, mode)) {
    oracle::Counts counts(net.transition_count(), 0);
    for (const auto& [t, count] : step.items()) counts[t] = count;
    out.insert(std::move(counts));
  }
  return out;
}

std::set<oracle::Counts> oracle_step_set(const oracle::DenseNet& net, const oracle::Tokens& m,
                                         const SemanticsMode& mode) {
  auto steps = oracle::steps(net, m, mode);
  return std::set<oracle::Counts>(steps.begin(), steps.end());
}

void compare_all_modes(const NetStructure& net, const Marking& marking,
                       const std::vector<SemanticsMode>& modes) {
  oracle::DenseNet dense = oracle::dense_of(net);
  oracle::Tokens tokens(marking.tokens().begin(), marking.tokens().end());
  for (const SemanticsMode& mode : modes) {
    CAPTURE(format_mode(mode));
    bool engine_unbounded = false;
    bool oracle_unbounded = false;
    std::set<oracle::Counts> engine, expected;
    try {
      engine = engine_step_set(marking, net, mode);
    } catch (const UnboundedStepError&) {
      engine_unbounded = true;
    }
    try {
      expected = oracle_step_set(dense, tokens, mode);
    } catch (const std::runtime_error&) {
      oracle_unbounded = true;
    }
    REQUIRE(engine_unbounded == oracle_unbounded);
    if (!engine_unbounded) CHECK(engine == expected);
  }
}

std::vector<SemanticsMode> plain_modes() {
  std::vector<SemanticsMode> modes{testutil::mode_of(NetClass::Petri, Strength::General)};
  for (Strength s : {Strength::Weak, Strength::General, Strength::Strong}) {
    modes.push_back(testutil::mode_of(NetClass::Salwicki, s));
    modes.push_back(testutil::mode_of(NetClass::Sleptsov, s));
    modes.push_back(testutil::mode_of(NetClass::SalwickiSleptsov, s));
  }
  return modes;
}

}  // namespace

TEST_CASE("engine equals oracle on plain random nets, all ten modes") {
  testutil::Rng rng(0x0eaC1e);
  auto modes = plain_modes();
  for (int round = 0; round < 1500; ++round) {
    NetStructure net = testutil::random_net(rng);
    Marking marking = testutil::random_marking(rng, net.place_count());
    compare_all_modes(net, marking, modes);
  }
}

TEST_CASE("engine equals oracle with source transitions present") {
  testutil::Rng rng(0x5001ce);
  testutil::NetGenOptions opt;
  opt.allow_source_transitions = true;
  auto modes = plain_modes();
  for (int round = 0; round < 800; ++round) {
    NetStructure net = testutil::random_net(rng, opt);
    Marking marking = testutil::random_marking(rng, net.place_count());
    compare_all_modes(net, marking, modes);
  }
}

TEST_CASE("engine equals oracle on inhibitor nets under petri and sleptsov") {
  testutil::Rng rng(0x1297);
  testutil::NetGenOptions opt;
  opt.inhibitors = true;
  std::vector<SemanticsMode> modes;
  {
    SemanticsMode petri = testutil::mode_of(NetClass::Petri, Strength::General);
    petri.inhibitor_arcs = true;
    modes.push_back(petri);
    for (Strength s : {Strength::Weak, Strength::General, Strength::Strong}) {
      SemanticsMode sleptsov = testutil::mode_of(NetClass::Sleptsov, s);
      sleptsov.inhibitor_arcs = true;
      modes.push_back(sleptsov);
    }
  }
  for (int round = 0; round < 1200; ++round) {
    NetStructure net = testutil::random_net(rng, opt);
    Marking marking = testutil::random_marking(rng, net.place_count());
    compare_all_modes(net, marking, modes);
  }
}

TEST_CASE("engine equals oracle on priority nets under petri") {
  testutil::Rng rng(0x9210);
  testutil::NetGenOptions opt;
  opt.priorities = true;
  SemanticsMode petri = testutil::mode_of(NetClass::Petri, Strength::General);
  petri.priority_relation = true;
  for (int round = 0; round < 1200; ++round) {
    NetStructure net = testutil::random_net(rng, opt);
    Marking marking = testutil::random_marking(rng, net.place_count());
    compare_all_modes(net, marking, {petri});
  }
}

TEST_CASE("reachability graphs equal the oracle's on small random nets") {
  testutil::Rng rng(0x26ACD);
  testutil::NetGenOptions opt;
  opt.conservative = true;  // bounded graphs
  for (int round = 0; round < 150; ++round) {
    NetStructure net = testutil::random_net(rng, opt);
    Marking initial = testutil::random_marking(rng, net.place_count(), 3);
    for (const char* mode_text : {"petri", "salwicki", "sleptsov-strong", "salwicki-sleptsov"}) {
      SemanticsMode mode = parse_mode(mode_text);
      ReachGraph graph = build_rg(net, initial, mode, 100000);
      REQUIRE(!graph.truncated);
      oracle::Graph expected = oracle::reach(
          oracle::dense_of(net), oracle::Tokens(initial.tokens().begin(), initial.tokens().end()),
          mode);
      CHECK(graph.nodes.size() == expected.nodes.size());
      CHECK(graph.edges.size() == expected.edge_count);
      std::set<std::size_t> dead;
      for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        if (graph.nodes[i].dead) dead.insert(i);
      CHECK(dead.size() == expected.dead.size());
    }
  }
}
