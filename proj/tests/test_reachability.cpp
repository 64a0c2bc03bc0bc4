#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "common.hpp"
#include "oracle.hpp"
#include "tactnet/compiler.hpp"
#include "tactnet/reachability.hpp"

using namespace tactnet;
using testutil::addition_net;
using testutil::marking_of;
using testutil::mode_of;
using testutil::step_of;

namespace {

// Node/edge sets must match the brute-force exploration exactly.
void check_against_oracle(const ReachGraph& graph, const NetStructure& net,
                          const Marking& initial, const SemanticsMode& mode) {
  oracle::DenseNet dense = oracle::dense_of(net);
  oracle::Graph expected =
      oracle::reach(dense, oracle::Tokens(initial.tokens().begin(), initial.tokens().end()), mode);
  REQUIRE(graph.nodes.size() == expected.nodes.size());
  REQUIRE(graph.edges.size() == expected.edge_count);

  std::set<oracle::Tokens> expected_nodes(expected.nodes.begin(), expected.nodes.end());
  std::set<oracle::Tokens> actual_nodes;
  for (const auto& node : graph.nodes)
    actual_nodes.insert(oracle::Tokens(node.marking.tokens().begin(), node.marking.tokens().end()));
  CHECK(actual_nodes == expected_nodes);

  std::set<std::size_t> dead;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    if (graph.nodes[i].dead) dead.insert(i);
  CHECK(dead.size() == expected.dead.size());
}

}  // namespace

TEST_CASE("addition net graphs per mode, against frozen counts and the oracle") {
  auto [net, initial] = addition_net();

  struct Expectation {
    const char* mode;
    std::size_t nodes;
    std::size_t edges;
  };
  // Frozen from the brute-force enumerator: petri reaches every (i,j) with
  // i<=2, j<=3; salwicki walks one joint path; sleptsov forms the diamond of
  // the two full firings; strong sleptsov keeps the single maximal path.
  for (const Expectation& e : {Expectation{"petri", 12, 17}, Expectation{"salwicki", 4, 3},
                               Expectation{"sleptsov", 4, 4}, Expectation{"sleptsov-strong", 3, 2},
                               Expectation{"salwicki-sleptsov", 2, 1}}) {
    CAPTURE(e.mode);
    SemanticsMode mode = parse_mode(e.mode);
    ReachGraph graph = build_rg(net, initial, mode, 1000);
    CHECK(!graph.truncated);
    CHECK(graph.nodes.size() == e.nodes);
    CHECK(graph.edges.size() == e.edges);
    check_against_oracle(graph, net, initial, mode);
  }
}

TEST_CASE("petri graph of the addition net has a single dead node") {
  auto [net, initial] = addition_net();
  ReachGraph graph = build_rg(net, initial, parse_mode("petri"), 1000);
  std::vector<Marking> terminals = graph.terminal_markings();
  REQUIRE(terminals.size() == 1);
  CHECK(terminals.front() == marking_of(net, {{"p3", 5}}));
}

TEST_CASE("salwicki graph is the three-step joint path") {
  auto [net, initial] = addition_net();
  ReachGraph graph = build_rg(net, initial, parse_mode("salwicki"), 1000);
  REQUIRE(graph.nodes.size() == 4);
  for (std::size_t degree : graph.out_degrees()) CHECK(degree <= 1);
  std::set<Marking> markings;
  for (const auto& node : graph.nodes) markings.insert(node.marking);
  CHECK(markings == std::set<Marking>{initial, marking_of(net, {{"p1", 1}, {"p2", 2}, {"p3", 2}}),
                                      marking_of(net, {{"p2", 1}, {"p3", 4}}),
                                      marking_of(net, {{"p3", 5}})});
}

TEST_CASE("sleptsov graph is the diamond of the two full firings") {
  auto [net, initial] = addition_net();
  ReachGraph graph = build_rg(net, initial, parse_mode("sleptsov"), 1000);
  REQUIRE(graph.nodes.size() == 4);
  auto degrees = graph.out_degrees();
  CHECK(std::count(degrees.begin(), degrees.end(), 2) == 1);  // initial branches
  CHECK(std::count(degrees.begin(), degrees.end(), 1) == 2);  // two middles
  CHECK(std::count(degrees.begin(), degrees.end(), 0) == 1);  // terminal
}

TEST_CASE("strong sleptsov path carries the full steps") {
  auto [net, initial] = addition_net();
  ReachGraph graph = build_rg(net, initial, parse_mode("sleptsov-strong"), 1000);
  REQUIRE(graph.nodes.size() == 3);
  REQUIRE(graph.edges.size() == 2);
  CHECK(graph.edges[0].step == step_of(net, {{"t2", 3}}));
  CHECK(graph.edges[1].step == step_of(net, {{"t1", 2}}));
}

TEST_CASE("every edge recomputes: apply_step(source, step) == target") {
  auto [net, initial] = addition_net();
  for (const char* mode : {"petri", "salwicki", "sleptsov", "sleptsov-weak", "salwicki-sleptsov"}) {
    ReachGraph graph = build_rg(net, initial, parse_mode(mode), 1000);
    for (const ReachGraph::Edge& e : graph.edges)
      CHECK(apply_step(graph.nodes[e.source].marking, e.step, net) ==
            graph.nodes[e.target].marking);
  }
}

TEST_CASE("out-degree equals the enumeration size when not truncated") {
  auto [net, initial] = addition_net();
  for (const char* mode : {"petri", "sleptsov", "salwicki-sleptsov-weak"}) {
    SemanticsMode m = parse_mode(mode);
    ReachGraph graph = build_rg(net, initial, m, 10000);
    REQUIRE(!graph.truncated);
    auto degrees = graph.out_degrees();
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      CHECK(degrees[i] == enumerate_steps(graph.nodes[i].marking, net, m).size());
      CHECK(graph.nodes[i].dead == (degrees[i] == 0));
    }
  }
}

TEST_CASE("node budget truncates and reports it") {
  auto [net, initial] = addition_net();
  ReachGraph graph = build_rg(net, initial, parse_mode("petri"), 3);
  CHECK(graph.truncated);
  CHECK(graph.nodes.size() == 3);

  CHECK_THROWS_AS(build_rg(net, initial, parse_mode("petri"), 0), Error);
}

TEST_CASE("exploration order does not change the node/edge sets") {
  // The same graph rebuilt must be identical, and node sets match the oracle
  // regardless of internal ordering.
  auto [net, initial] = addition_net();
  ReachGraph a = build_rg(net, initial, parse_mode("sleptsov-weak"), 1000);
  ReachGraph b = build_rg(net, initial, parse_mode("sleptsov-weak"), 1000);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    CHECK(a.nodes[i].marking == b.nodes[i].marking);
  CHECK(a.edges.size() == b.edges.size());
}

TEST_CASE("strong-sleptsov steps condense petri paths on the addition net") {
  auto [net, initial] = addition_net();
  ReachGraph strong = build_rg(net, initial, parse_mode("sleptsov-strong"), 1000);
  ReachGraph petri = build_rg(net, initial, parse_mode("petri"), 1000);

  std::set<Marking> petri_nodes;
  for (const auto& node : petri.nodes) petri_nodes.insert(node.marking);
  std::set<std::pair<Marking, Marking>> petri_edges;
  for (const auto& e : petri.edges)
    petri_edges.insert({petri.nodes[e.source].marking, petri.nodes[e.target].marking});

  for (const auto& e : strong.edges) {
    REQUIRE(e.step.transition_count() == 1);
    auto [t, count] = e.step.items()[0];
    Marking current = strong.nodes[e.source].marking;
    for (TokenCount i = 0; i < count; ++i) {
      Marking next = apply_step(current, Step::single(t, 1), net);
      CHECK(petri_nodes.count(current));
      CHECK(petri_edges.count({current, next}));
      current = next;
    }
    CHECK(current == strong.nodes[e.target].marking);
  }
}

TEST_CASE("dot export is deterministic and shape-exact") {
  auto [net, initial] = addition_net();

  SUBCASE("single dead node") {
    NetBuilder b;
    b.add_place("p");
    TransitionId t = b.add_transition("t");
    b.input_arc(0, t);
    NetStructure dead_net = b.build();
    ReachGraph graph = build_rg(dead_net, Marking({0}), parse_mode("petri"), 10);
    std::string dot = export_dot(graph, dead_net);
    CHECK(dot == "digraph reachability {\n"
                 "  rankdir=LR;\n"
                 "  node [shape=box];\n"
                 "  n0 [label=\"{}\" penwidth=2 peripheries=2];\n"
                 "}\n");
  }
  SUBCASE("strong sleptsov addition graph") {
    ReachGraph graph = build_rg(net, initial, parse_mode("sleptsov-strong"), 1000);
    std::string dot = export_dot(graph, net);
    CHECK(dot.find("3·t2") != std::string::npos);
    CHECK(dot.find("2·t1") != std::string::npos);
    CHECK(dot.find("{2·p1, 3·p2}") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '>') == 2);  // two edges
    CHECK(dot == export_dot(graph, net));                 // byte-identical re-export
  }
}

TEST_CASE("verify_zero_check holds for small x") {
  VerificationReport report = verify_zero_check(5);
  CHECK(report.ok);
  REQUIRE(report.cases.size() == 6);

  const ZeroCheckCase& x0 = report.cases[0];
  CHECK(x0.node_count == 1);
  CHECK(x0.edge_count == 0);

  const ZeroCheckCase& x1 = report.cases[1];
  CHECK(x1.node_count == 5);
  CHECK(x1.edge_count == 5);
  REQUIRE(x1.terminals.size() == 1);

  for (std::size_t x = 2; x < report.cases.size(); ++x) {
    CHECK(report.cases[x].node_count == 4);
    CHECK(report.cases[x].edge_count == 3);
  }

  CHECK_THROWS_AS(verify_zero_check(0), Error);
}

TEST_CASE("zero-check terminals carry the expected ports") {
  ZeroCheckNet zc = make_zero_check_net(Backend::StrongSleptsov);
  VerificationReport report = verify_zero_check(7);
  REQUIRE(report.ok);

  // x=1 ends on the jump place, x=7 on the finish place, register restored.
  const ZeroCheckCase& x1 = report.cases[1];
  CHECK(x1.terminals.front()[zc.jump] == 1);
  CHECK(x1.terminals.front()[zc.reg] == 1);

  const ZeroCheckCase& x7 = report.cases[7];
  CHECK(x7.terminals.front()[zc.finish] == 1);
  CHECK(x7.terminals.front()[zc.reg] == 7);
}
