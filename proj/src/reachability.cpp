#include "tactnet/reachability.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "tactnet/compiler.hpp"

namespace tactnet {

std::vector<std::size_t> ReachGraph::canonical_order() const {
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return nodes[a].marking < nodes[b].marking; });
  return order;
}

std::vector<std::size_t> ReachGraph::out_degrees() const {
  std::vector<std::size_t> degrees(nodes.size(), 0);
  for (const Edge& e : edges) ++degrees[e.source];
  return degrees;
}

std::vector<Marking> ReachGraph::terminal_markings() const {
  std::vector<Marking> out;
  for (const Node& node : nodes)
    if (node.dead) out.push_back(node.marking);
  std::sort(out.begin(), out.end());
  return out;
}

ReachGraph build_rg(const NetStructure& net, const Marking& initial, const SemanticsMode& mode,
                    std::size_t node_budget) {
  if (node_budget < 1) throw Error("node budget must be >= 1");
  validate_mode(mode);
  validate_mode_for_net(mode, net);

  ReachGraph graph;
  graph.bound = node_budget;
  std::map<Marking, std::size_t> index;

  graph.nodes.push_back({initial, /*initial=*/true, /*dead=*/false});
  index.emplace(initial, 0);
  std::deque<std::size_t> queue{0};

  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    // Copy: growing graph.nodes invalidates references.
    const Marking source = graph.nodes[id].marking;
    std::vector<Step> steps = enumerate_steps(source, net, mode);
    graph.nodes[id].dead = steps.empty();
    for (Step& step : steps) {
      Marking target = apply_step(source, step, net);
      auto it = index.find(target);
      std::size_t target_id;
      if (it != index.end()) {
        target_id = it->second;
      } else if (graph.nodes.size() < node_budget) {
        target_id = graph.nodes.size();
        graph.nodes.push_back({target, false, false});
        index.emplace(std::move(target), target_id);
        queue.push_back(target_id);
      } else {
        graph.truncated = true;  // frontier marking dropped with its edge
        continue;
      }
      graph.edges.push_back({id, std::move(step), target_id});
    }
  }
  return graph;
}

std::string export_dot(const ReachGraph& graph, const NetStructure& net) {
  std::vector<std::size_t> order = graph.canonical_order();
  std::vector<std::size_t> position(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  std::ostringstream out;
  out << "digraph reachability {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ReachGraph::Node& node = graph.nodes[order[i]];
    out << "  n" << i << " [label=\"" << format_marking(net, node.marking) << "\"";
    if (node.initial) out << " penwidth=2";
    if (node.dead) out << " peripheries=2";
    out << "];\n";
  }
  struct DotEdge {
    std::size_t source, target;
    std::string label;
  };
  std::vector<DotEdge> edges;
  edges.reserve(graph.edges.size());
  for (const ReachGraph::Edge& e : graph.edges)
    edges.push_back({position[e.source], position[e.target], format_step(net, e.step)});
  std::sort(edges.begin(), edges.end(), [](const DotEdge& a, const DotEdge& b) {
    return std::tie(a.source, a.target, a.label) < std::tie(b.source, b.target, b.label);
  });
  for (const DotEdge& e : edges)
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << e.label << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

// Expected zero-check graph for one x, straight from the construction:
// exact node and edge sets, not just counts.
struct ExpectedGraph {
  std::vector<Marking> nodes;
  std::vector<std::tuple<Marking, Step, Marking>> edges;
  Marking terminal;
};

ExpectedGraph expected_zero_check(const ZeroCheckNet& zc, TokenCount x) {
  const NetStructure& net = zc.net;
  auto marking = [&](std::initializer_list<std::pair<PlaceId, TokenCount>> items) {
    std::vector<TokenCount> tokens(net.place_count(), 0);
    for (const auto& [p, v] : items) tokens[p] = v;
    return Marking(std::move(tokens));
  };
  auto step = [&](const char* name, TokenCount count) {
    return Step::single(*net.find_transition(name), count);
  };

  PlaceId probe = zc.internal[0], pair_done = zc.internal[1], single_done = zc.internal[2];
  PlaceId guard = *zc.guard;

  ExpectedGraph expected;
  Marking start = marking({{zc.start, 1}, {zc.reg, x}, {guard, 1}});
  if (x == 0) {
    expected.nodes = {start};
    expected.terminal = start;
    return expected;
  }
  Marking armed = marking({{zc.reg, x}, {probe, 2}, {guard, 1}});
  if (x == 1) {
    Marking via_pair = marking({{probe, 1}, {pair_done, 1}, {guard, 1}});
    Marking via_single = marking({{probe, 1}, {single_done, 1}, {guard, 1}});
    Marking done = marking({{zc.jump, 1}, {zc.reg, 1}, {guard, 1}});
    expected.nodes = {start, armed, via_pair, via_single, done};
    expected.edges = {{start, step("t1", 1), armed},
                      {armed, step("t2", 1), via_pair},
                      {armed, step("t3", 1), via_single},
                      {via_pair, step("t5", 1), done},
                      {via_single, step("t6", 1), done}};
    expected.terminal = done;
    return expected;
  }
  Marking drained = marking({{zc.reg, x - 2}, {pair_done, 2}, {guard, 1}});
  Marking done = marking({{zc.finish, 1}, {zc.reg, x}, {guard, 1}});
  expected.nodes = {start, armed, drained, done};
  expected.edges = {{start, step("t1", 1), armed},
                    {armed, step("t2", 2), drained},
                    {drained, step("t4", 1), done}};
  expected.terminal = done;
  return expected;
}

}  // namespace

VerificationReport verify_zero_check(TokenCount x_max) {
  if (x_max < 1) throw Error("x_max must be >= 1");
  ZeroCheckNet zc = make_zero_check_net(Backend::StrongSleptsov);
  SemanticsMode mode = mode_for_backend(Backend::StrongSleptsov);

  VerificationReport report;
  report.ok = true;
  for (TokenCount x = 0; x <= x_max; ++x) {
    ZeroCheckCase result;
    result.x = x;
    ExpectedGraph expected = expected_zero_check(zc, x);

    std::vector<TokenCount> tokens(zc.net.place_count(), 0);
    tokens[zc.start] = 1;
    tokens[zc.reg] = x;
    tokens[*zc.guard] = 1;
    ReachGraph rg = build_rg(zc.net, Marking(std::move(tokens)), mode,
                             /*node_budget=*/expected.nodes.size() + 8);

    result.node_count = rg.nodes.size();
    result.edge_count = rg.edges.size();
    result.terminals = rg.terminal_markings();

    std::ostringstream problems;
    if (rg.truncated) problems << "graph truncated; ";
    std::vector<Marking> actual_nodes;
    for (const auto& node : rg.nodes) actual_nodes.push_back(node.marking);
    std::sort(actual_nodes.begin(), actual_nodes.end());
    std::vector<Marking> expected_nodes = expected.nodes;
    std::sort(expected_nodes.begin(), expected_nodes.end());
    if (actual_nodes != expected_nodes)
      problems << "node set differs (" << rg.nodes.size() << " nodes, expected "
               << expected.nodes.size() << "); ";

    std::vector<std::tuple<Marking, Step, Marking>> actual_edges;
    for (const auto& e : rg.edges)
      actual_edges.emplace_back(rg.nodes[e.source].marking, e.step, rg.nodes[e.target].marking);
    std::sort(actual_edges.begin(), actual_edges.end());
    std::vector<std::tuple<Marking, Step, Marking>> expected_edges = expected.edges;
    std::sort(expected_edges.begin(), expected_edges.end());
    if (actual_edges != expected_edges)
      problems << "edge set differs (" << rg.edges.size() << " edges, expected "
               << expected.edges.size() << "); ";

    if (result.terminals.size() != 1 || result.terminals.front() != expected.terminal)
      problems << "terminal differs (expected " << format_marking(zc.net, expected.terminal)
               << "); ";
    // The exits must restore the register and guard exactly.
    for (const Marking& terminal : result.terminals) {
      if (terminal[zc.reg] != x) problems << "register not preserved; ";
      if (terminal[*zc.guard] != 1) problems << "guard not preserved; ";
    }

    result.detail = problems.str();
    result.ok = result.detail.empty();
    report.ok = report.ok && result.ok;
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace tactnet
