#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tactnet/net.hpp"
#include "tactnet/semantics.hpp"

namespace tactnet {

/// Bounded reachability graph: markings as nodes, full steps as edge labels.
/// Nodes are stored in discovery order; canonical_order() gives the sorted
/// view used by the deterministic exports.
struct ReachGraph {
  struct Node {
    Marking marking;
    bool initial = false;
    bool dead = false;
  };
  struct Edge {
    std::size_t source;
    Step step;
    std::size_t target;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool truncated = false;
  std::size_t bound = 0;

  /// Node indices sorted by marking.
  std::vector<std::size_t> canonical_order() const;
  std::vector<std::size_t> out_degrees() const;
  /// Markings of dead nodes, sorted.
  std::vector<Marking> terminal_markings() const;
};

/// Breadth-first closure of the initial marking under enumerate_steps. Every
/// stored node is expanded; when a new marking would exceed the node budget
/// it is dropped (with its edge) and the graph is flagged truncated.
ReachGraph build_rg(const NetStructure& net, const Marking& initial, const SemanticsMode& mode,
                    std::size_t node_budget);

/// DOT digraph with multiset node labels and step edge labels. Output is
/// deterministic: nodes in canonical marking order, edges sorted.
std::string export_dot(const ReachGraph& graph, const NetStructure& net);

/// Outcome of checking the strong-Sleptsov zero-check construction for one
/// register value x.
struct ZeroCheckCase {
  TokenCount x = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<Marking> terminals;
  bool ok = false;
  std::string detail;  // failure description, empty when ok
};

struct VerificationReport {
  std::vector<ZeroCheckCase> cases;
  bool ok = false;
};

/// Machine-checks the zero-check net of the strong-Sleptsov backend for
/// every x in 0..x_max: x=0 leaves the initial marking dead; x=1 yields the
/// five-node graph whose two paths converge on the jump exit; x>=2 yields
/// the four-node chain to the fall-through exit. Terminal markings must
/// restore the register and the guard token exactly.
VerificationReport verify_zero_check(TokenCount x_max);

}  // namespace tactnet
