#include "tactnet/json_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <tuple>

namespace tactnet {

Json marking_to_json(const NetStructure& net, const Marking& marking) {
  Json doc = Json::object();
  for (PlaceId p = 0; p < marking.size(); ++p)
    if (marking[p] != 0) doc[net.place_name(p)] = marking[p];
  return doc;
}

Marking marking_from_json(const Json& doc, const NetStructure& net) {
  std::vector<TokenCount> tokens(net.place_count(), 0);
  for (const auto& [name, value] : doc.items()) {
    auto p = net.find_place(name);
    if (!p) throw Error("unknown place '" + name + "' in marking document");
    tokens[*p] = value.get<TokenCount>();
  }
  return Marking(std::move(tokens));
}

Json step_to_json(const NetStructure& net, const Step& step) {
  Json doc = Json::object();
  for (const auto& [t, count] : step.items()) doc[net.transition_name(t)] = count;
  return doc;
}

Step step_from_json(const Json& doc, const NetStructure& net) {
  Step step;
  for (const auto& [name, value] : doc.items()) {
    auto t = net.find_transition(name);
    if (!t) throw Error("unknown transition '" + name + "' in step document");
    step.add(*t, value.get<TokenCount>());
  }
  return step;
}

namespace {

Json policy_to_json(const StepChoicePolicy& policy) {
  Json doc = Json::object();
  if (policy.kind == StepChoicePolicy::Kind::SeededRandom) {
    doc["kind"] = "seeded-random";
    doc["seed"] = policy.seed;
  } else {
    doc["kind"] = "first-lexicographic";
  }
  return doc;
}

}  // namespace

Json trace_to_json(const NetStructure& net, const SemanticsMode& mode,
                   const StepChoicePolicy& policy, const ExecutionTrace& trace) {
  Json doc;
  doc["format"] = "tactnet-trace";
  doc["version"] = 1;
  doc["mode"] = format_mode(mode);
  doc["policy"] = policy_to_json(policy);
  doc["initial"] = marking_to_json(net, trace.initial);
  Json steps = Json::array();
  for (const auto& entry : trace.entries) {
    Json item;
    item["step"] = step_to_json(net, entry.step);
    item["marking"] = marking_to_json(net, entry.marking);
    steps.push_back(std::move(item));
  }
  doc["steps"] = std::move(steps);
  doc["termination"] = trace.reason == TerminationReason::Dead ? "dead" : "budget";
  return doc;
}

Marking replay_trace(const Json& doc, const NetStructure& net) {
  Marking current = marking_from_json(doc.at("initial"), net);
  std::size_t index = 0;
  for (const Json& item : doc.at("steps")) {
    Step step = step_from_json(item.at("step"), net);
    current = apply_step(current, step, net);
    Marking recorded = marking_from_json(item.at("marking"), net);
    if (current != recorded)
      throw Error("trace replay diverged at step " + std::to_string(index) + ": reached " +
                  format_marking(net, current) + ", recorded " + format_marking(net, recorded));
    ++index;
  }
  return current;
}

Json rg_to_json(const NetStructure& net, const SemanticsMode& mode, const ReachGraph& graph) {
  std::vector<std::size_t> order = graph.canonical_order();
  std::vector<std::size_t> position(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  Json doc;
  doc["format"] = "tactnet-rg";
  doc["version"] = 1;
  doc["mode"] = format_mode(mode);
  doc["bound"] = graph.bound;
  doc["truncated"] = graph.truncated;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ReachGraph::Node& node = graph.nodes[order[i]];
    Json item;
    item["id"] = i;
    item["marking"] = marking_to_json(net, node.marking);
    item["initial"] = node.initial;
    item["dead"] = node.dead;
    nodes.push_back(std::move(item));
  }
  doc["nodes"] = std::move(nodes);

  struct EdgeRow {
    std::size_t source, target;
    Step step;
  };
  std::vector<EdgeRow> rows;
  rows.reserve(graph.edges.size());
  for (const ReachGraph::Edge& e : graph.edges)
    rows.push_back({position[e.source], position[e.target], e.step});
  std::sort(rows.begin(), rows.end(), [](const EdgeRow& a, const EdgeRow& b) {
    return std::tie(a.source, a.target, a.step) < std::tie(b.source, b.target, b.step);
  });
  Json edges = Json::array();
  for (const EdgeRow& row : rows) {
    Json item;
    item["source"] = row.source;
    item["step"] = step_to_json(net, row.step);
    item["target"] = row.target;
    edges.push_back(std::move(item));
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Json manifest_to_json(const CompiledNet& compiled) {
  const NetStructure& net = compiled.net;
  Json doc;
  doc["format"] = "tactnet-manifest";
  doc["version"] = 1;
  doc["backend"] = format_backend(compiled.backend);
  doc["mode"] = format_mode(mode_for_backend(compiled.backend));
  doc["encoding_offset"] = compiled.offset;
  Json control = Json::array();
  for (PlaceId p : compiled.control_places) control.push_back(net.place_name(p));
  doc["control_places"] = std::move(control);
  doc["halt_place"] = net.place_name(compiled.halt_place());
  Json registers = Json::array();
  for (PlaceId p : compiled.register_places) registers.push_back(net.place_name(p));
  doc["register_places"] = std::move(registers);
  Json internal = Json::array();
  for (const auto& item : compiled.internal_places) {
    Json row;
    row["name"] = net.place_name(item.place);
    row["instruction"] = item.instruction;
    internal.push_back(std::move(row));
  }
  doc["internal_places"] = std::move(internal);
  Json transitions = Json::array();
  for (const auto& info : compiled.transitions) {
    Json row;
    row["name"] = net.transition_name(info.id);
    row["instruction"] = info.instruction;
    row["role"] = info.role;
    transitions.push_back(std::move(row));
  }
  doc["transitions"] = std::move(transitions);
  return doc;
}

Manifest manifest_from_json(const Json& doc) {
  if (doc.value("format", "") != "tactnet-manifest")
    throw Error("not a tactnet manifest document");
  Manifest manifest;
  manifest.backend = parse_backend(doc.at("backend").get<std::string>());
  manifest.mode = parse_mode(doc.at("mode").get<std::string>());
  manifest.offset = doc.at("encoding_offset").get<TokenCount>();
  for (const Json& name : doc.at("control_places"))
    manifest.control_places.push_back(name.get<std::string>());
  manifest.halt_place = doc.at("halt_place").get<std::string>();
  for (const Json& name : doc.at("register_places"))
    manifest.register_places.push_back(name.get<std::string>());
  return manifest;
}

std::vector<TokenCount> decode_registers(const Manifest& manifest, const NetStructure& net,
                                         const Marking& marking) {
  std::vector<TokenCount> values;
  values.reserve(manifest.register_places.size());
  for (const std::string& name : manifest.register_places) {
    auto p = net.find_place(name);
    if (!p) throw Error("manifest register place '" + name + "' is not in the net");
    TokenCount tokens = marking[*p];
    if (tokens < manifest.offset)
      throw EncodingViolationError("register place " + name + " holds " +
                                   std::to_string(tokens) + " tokens, below the encoding offset");
    values.push_back(tokens - manifest.offset);
  }
  return values;
}

}  // namespace tactnet
