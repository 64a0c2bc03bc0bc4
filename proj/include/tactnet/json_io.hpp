#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "tactnet/compiler.hpp"
#include "tactnet/net.hpp"
#include "tactnet/reachability.hpp"
#include "tactnet/semantics.hpp"

namespace tactnet {

using Json = nlohmann::json;

/// Sparse {place name: tokens} object; zero entries are omitted.
Json marking_to_json(const NetStructure& net, const Marking& marking);
Marking marking_from_json(const Json& doc, const NetStructure& net);

Json step_to_json(const NetStructure& net, const Step& step);
Step step_from_json(const Json& doc, const NetStructure& net);

/// Replayable trace document: mode, policy, initial marking, one entry per
/// tact, termination reason.
Json trace_to_json(const NetStructure& net, const SemanticsMode& mode,
                   const StepChoicePolicy& policy, const ExecutionTrace& trace);

/// Re-applies the recorded steps from the recorded initial marking and
/// checks every recorded marking on the way; returns the final marking.
Marking replay_trace(const Json& doc, const NetStructure& net);

/// Reachability graph document; node ids follow the canonical marking order.
Json rg_to_json(const NetStructure& net, const SemanticsMode& mode, const ReachGraph& graph);

/// Place-role manifest emitted next to a compiled net.
Json manifest_to_json(const CompiledNet& compiled);

/// The manifest fields needed to interpret a compiled net's markings.
struct Manifest {
  Backend backend = Backend::Inhibitor;
  SemanticsMode mode;
  TokenCount offset = 0;
  std::vector<std::string> control_places;
  std::string halt_place;
  std::vector<std::string> register_places;
};

Manifest manifest_from_json(const Json& doc);

/// Register values decoded through a manifest; raises
/// EncodingViolationError when a register place is under the offset.
std::vector<TokenCount> decode_registers(const Manifest& manifest, const NetStructure& net,
                                         const Marking& marking);

}  // namespace tactnet
