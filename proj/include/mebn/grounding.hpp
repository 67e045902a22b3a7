// Query-directed grounding: instantiate the templates reachable from a
// world's queries and evidence into a concrete situation-specific network.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mebn/model.hpp"
#include "mebn/world.hpp"

namespace mebn {

struct GroundNode {
  std::string id;  // canonical atom form, e.g. "Speed(tr1,t1)"
  std::string templateName;
  std::vector<std::string> states;
  std::vector<std::string> parents;  // ascending lexicographic by id
  // Row-major: one row per parent-state combination (leftmost parent most
  // significant), one column per own state in declared order.
  std::vector<double> cpt;
  std::optional<std::string> evidenceState;
};

struct Ssbn {
  std::vector<GroundNode> nodes;  // topological, lexicographic tie-break
  std::vector<std::string> queries;

  const GroundNode* find(std::string_view id) const;
  int index_of(std::string_view id) const;  // -1 if absent
};

struct GroundingOptions {
  int maxDepth = 10000;  // expansion chain length before GROUND-2
};

// Successor facts between consecutive instances of ordered types, derived
// from declaration order; never asserted by worlds.
std::vector<GroundAtom> derive_time_facts(const WorldModel& w);

using Binding = std::map<std::string, std::string>;  // ov name -> instance id

// True iff every context constraint of the MFrag holds under the binding
// against the world's facts plus derived time facts (closed world).
bool evaluate_context(const MFrag& f, const Binding& b, const WorldModel& w);

// Compile the flat CPT for a ground node. `parentCards` are the state counts
// of the node's parents in id order; `ruleParents[r]` lists the parent
// positions grounded from rule r's referenced atom; `ruleStates[r]` is the
// index of rule r's comparison state in that parent template's state list.
std::vector<double> build_cpt(const LocalDistribution& lpd,
                              const std::vector<int>& parentCards,
                              const std::vector<std::vector<int>>& ruleParents,
                              const std::vector<int>& ruleStates);

// Throws MebnError GROUND-1 (unresolvable atom), GROUND-2 (depth limit),
// GROUND-3 (ambiguous equality-context binding), GROUND-4 (ground cycle;
// only reachable from theories that fail validation).
Ssbn build_ssbn(const MTheory& t, const WorldModel& w, const GroundingOptions& opt = {});

std::string export_json(const Ssbn& s);
std::string export_dot(const Ssbn& s);

}  // namespace mebn
