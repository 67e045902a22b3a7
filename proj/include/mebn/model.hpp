// Core model: entity types, MFrags, resident/input nodes, local
// distributions, and the template-level dependency graph.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mebn/diagnostics.hpp"

namespace mebn {

enum class EntityKind { Time, Observer, Sensor, Reported, Target, Other };

const char* to_string(EntityKind k);
std::optional<EntityKind> entity_kind_from(std::string_view name);

enum class MFragGroup { Unspecified, Context, Target, Observing, Report, Situation };

const char* to_string(MFragGroup g);
std::optional<MFragGroup> mfrag_group_from(std::string_view name);

struct EntityType {
  std::string name;
  EntityKind kind = EntityKind::Other;
  bool ordered = false;  // only Time-kinded types may be ordered
  SourceSpan span;
};

struct EntityInstance {
  std::string id;
  std::string type;
  int ordinal = 0;  // 1-based position for instances of ordered types, else 0
};

struct OrdinaryVariable {
  std::string name;
  std::string type;
  SourceSpan span;
};

// Either a predicate constraint `Template(ov, ...)` that must hold as a world
// fact, or an equality constraint `ov = Template(ov, ...)` binding an
// ordinary variable through a deterministic relation.
struct ContextConstraint {
  bool equality = false;
  std::string boundOv;  // equality only
  std::string templateName;
  std::vector<std::string> ovArgs;  // for equality, excludes the value slot
  SourceSpan span;
};

enum class Quantifier { Any, All };

struct DistRule {
  Quantifier quant = Quantifier::Any;
  std::string parentTemplate;
  std::vector<std::string> parentOvArgs;
  std::string state;         // compared against the parent's states
  std::vector<double> dist;  // over the resident's own states
  SourceSpan span;
};

// Ordered first-match rules with a mandatory fallback.
struct LocalDistribution {
  std::vector<DistRule> rules;
  std::vector<double> defaultDist;
};

struct ResidentNode {
  std::string templateName;
  std::vector<std::string> ovArgs;
  std::vector<std::string> states;  // >= 2, distinct
  std::string kind;                 // profile RV kind tag; "CTX" when deterministic
  bool deterministic = false;
  LocalDistribution lpd;  // unused for deterministic residents
  SourceSpan span;
};

struct InputNode {
  std::string templateName;
  std::vector<std::string> ovArgs;
  SourceSpan span;
};

struct MFrag {
  std::string name;
  MFragGroup group = MFragGroup::Unspecified;
  std::vector<OrdinaryVariable> ovs;
  std::vector<ContextConstraint> contexts;
  std::vector<InputNode> inputs;
  std::vector<ResidentNode> residents;
  SourceSpan span;

  const OrdinaryVariable* find_ov(std::string_view name) const;
  const ResidentNode* find_resident(std::string_view templateName) const;
};

struct MTheory {
  std::string name;
  std::vector<EntityType> entityTypes;
  std::vector<MFrag> mfrags;

  const EntityType* find_entity_type(std::string_view name) const;
};

// A random-variable template as resolved from its unique home MFrag.
struct RVTemplate {
  std::string name;
  std::vector<std::string> argTypes;
  std::vector<std::string> states;
  std::string kind;
  bool deterministic = false;
};

// Unique-home resolution. Throws MebnError("NotFound"|"MultipleHomes").
const MFrag& home_mfrag(const MTheory& t, std::string_view templateName);
const ResidentNode& home_resident(const MTheory& t, std::string_view templateName);
RVTemplate resolve_template(const MTheory& t, std::string_view templateName);

// Index of a state label in declared order. Throws MebnError("UnknownState").
int state_index(const RVTemplate& tmpl, std::string_view label);
int state_index(const std::vector<std::string>& states, std::string_view label,
                std::string_view templateName);

// How a dependency crosses time slices. SameSlice: no ordered-argument shift.
// Recursive: parent bound strictly earlier via a Predecessor context.
// Backward: parent bound strictly later (always a conformance error).
// UnboundShift: parent names an ordered variable distinct from the child's
// with no Predecessor constraint tying them.
enum class EdgeTiming { SameSlice, Recursive, Backward, UnboundShift };

const char* to_string(EdgeTiming t);

struct TemplateEdge {
  std::string parent;
  std::string child;
  EdgeTiming timing = EdgeTiming::SameSlice;
  std::string mfrag;  // MFrag declaring the dependency
  SourceSpan span;

  bool recursive() const { return timing == EdgeTiming::Recursive; }
};

// One edge per (parent template, child template, timing) dependency, derived
// from the atoms referenced by local-distribution rules. Throws
// MebnError("UnresolvedReference") if an input's template has no home.
std::vector<TemplateEdge> template_dependency_graph(const MTheory& t);

// Structural equality for model values ignores source spans.
bool operator==(const EntityType& a, const EntityType& b);
bool operator==(const EntityInstance& a, const EntityInstance& b);
bool operator==(const OrdinaryVariable& a, const OrdinaryVariable& b);
bool operator==(const ContextConstraint& a, const ContextConstraint& b);
bool operator==(const DistRule& a, const DistRule& b);
bool operator==(const LocalDistribution& a, const LocalDistribution& b);
bool operator==(const ResidentNode& a, const ResidentNode& b);
bool operator==(const InputNode& a, const InputNode& b);
bool operator==(const MFrag& a, const MFrag& b);
bool operator==(const MTheory& a, const MTheory& b);

}  // namespace mebn
