#include "mebn/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace mebn {

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  out << d.span.file << ':' << d.span.line << ':' << d.span.column << ": "
      << (d.severity == Severity::Error ? "error" : "warning") << ' ' << d.code << ": "
      << d.message;
  return out.str();
}

const char* to_string(EntityKind k) {
  switch (k) {
    case EntityKind::Time: return "time";
    case EntityKind::Observer: return "observer";
    case EntityKind::Sensor: return "sensor";
    case EntityKind::Reported: return "reported";
    case EntityKind::Target: return "target";
    case EntityKind::Other: return "other";
  }
  return "other";
}

std::optional<EntityKind> entity_kind_from(std::string_view name) {
  if (name == "time") return EntityKind::Time;
  if (name == "observer") return EntityKind::Observer;
  if (name == "sensor") return EntityKind::Sensor;
  if (name == "reported") return EntityKind::Reported;
  if (name == "target") return EntityKind::Target;
  if (name == "other") return EntityKind::Other;
  return std::nullopt;
}

const char* to_string(MFragGroup g) {
  switch (g) {
    case MFragGroup::Unspecified: return "";
    case MFragGroup::Context: return "context";
    case MFragGroup::Target: return "target";
    case MFragGroup::Observing: return "observing";
    case MFragGroup::Report: return "report";
    case MFragGroup::Situation: return "situation";
  }
  return "";
}

std::optional<MFragGroup> mfrag_group_from(std::string_view name) {
  if (name == "context") return MFragGroup::Context;
  if (name == "target") return MFragGroup::Target;
  if (name == "observing") return MFragGroup::Observing;
  if (name == "report") return MFragGroup::Report;
  if (name == "situation") return MFragGroup::Situation;
  return std::nullopt;
}

const OrdinaryVariable* MFrag::find_ov(std::string_view name) const {
  for (const auto& ov : ovs)
    if (ov.name == name) return &ov;
  return nullptr;
}

const ResidentNode* MFrag::find_resident(std::string_view templateName) const {
  for (const auto& r : residents)
    if (r.templateName == templateName) return &r;
  return nullptr;
}

const EntityType* MTheory::find_entity_type(std::string_view name) const {
  for (const auto& e : entityTypes)
    if (e.name == name) return &e;
  return nullptr;
}

const MFrag& home_mfrag(const MTheory& t, std::string_view templateName) {
  const MFrag* found = nullptr;
  for (const auto& f : t.mfrags) {
    if (f.find_resident(templateName) == nullptr) continue;
    if (found != nullptr)
      throw MebnError("MultipleHomes", "template '" + std::string(templateName) +
                                           "' is resident in MFrags '" + found->name + "' and '" +
                                           f.name + "'");
    found = &f;
  }
  if (found == nullptr)
    throw MebnError("NotFound",
                    "template '" + std::string(templateName) + "' has no home MFrag");
  return *found;
}

const ResidentNode& home_resident(const MTheory& t, std::string_view templateName) {
  return *home_mfrag(t, templateName).find_resident(templateName);
}

RVTemplate resolve_template(const MTheory& t, std::string_view templateName) {
  const MFrag& home = home_mfrag(t, templateName);
  const ResidentNode& r = *home.find_resident(templateName);
  RVTemplate out;
  out.name = r.templateName;
  out.states = r.states;
  out.kind = r.kind;
  out.deterministic = r.deterministic;
  for (const auto& arg : r.ovArgs) {
    const OrdinaryVariable* ov = home.find_ov(arg);
    out.argTypes.push_back(ov != nullptr ? ov->type : std::string());
  }
  return out;
}

int state_index(const std::vector<std::string>& states, std::string_view label,
                std::string_view templateName) {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == label) return static_cast<int>(i);
  throw MebnError("UnknownState", "template '" + std::string(templateName) + "' has no state '" +
                                      std::string(label) + "'");
}

int state_index(const RVTemplate& tmpl, std::string_view label) {
  return state_index(tmpl.states, label, tmpl.name);
}

const char* to_string(EdgeTiming t) {
  switch (t) {
    case EdgeTiming::SameSlice: return "sameSlice";
    case EdgeTiming::Recursive: return "recursive";
    case EdgeTiming::Backward: return "backward";
    case EdgeTiming::UnboundShift: return "unboundShift";
  }
  return "sameSlice";
}

namespace {

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Timing of a dependency whose parent atom uses `parentArgs` and whose child
// resident uses `childArgs`, given the MFrag's Predecessor contexts.
EdgeTiming classify_timing(const MFrag& f, const std::vector<std::string>& parentArgs,
                           const std::vector<std::string>& childArgs,
                           const std::set<std::string>& orderedOvs) {
  for (const auto& ctx : f.contexts) {
    if (ctx.equality || ctx.templateName != "Predecessor" || ctx.ovArgs.size() != 2) continue;
    if (contains(parentArgs, ctx.ovArgs[0]) && contains(childArgs, ctx.ovArgs[1]))
      return EdgeTiming::Recursive;
    if (contains(parentArgs, ctx.ovArgs[1]) && contains(childArgs, ctx.ovArgs[0]))
      return EdgeTiming::Backward;
  }
  for (const auto& a : parentArgs)
    if (orderedOvs.count(a) != 0 && !contains(childArgs, a)) return EdgeTiming::UnboundShift;
  return EdgeTiming::SameSlice;
}

}  // namespace

std::vector<TemplateEdge> template_dependency_graph(const MTheory& t) {
  // Inputs must resolve somewhere, even when no rule references them.
  std::map<std::string, int> homes;
  for (const auto& f : t.mfrags)
    for (const auto& r : f.residents) homes[r.templateName] += 1;
  for (const auto& f : t.mfrags)
    for (const auto& in : f.inputs)
      if (homes.find(in.templateName) == homes.end())
        throw MebnError("UnresolvedReference", "input template '" + in.templateName +
                                                   "' in MFrag '" + f.name + "' has no home");

  std::vector<TemplateEdge> edges;
  std::set<std::tuple<std::string, std::string, EdgeTiming>> seen;
  for (const auto& f : t.mfrags) {
    std::set<std::string> orderedOvs;
    for (const auto& ov : f.ovs) {
      const EntityType* et = t.find_entity_type(ov.type);
      if (et != nullptr && et->ordered) orderedOvs.insert(ov.name);
    }
    for (const auto& r : f.residents) {
      for (const auto& rule : r.lpd.rules) {
        TemplateEdge e;
        e.parent = rule.parentTemplate;
        e.child = r.templateName;
        e.timing = classify_timing(f, rule.parentOvArgs, r.ovArgs, orderedOvs);
        e.mfrag = f.name;
        e.span = rule.span;
        if (seen.insert({e.parent, e.child, e.timing}).second) edges.push_back(std::move(e));
      }
    }
  }
  return edges;
}

bool operator==(const EntityType& a, const EntityType& b) {
  return a.name == b.name && a.kind == b.kind && a.ordered == b.ordered;
}

bool operator==(const EntityInstance& a, const EntityInstance& b) {
  return a.id == b.id && a.type == b.type && a.ordinal == b.ordinal;
}

bool operator==(const OrdinaryVariable& a, const OrdinaryVariable& b) {
  return a.name == b.name && a.type == b.type;
}

bool operator==(const ContextConstraint& a, const ContextConstraint& b) {
  return a.equality == b.equality && a.boundOv == b.boundOv && a.templateName == b.templateName &&
         a.ovArgs == b.ovArgs;
}

bool operator==(const DistRule& a, const DistRule& b) {
  return a.quant == b.quant && a.parentTemplate == b.parentTemplate &&
         a.parentOvArgs == b.parentOvArgs && a.state == b.state && a.dist == b.dist;
}

bool operator==(const LocalDistribution& a, const LocalDistribution& b) {
  return a.rules == b.rules && a.defaultDist == b.defaultDist;
}

bool operator==(const ResidentNode& a, const ResidentNode& b) {
  return a.templateName == b.templateName && a.ovArgs == b.ovArgs && a.states == b.states &&
         a.kind == b.kind && a.deterministic == b.deterministic && a.lpd == b.lpd;
}

bool operator==(const InputNode& a, const InputNode& b) {
  return a.templateName == b.templateName && a.ovArgs == b.ovArgs;
}

bool operator==(const MFrag& a, const MFrag& b) {
  return a.name == b.name && a.group == b.group && a.ovs == b.ovs && a.contexts == b.contexts &&
         a.inputs == b.inputs && a.residents == b.residents;
}

bool operator==(const MTheory& a, const MTheory& b) {
  return a.name == b.name && a.entityTypes == b.entityTypes && a.mfrags == b.mfrags;
}

}  // namespace mebn
