#include "mebn/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>

namespace mebn {

namespace {

struct Home {
  const MFrag* mfrag = nullptr;
  const ResidentNode* resident = nullptr;
};

// templateName -> every MFrag keeping a resident for it, declaration order.
std::map<std::string, std::vector<Home>> collect_homes(const MTheory& t) {
  std::map<std::string, std::vector<Home>> out;
  for (const auto& f : t.mfrags)
    for (const auto& r : f.residents) out[r.templateName].push_back({&f, &r});
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i != 0) out += sep;
    out += xs[i];
  }
  return out;
}

// Argument types of an atom as declared in the MFrag that references it.
std::vector<std::string> arg_types(const MFrag& f, const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    const OrdinaryVariable* ov = f.find_ov(a);
    out.push_back(ov != nullptr ? ov->type : std::string());
  }
  return out;
}

std::vector<std::string> resident_arg_types(const MFrag& home, const ResidentNode& r) {
  return arg_types(home, r.ovArgs);
}

}  // namespace

std::vector<Diagnostic> check_unique_home(const MTheory& t) {
  std::vector<Diagnostic> diags;
  auto homes = collect_homes(t);

  for (const auto& [name, hs] : homes) {
    if (hs.size() < 2) continue;
    std::vector<std::string> frags;
    for (const auto& h : hs) frags.push_back(h.mfrag->name);
    diags.push_back({Severity::Error, "UH-1",
                     "template '" + name + "' is resident in " + std::to_string(hs.size()) +
                         " MFrags: " + join(frags, ", "),
                     hs[1].resident->span});
  }

  auto check_signature = [&](const MFrag& f, const std::string& templateName,
                             const std::vector<std::string>& args, const SourceSpan& span,
                             const char* what, std::vector<Diagnostic>& out) -> const Home* {
    auto it = homes.find(templateName);
    if (it == homes.end()) {
      out.push_back({Severity::Error, "UH-2",
                     std::string(what) + " references template '" + templateName +
                         "', which has no home MFrag",
                     span});
      return nullptr;
    }
    if (it->second.size() > 1) return nullptr;  // covered by UH-1
    const Home& home = it->second[0];
    std::vector<std::string> expected = resident_arg_types(*home.mfrag, *home.resident);
    std::vector<std::string> got = arg_types(f, args);
    if (expected != got) {
      out.push_back({Severity::Error, "UH-3",
                     std::string(what) + " '" + templateName + "(" + join(args, ", ") +
                         ")' does not match the template's signature (" + join(expected, ", ") +
                         ")",
                     span});
      return nullptr;
    }
    return &home;
  };

  for (const auto& f : t.mfrags) {
    for (const auto& in : f.inputs) {
      const Home* home = check_signature(f, in.templateName, in.ovArgs, in.span, "input", diags);
      if (home != nullptr && home->resident->deterministic)
        diags.push_back({Severity::Error, "UH-3",
                         "context relation '" + in.templateName +
                             "' cannot be used as a stochastic input",
                         in.span});
    }
    for (const auto& c : f.contexts) {
      if (!c.equality) {
        const Home* home =
            check_signature(f, c.templateName, c.ovArgs, c.span, "context", diags);
        if (home != nullptr && !home->resident->deterministic)
          diags.push_back({Severity::Error, "UH-3",
                           "context constraint on '" + c.templateName +
                               "' requires a deterministic template",
                           c.span});
        continue;
      }
      // Equality form: the bound variable occupies the template's last slot.
      auto it = homes.find(c.templateName);
      if (it == homes.end()) {
        diags.push_back({Severity::Error, "UH-2",
                         "context references template '" + c.templateName +
                             "', which has no home MFrag",
                         c.span});
        continue;
      }
      if (it->second.size() > 1) continue;
      const Home& home = it->second[0];
      if (!home.resident->deterministic) {
        diags.push_back({Severity::Error, "UH-3",
                         "context constraint on '" + c.templateName +
                             "' requires a deterministic template",
                         c.span});
        continue;
      }
      std::vector<std::string> expected = resident_arg_types(*home.mfrag, *home.resident);
      std::vector<std::string> got = arg_types(f, c.ovArgs);
      const OrdinaryVariable* bound = f.find_ov(c.boundOv);
      if (bound != nullptr) got.push_back(bound->type);
      if (expected != got)
        diags.push_back({Severity::Error, "UH-3",
                         "equality context '" + c.boundOv + " = " + c.templateName + "(" +
                             join(c.ovArgs, ", ") + ")' does not match the template's signature (" +
                             join(expected, ", ") + ")",
                         c.span});
    }
    // Rule comparison states must exist on the referenced parent template.
    for (const auto& r : f.residents) {
      for (const auto& rule : r.lpd.rules) {
        auto it = homes.find(rule.parentTemplate);
        if (it == homes.end() || it->second.size() != 1) continue;
        const auto& states = it->second[0].resident->states;
        if (std::find(states.begin(), states.end(), rule.state) == states.end())
          diags.push_back({Severity::Error, "UH-3",
                           "rule compares '" + rule.parentTemplate + "' against unknown state '" +
                               rule.state + "'",
                           rule.span});
      }
    }
  }
  return diags;
}

namespace {

// Edges that can close a cycle within one time slice. Strictly-backward-
// looking (recursive) edges are the sanctioned unrolling mechanism; forward
// edges are conformance errors; a same-template unconstrained shift is
// reported by REC-1 instead.
bool cycle_relevant(const TemplateEdge& e) {
  switch (e.timing) {
    case EdgeTiming::SameSlice: return true;
    case EdgeTiming::UnboundShift: return e.parent != e.child;
    case EdgeTiming::Recursive:
    case EdgeTiming::Backward: return false;
  }
  return false;
}

}  // namespace

std::vector<Diagnostic> check_template_acyclic(const MTheory& t) {
  std::vector<Diagnostic> diags;
  std::vector<TemplateEdge> all = template_dependency_graph(t);

  std::set<std::string> nodes;
  std::map<std::string, std::vector<std::string>> adj;
  std::vector<const TemplateEdge*> kept;
  for (const auto& e : all) {
    if (!cycle_relevant(e)) continue;
    kept.push_back(&e);
    nodes.insert(e.parent);
    nodes.insert(e.child);
    adj[e.parent].push_back(e.child);
  }
  for (auto& [_, next] : adj) std::sort(next.begin(), next.end());

  // Tarjan; nodes visited in name order so component output is stable.
  std::map<std::string, int> index, low;
  std::set<std::string> onStack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> cyclicSccs;
  int counter = 0;

  std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onStack.insert(v);
    for (const auto& w : adj[v]) {
      if (index.find(w) == index.end()) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (onStack.count(w) != 0) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> scc;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        onStack.erase(w);
        scc.push_back(w);
        if (w == v) break;
      }
      bool selfLoop = false;
      for (const auto& w : adj[scc[0]])
        if (scc.size() == 1 && w == scc[0]) selfLoop = true;
      if (scc.size() > 1 || selfLoop) {
        std::sort(scc.begin(), scc.end());
        cyclicSccs.push_back(std::move(scc));
      }
    }
  };
  for (const auto& v : nodes)
    if (index.find(v) == index.end()) strongconnect(v);

  std::sort(cyclicSccs.begin(), cyclicSccs.end());
  for (const auto& scc : cyclicSccs) {
    std::set<std::string> members(scc.begin(), scc.end());
    const TemplateEdge* where = nullptr;
    for (const TemplateEdge* e : kept) {
      if (members.count(e->parent) == 0 || members.count(e->child) == 0) continue;
      if (where == nullptr || std::tie(e->child, e->parent) < std::tie(where->child, where->parent))
        where = e;
    }
    diags.push_back({Severity::Error, "CYC-1",
                     "dependency cycle within one time slice: " + join(scc, ", "),
                     where != nullptr ? where->span : SourceSpan{}});
  }
  return diags;
}

namespace {

// A same-template input is the temporal-recursion idiom: the template feeds
// itself from another slice. Reports inputs lacking a Predecessor constraint
// that ties their ordered argument to the resident's (either direction).
std::vector<const InputNode*> unconstrained_recursions(const MTheory& t, const MFrag& f) {
  std::vector<const InputNode*> out;
  std::set<std::string> orderedOvs;
  for (const auto& ov : f.ovs) {
    const EntityType* et = t.find_entity_type(ov.type);
    if (et != nullptr && et->ordered) orderedOvs.insert(ov.name);
  }
  for (const auto& in : f.inputs) {
    const ResidentNode* r = f.find_resident(in.templateName);
    if (r == nullptr) continue;
    bool shifted = false;
    for (const auto& a : in.ovArgs)
      if (orderedOvs.count(a) != 0 &&
          std::find(r->ovArgs.begin(), r->ovArgs.end(), a) == r->ovArgs.end())
        shifted = true;
    if (!shifted) continue;
    bool constrained = false;
    for (const auto& ctx : f.contexts) {
      if (ctx.equality || ctx.templateName != "Predecessor" || ctx.ovArgs.size() != 2) continue;
      bool fwd = std::find(in.ovArgs.begin(), in.ovArgs.end(), ctx.ovArgs[0]) != in.ovArgs.end() &&
                 std::find(r->ovArgs.begin(), r->ovArgs.end(), ctx.ovArgs[1]) != r->ovArgs.end();
      bool bwd = std::find(in.ovArgs.begin(), in.ovArgs.end(), ctx.ovArgs[1]) != in.ovArgs.end() &&
                 std::find(r->ovArgs.begin(), r->ovArgs.end(), ctx.ovArgs[0]) != r->ovArgs.end();
      if (fwd || bwd) constrained = true;
    }
    if (!constrained) out.push_back(&in);
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> check_recursion_wellformed(const MTheory& t) {
  std::vector<Diagnostic> diags;
  for (const auto& f : t.mfrags) {
    for (const InputNode* in : unconstrained_recursions(t, f))
      diags.push_back({Severity::Error, "REC-1",
                       "recursive input '" + in->templateName +
                           "' shifts an ordered argument without a Predecessor context",
                       in->span});
    for (const auto& r : f.residents) {
      if (r.deterministic) continue;
      bool recursive = f.find_resident(r.templateName) != nullptr &&
                       std::any_of(f.inputs.begin(), f.inputs.end(), [&](const InputNode& in) {
                         return in.templateName == r.templateName;
                       });
      if (recursive && r.lpd.defaultDist.empty())
        diags.push_back({Severity::Error, "REC-2",
                         "recursive template '" + r.templateName +
                             "' has no fallback distribution for the first time slice",
                         r.span});
    }
  }
  return diags;
}

std::vector<Diagnostic> check_conformance(const MTheory& t, const ConformanceProfile& p) {
  std::vector<Diagnostic> diags;
  auto homes = collect_homes(t);

  auto kind_of = [&](const std::string& templateName) -> const std::string* {
    auto it = homes.find(templateName);
    if (it == homes.end() || it->second.size() != 1) return nullptr;
    return &it->second[0].resident->kind;
  };
  auto is_deterministic = [&](const std::string& templateName) {
    auto it = homes.find(templateName);
    return it != homes.end() && it->second.size() == 1 && it->second[0].resident->deterministic;
  };

  for (const auto& f : t.mfrags)
    for (const auto& r : f.residents) {
      if (r.deterministic) continue;
      if (r.kind.empty())
        diags.push_back({Severity::Error, "CONF-KIND",
                         "resident '" + r.templateName + "' declares no RV kind", r.span});
      else if (!p.has_kind(r.kind))
        diags.push_back({Severity::Error, "CONF-KIND",
                         "RV kind '" + r.kind + "' of '" + r.templateName +
                             "' is not part of profile '" + p.name + "'",
                         r.span});
    }

  std::vector<TemplateEdge> edges = template_dependency_graph(t);
  for (const auto& e : edges) {
    if (is_deterministic(e.parent) || is_deterministic(e.child)) continue;
    const std::string* pk = kind_of(e.parent);
    const std::string* ck = kind_of(e.child);
    if (pk == nullptr || ck == nullptr) continue;
    if (e.timing == EdgeTiming::Backward) {
      diags.push_back({Severity::Error, "CONF-TIME",
                       "'" + e.child + "' depends on '" + e.parent +
                           "' at a strictly later time slice",
                       e.span});
      continue;
    }
    if (e.timing == EdgeTiming::Recursive && *pk == *ck && p.allowSameKindTemporalRecursion)
      continue;
    if (pk->empty() || ck->empty()) continue;  // CONF-KIND already reported
    if (!p.allows_edge(*pk, *ck))
      diags.push_back({Severity::Error, "CONF-EDGE",
                       "profile '" + p.name + "' does not allow a " + *pk + " parent for " +
                           *ck + " template '" + e.child + "'",
                       e.span});
  }

  for (const auto& rule : p.requiredContexts) {
    if (rule.id == "CONF-OBS") {
      for (const auto& f : t.mfrags) {
        bool applies = std::any_of(f.residents.begin(), f.residents.end(),
                                   [&](const ResidentNode& r) {
                                     return !r.deterministic &&
                                            std::find(rule.residentKinds.begin(),
                                                      rule.residentKinds.end(),
                                                      r.kind) != rule.residentKinds.end();
                                   });
        if (!applies) continue;
        bool hasSensor = false, hasTarget = false;
        for (const auto& ov : f.ovs) {
          const EntityType* et = t.find_entity_type(ov.type);
          if (et == nullptr) continue;
          if (et->kind == EntityKind::Sensor) hasSensor = true;
          if (et->kind == EntityKind::Target) hasTarget = true;
        }
        if (!hasSensor || !hasTarget) continue;
        bool found = std::any_of(f.contexts.begin(), f.contexts.end(),
                                 [&](const ContextConstraint& c) {
                                   return !c.equality && c.templateName == rule.contextTemplate;
                                 });
        if (!found)
          diags.push_back({Severity::Warning, rule.id,
                           "MFrag '" + f.name + "' observes a target without a '" +
                               rule.contextTemplate + "' context",
                           f.span});
      }
    } else if (rule.id == "CONF-ACT") {
      for (const auto& f : t.mfrags) {
        for (const auto& r : f.residents) {
          if (r.deterministic || std::find(rule.residentKinds.begin(), rule.residentKinds.end(),
                                           r.kind) == rule.residentKinds.end())
            continue;
          bool fed = false;
          for (const auto& e : edges) {
            if (e.child != r.templateName) continue;
            const std::string* pk = kind_of(e.parent);
            if (pk != nullptr && std::find(rule.parentKinds.begin(), rule.parentKinds.end(),
                                           *pk) != rule.parentKinds.end())
              fed = true;
          }
          if (!fed) continue;
          bool found = std::any_of(f.contexts.begin(), f.contexts.end(),
                                   [&](const ContextConstraint& c) {
                                     return c.equality && c.templateName == rule.contextTemplate;
                                   });
          if (!found)
            diags.push_back({Severity::Warning, rule.id,
                             "reported template '" + r.templateName + "' lacks a '" +
                                 rule.contextTemplate + "' equality context",
                             r.span});
        }
      }
    } else if (rule.id == "CONF-PRED") {
      for (const auto& f : t.mfrags)
        for (const InputNode* in : unconstrained_recursions(t, f))
          diags.push_back({Severity::Warning, rule.id,
                           "recursive input '" + in->templateName + "' lacks a '" +
                               rule.contextTemplate + "' context",
                           in->span});
    }
  }
  return diags;
}

ValidationReport validate_all(const MTheory& t, const ConformanceProfile& p, bool strict) {
  ValidationReport report;
  report.diagnostics = check_unique_home(t);
  if (!has_errors(report.diagnostics)) {
    std::vector<Diagnostic> cyc = check_template_acyclic(t);
    std::vector<Diagnostic> rec = check_recursion_wellformed(t);
    bool structuralOk = !has_errors(cyc) && !has_errors(rec);
    report.diagnostics.insert(report.diagnostics.end(), cyc.begin(), cyc.end());
    report.diagnostics.insert(report.diagnostics.end(), rec.begin(), rec.end());
    if (structuralOk) {
      std::vector<Diagnostic> conf = check_conformance(t, p);
      report.diagnostics.insert(report.diagnostics.end(), conf.begin(), conf.end());
    }
  }
  if (strict)
    for (auto& d : report.diagnostics) d.severity = Severity::Error;
  report.passed = !has_errors(report.diagnostics);
  return report;
}

}  // namespace mebn
