#include "mebn/grounding.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <string>

#include <json.hpp>

namespace mebn {

const GroundNode* Ssbn::find(std::string_view id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

int Ssbn::index_of(std::string_view id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<GroundAtom> derive_time_facts(const WorldModel& w) {
  std::vector<GroundAtom> out;
  // Instances of an ordered type appear in ordinal order already; chain each
  // consecutive pair. Grouped per type to keep independent timelines apart.
  std::map<std::string, std::vector<const EntityInstance*>> byType;
  std::vector<std::string> typeOrder;
  for (const auto& inst : w.instances) {
    if (inst.ordinal == 0) continue;
    if (byType.find(inst.type) == byType.end()) typeOrder.push_back(inst.type);
    byType[inst.type].push_back(&inst);
  }
  for (const auto& type : typeOrder) {
    const auto& xs = byType[type];
    for (size_t i = 0; i + 1 < xs.size(); ++i)
      out.push_back({"Predecessor", {xs[i]->id, xs[i + 1]->id}});
  }
  return out;
}

namespace {

std::set<std::string> fact_ids(const WorldModel& w) {
  std::set<std::string> out;
  for (const auto& f : w.facts) out.insert(f.id());
  for (const auto& f : derive_time_facts(w)) out.insert(f.id());
  return out;
}

bool context_holds(const ContextConstraint& c, const Binding& b,
                   const std::set<std::string>& facts) {
  GroundAtom atom;
  atom.templateName = c.templateName;
  for (const auto& ov : c.ovArgs) {
    auto it = b.find(ov);
    if (it == b.end()) return false;
    atom.args.push_back(it->second);
  }
  if (c.equality) {
    auto it = b.find(c.boundOv);
    if (it == b.end()) return false;
    atom.args.push_back(it->second);
  }
  return facts.count(atom.id()) != 0;
}

}  // namespace

bool evaluate_context(const MFrag& f, const Binding& b, const WorldModel& w) {
  std::set<std::string> facts = fact_ids(w);
  return std::all_of(f.contexts.begin(), f.contexts.end(),
                     [&](const ContextConstraint& c) { return context_holds(c, b, facts); });
}

std::vector<double> build_cpt(const LocalDistribution& lpd, const std::vector<int>& parentCards,
                              const std::vector<std::vector<int>>& ruleParents,
                              const std::vector<int>& ruleStates) {
  if (lpd.defaultDist.empty())
    throw MebnError("REC-2", "local distribution has no fallback distribution");
  size_t cols = lpd.defaultDist.size();
  size_t rows = 1;
  for (int c : parentCards) rows *= static_cast<size_t>(c);

  std::vector<double> cpt;
  cpt.reserve(rows * cols);
  std::vector<int> combo(parentCards.size(), 0);
  for (size_t row = 0; row < rows; ++row) {
    const std::vector<double>* dist = &lpd.defaultDist;
    for (size_t r = 0; r < lpd.rules.size(); ++r) {
      const DistRule& rule = lpd.rules[r];
      bool match;
      if (rule.quant == Quantifier::Any) {
        match = std::any_of(ruleParents[r].begin(), ruleParents[r].end(),
                            [&](int i) { return combo[i] == ruleStates[r]; });
      } else {
        match = std::all_of(ruleParents[r].begin(), ruleParents[r].end(),
                            [&](int i) { return combo[i] == ruleStates[r]; });
      }
      if (match) {
        dist = &rule.dist;
        break;
      }
    }
    cpt.insert(cpt.end(), dist->begin(), dist->end());
    // Mixed-radix increment, leftmost parent most significant.
    for (int i = static_cast<int>(combo.size()) - 1; i >= 0; --i) {
      if (++combo[i] < parentCards[i]) break;
      combo[i] = 0;
    }
  }
  return cpt;
}

namespace {

struct HomeRef {
  const MFrag* mfrag = nullptr;
  const ResidentNode* resident = nullptr;
};

struct NodeBuild {
  GroundAtom atom;
  const MFrag* home = nullptr;
  const ResidentNode* resident = nullptr;
  std::vector<std::string> parents;                      // sorted unique ids
  std::map<std::string, std::set<std::string>> slots;    // slot key -> ground parent ids
};

std::string slot_key(const std::string& templateName, const std::vector<std::string>& ovArgs) {
  std::string key = templateName;
  key += '(';
  for (size_t i = 0; i < ovArgs.size(); ++i) {
    if (i != 0) key += ',';
    key += ovArgs[i];
  }
  key += ')';
  return key;
}

class SsbnBuilder {
 public:
  SsbnBuilder(const MTheory& t, const WorldModel& w, const GroundingOptions& opt)
      : theory_(t), world_(w), opt_(opt), facts_(fact_ids(w)) {
    for (const auto& f : t.mfrags)
      for (const auto& r : f.residents) {
        if (homes_.count(r.templateName) != 0) ambiguous_.insert(r.templateName);
        homes_[r.templateName] = {&f, &r};
      }
    for (const auto& inst : w.instances) instancesByType_[inst.type].push_back(inst.id);
  }

  Ssbn run() {
    std::deque<std::pair<GroundAtom, int>> queue;
    std::set<std::string> queued;
    auto seed = [&](const GroundAtom& a) {
      if (queued.insert(a.id()).second) queue.emplace_back(a, 0);
    };
    for (const auto& q : world_.queries) seed(q);
    for (const auto& [a, _] : world_.evidence) seed(a);

    while (!queue.empty()) {
      auto [atom, depth] = queue.front();
      queue.pop_front();
      std::string id = atom.id();
      if (built_.count(id) != 0) continue;
      if (depth > opt_.maxDepth)
        throw MebnError("GROUND-2", "grounding exceeded the depth limit of " +
                                        std::to_string(opt_.maxDepth) + " at '" + id + "'");
      NodeBuild nb = expand(atom);
      for (const auto& pid : nb.parents) {
        if (built_.count(pid) != 0 || queued.count(pid) != 0) continue;
        queued.insert(pid);
        queue.emplace_back(parentAtoms_.at(pid), depth + 1);
      }
      built_.emplace(id, std::move(nb));
    }
    return assemble();
  }

 private:
  const HomeRef& home_of(const GroundAtom& atom) {
    if (ambiguous_.count(atom.templateName) != 0)
      throw MebnError("GROUND-1", "template '" + atom.templateName + "' has multiple homes");
    auto it = homes_.find(atom.templateName);
    if (it == homes_.end())
      throw MebnError("GROUND-1", "atom '" + atom.id() + "' references an unknown template");
    if (it->second.resident->deterministic)
      throw MebnError("GROUND-1", "atom '" + atom.id() +
                                      "' targets a deterministic context relation");
    return it->second;
  }

  NodeBuild expand(const GroundAtom& atom) {
    NodeBuild nb;
    nb.atom = atom;
    const HomeRef& home = home_of(atom);
    nb.home = home.mfrag;
    nb.resident = home.resident;
    const MFrag& f = *home.mfrag;
    const ResidentNode& r = *home.resident;
    if (atom.args.size() != r.ovArgs.size())
      throw MebnError("GROUND-1", "atom '" + atom.id() + "' has the wrong number of arguments");
    for (size_t i = 0; i < atom.args.size(); ++i) {
      const EntityInstance* inst = world_.find_instance(atom.args[i]);
      const OrdinaryVariable* ov = f.find_ov(r.ovArgs[i]);
      if (inst == nullptr || (ov != nullptr && inst->type != ov->type))
        throw MebnError("GROUND-1", "atom '" + atom.id() + "' names '" + atom.args[i] +
                                        "', which is not a world instance of the required type");
    }

    // Fix the resident's own variables from the atom; a repeated variable
    // bound to two different instances satisfies nothing.
    Binding bound;
    bool consistent = true;
    for (size_t i = 0; i < r.ovArgs.size(); ++i) {
      auto [it, inserted] = bound.emplace(r.ovArgs[i], atom.args[i]);
      if (!inserted && it->second != atom.args[i]) consistent = false;
    }

    // Variables that influence this node: everything contexts or this
    // resident's rule atoms mention. Other residents of the MFrag are
    // irrelevant here.
    std::vector<const OrdinaryVariable*> free;
    if (consistent) {
      std::set<std::string> relevant;
      for (const auto& c : f.contexts) {
        for (const auto& a : c.ovArgs) relevant.insert(a);
        if (c.equality) relevant.insert(c.boundOv);
      }
      for (const auto& rule : r.lpd.rules)
        for (const auto& a : rule.parentOvArgs) relevant.insert(a);
      for (const auto& ov : f.ovs)
        if (relevant.count(ov.name) != 0 && bound.count(ov.name) == 0) free.push_back(&ov);
    }

    std::map<std::string, std::set<std::string>> equalityValues;
    std::set<std::string> slotOvs;
    for (const auto& rule : r.lpd.rules)
      for (const auto& a : rule.parentOvArgs) slotOvs.insert(a);

    std::vector<std::vector<std::string>> domains;
    for (const OrdinaryVariable* ov : free) domains.push_back(instancesByType_[ov->type]);
    bool anyEmpty = std::any_of(domains.begin(), domains.end(),
                                [](const auto& d) { return d.empty(); });

    if (consistent && !anyEmpty) {
      std::vector<size_t> odo(free.size(), 0);
      while (true) {
        Binding b = bound;
        for (size_t i = 0; i < free.size(); ++i) b[free[i]->name] = domains[i][odo[i]];
        bool ok = std::all_of(f.contexts.begin(), f.contexts.end(),
                              [&](const ContextConstraint& c) {
                                return context_holds(c, b, facts_);
                              });
        if (ok) {
          for (const auto& c : f.contexts)
            if (c.equality && slotOvs.count(c.boundOv) != 0)
              equalityValues[c.boundOv].insert(b.at(c.boundOv));
          for (const auto& rule : r.lpd.rules) {
            GroundAtom parent;
            parent.templateName = rule.parentTemplate;
            for (const auto& a : rule.parentOvArgs) parent.args.push_back(b.at(a));
            std::string pid = parent.id();
            nb.slots[slot_key(rule.parentTemplate, rule.parentOvArgs)].insert(pid);
            parentAtoms_.emplace(pid, std::move(parent));
          }
        }
        // Odometer over the free variables, last one fastest.
        size_t i = free.size();
        while (i > 0 && ++odo[i - 1] == domains[i - 1].size()) odo[--i] = 0;
        if (free.empty() || i == 0) break;
      }
    }

    for (const auto& [ov, values] : equalityValues)
      if (values.size() > 1) {
        std::string list;
        for (const auto& v : values) {
          if (!list.empty()) list += ", ";
          list += v;
        }
        throw MebnError("GROUND-3", "equality context binds '" + ov + "' to multiple values {" +
                                        list + "} while grounding '" + atom.id() +
                                        "'; parent sets would conflict");
      }

    std::set<std::string> parentIds;
    for (const auto& [_, ids] : nb.slots) parentIds.insert(ids.begin(), ids.end());
    nb.parents.assign(parentIds.begin(), parentIds.end());
    return nb;
  }

  Ssbn assemble() {
    // Deterministic topological order: ready set as a min-heap on node id.
    std::map<std::string, int> remaining;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [id, nb] : built_) {
      remaining[id] = static_cast<int>(nb.parents.size());
      for (const auto& p : nb.parents) children[p].push_back(id);
    }
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [id, n] : remaining)
      if (n == 0) ready.push(id);

    std::vector<std::string> order;
    while (!ready.empty()) {
      std::string id = ready.top();
      ready.pop();
      order.push_back(id);
      for (const auto& c : children[id])
        if (--remaining[c] == 0) ready.push(c);
    }
    if (order.size() != built_.size())
      throw MebnError("GROUND-4", "grounded network contains a cycle");

    std::map<std::string, std::string> evidence;
    for (const auto& [a, state] : world_.evidence) evidence[a.id()] = state;

    Ssbn out;
    for (const auto& id : order) {
      const NodeBuild& nb = built_.at(id);
      GroundNode node;
      node.id = id;
      node.templateName = nb.resident->templateName;
      node.states = nb.resident->states;
      node.parents = nb.parents;

      std::map<std::string, int> parentPos;
      std::vector<int> parentCards;
      for (size_t i = 0; i < nb.parents.size(); ++i) {
        parentPos[nb.parents[i]] = static_cast<int>(i);
        parentCards.push_back(
            static_cast<int>(built_.at(nb.parents[i]).resident->states.size()));
      }
      std::vector<std::vector<int>> ruleParents;
      std::vector<int> ruleStates;
      for (const auto& rule : nb.resident->lpd.rules) {
        std::vector<int> positions;
        auto it = nb.slots.find(slot_key(rule.parentTemplate, rule.parentOvArgs));
        if (it != nb.slots.end())
          for (const auto& pid : it->second) positions.push_back(parentPos.at(pid));
        ruleParents.push_back(std::move(positions));
        const ResidentNode* parentResident = home_resident_of(rule.parentTemplate);
        ruleStates.push_back(
            state_index(parentResident->states, rule.state, rule.parentTemplate));
      }
      node.cpt = build_cpt(nb.resident->lpd, parentCards, ruleParents, ruleStates);
      if (auto ev = evidence.find(id); ev != evidence.end()) {
        int idx = state_index(node.states, ev->second, node.templateName);
        (void)idx;  // validates the label
        node.evidenceState = ev->second;
      }
      out.nodes.push_back(std::move(node));
    }
    std::set<std::string> seenQueries;
    for (const auto& q : world_.queries)
      if (seenQueries.insert(q.id()).second) out.queries.push_back(q.id());
    return out;
  }

  const ResidentNode* home_resident_of(const std::string& templateName) {
    auto it = homes_.find(templateName);
    if (it == homes_.end())
      throw MebnError("GROUND-1", "template '" + templateName + "' has no home");
    return it->second.resident;
  }

  const MTheory& theory_;
  const WorldModel& world_;
  GroundingOptions opt_;
  std::set<std::string> facts_;
  std::map<std::string, HomeRef> homes_;
  std::set<std::string> ambiguous_;
  std::map<std::string, std::vector<std::string>> instancesByType_;
  std::map<std::string, NodeBuild> built_;
  std::map<std::string, GroundAtom> parentAtoms_;
};

std::string underscore_form(const std::string& id) {
  std::string out;
  for (char c : id) {
    if (c == '(' || c == ',') {
      out += '_';
    } else if (c == ')') {
      // dropped
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

Ssbn build_ssbn(const MTheory& t, const WorldModel& w, const GroundingOptions& opt) {
  return SsbnBuilder(t, w, opt).run();
}

std::string export_json(const Ssbn& s) {
  nlohmann::ordered_json out;
  out["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : s.nodes) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["states"] = n.states;
    jn["parents"] = n.parents;
    jn["cpt"] = n.cpt;
    if (n.evidenceState) jn["evidence"] = *n.evidenceState;
    out["nodes"].push_back(std::move(jn));
  }
  out["queries"] = s.queries;
  return out.dump(2) + "\n";
}

std::string export_dot(const Ssbn& s) {
  std::string out = "digraph ssbn {\n";
  for (const auto& n : s.nodes) {
    out += "  \"" + underscore_form(n.id) + "\"";
    if (n.evidenceState)
      out += " [shape=box, label=\"" + underscore_form(n.id) + " = " + *n.evidenceState + "\"]";
    out += ";\n";
  }
  for (const auto& n : s.nodes)
    for (const auto& p : n.parents)
      out += "  \"" + underscore_form(p) + "\" -> \"" + underscore_form(n.id) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace mebn
