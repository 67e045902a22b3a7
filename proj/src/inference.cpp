#include "mebn/inference.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace mebn {

namespace {

constexpr double kZeroMass = 1e-300;
constexpr size_t kOracleLimit = size_t{1} << 22;

size_t table_size(const std::vector<int>& card) {
  size_t n = 1;
  for (int c : card) n *= static_cast<size_t>(c);
  return n;
}

// Flat index of a full configuration within a factor, scope[0] most
// significant.
size_t flat_index(const Factor& f, const std::vector<int>& config) {
  size_t idx = 0;
  for (size_t i = 0; i < f.scope.size(); ++i)
    idx = idx * static_cast<size_t>(f.card[i]) + static_cast<size_t>(config[f.scope[i]]);
  return idx;
}

}  // namespace

Factor factor_multiply(const Factor& a, const Factor& b) {
  Factor out;
  std::map<int, int> cards;
  for (size_t i = 0; i < a.scope.size(); ++i) cards[a.scope[i]] = a.card[i];
  for (size_t i = 0; i < b.scope.size(); ++i) cards[b.scope[i]] = b.card[i];
  for (const auto& [v, c] : cards) {
    out.scope.push_back(v);
    out.card.push_back(c);
  }
  out.table.assign(table_size(out.card), 0.0);

  int maxVar = out.scope.empty() ? 0 : out.scope.back() + 1;
  std::vector<int> config(static_cast<size_t>(maxVar), 0);
  std::vector<int> pos(out.scope.size(), 0);
  for (size_t idx = 0; idx < out.table.size(); ++idx) {
    for (size_t i = 0; i < out.scope.size(); ++i) config[out.scope[i]] = pos[i];
    out.table[idx] = a.table[flat_index(a, config)] * b.table[flat_index(b, config)];
    for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
      if (++pos[i] < out.card[i]) break;
      pos[i] = 0;
    }
  }
  return out;
}

Factor factor_sum_out(const Factor& f, int var) {
  Factor out;
  int varPos = -1;
  for (size_t i = 0; i < f.scope.size(); ++i) {
    if (f.scope[i] == var) {
      varPos = static_cast<int>(i);
      continue;
    }
    out.scope.push_back(f.scope[i]);
    out.card.push_back(f.card[i]);
  }
  if (varPos < 0) return f;
  out.table.assign(table_size(out.card), 0.0);

  std::vector<int> pos(f.scope.size(), 0);
  for (size_t idx = 0; idx < f.table.size(); ++idx) {
    size_t oidx = 0;
    for (size_t i = 0; i < f.scope.size(); ++i)
      if (static_cast<int>(i) != varPos)
        oidx = oidx * static_cast<size_t>(f.card[i]) + static_cast<size_t>(pos[i]);
    out.table[oidx] += f.table[idx];
    for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
      if (++pos[i] < f.card[i]) break;
      pos[i] = 0;
    }
  }
  return out;
}

Factor factor_reduce(const Factor& f, int var, int state) {
  Factor out;
  int varPos = -1;
  for (size_t i = 0; i < f.scope.size(); ++i) {
    if (f.scope[i] == var) {
      varPos = static_cast<int>(i);
      continue;
    }
    out.scope.push_back(f.scope[i]);
    out.card.push_back(f.card[i]);
  }
  if (varPos < 0) return f;
  out.table.assign(table_size(out.card), 0.0);

  std::vector<int> pos(f.scope.size(), 0);
  for (size_t idx = 0; idx < f.table.size(); ++idx) {
    if (pos[varPos] == state) {
      size_t oidx = 0;
      for (size_t i = 0; i < f.scope.size(); ++i)
        if (static_cast<int>(i) != varPos)
          oidx = oidx * static_cast<size_t>(f.card[i]) + static_cast<size_t>(pos[i]);
      out.table[oidx] = f.table[idx];
    }
    for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
      if (++pos[i] < f.card[i]) break;
      pos[i] = 0;
    }
  }
  return out;
}

double Posterior::probability_of(std::string_view state) const {
  for (const auto& [s, p] : distribution)
    if (s == state) return p;
  throw MebnError("UnknownState",
                  "posterior for '" + atom + "' has no state '" + std::string(state) + "'");
}

namespace {

struct Net {
  const Ssbn* ssbn = nullptr;
  std::map<std::string, int> index;
  std::vector<int> card;

  explicit Net(const Ssbn& s) : ssbn(&s) {
    for (size_t i = 0; i < s.nodes.size(); ++i) {
      index[s.nodes[i].id] = static_cast<int>(i);
      card.push_back(static_cast<int>(s.nodes[i].states.size()));
    }
  }

  int require(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end())
      throw MebnError("NotFound", "network has no node '" + id + "'");
    return it->second;
  }
};

// Embedded evidence merged with caller-supplied evidence, as state indices.
// Contradictory assignments to one node have probability zero by definition.
std::map<int, int> merged_evidence(const Net& net, const EvidenceMap& extra) {
  std::map<int, int> out;
  auto add = [&](const std::string& id, const std::string& state) {
    int v = net.require(id);
    const GroundNode& n = net.ssbn->nodes[static_cast<size_t>(v)];
    int s = state_index(n.states, state, n.templateName);
    auto [it, inserted] = out.emplace(v, s);
    if (!inserted && it->second != s)
      throw MebnError("INFER-1", "contradictory evidence for '" + id + "'");
  };
  for (const auto& n : net.ssbn->nodes)
    if (n.evidenceState) add(n.id, *n.evidenceState);
  for (const auto& [id, state] : extra) add(id, state);
  return out;
}

Factor node_factor(const Net& net, const GroundNode& n) {
  Factor f;
  for (const auto& p : n.parents) {
    int idx = net.require(p);
    f.scope.push_back(idx);
    f.card.push_back(net.card[static_cast<size_t>(idx)]);
  }
  int self = net.require(n.id);
  f.scope.push_back(self);
  f.card.push_back(net.card[static_cast<size_t>(self)]);
  f.table = n.cpt;
  return f;
}

std::vector<std::string> greedy_order(const Net& net, const std::set<int>& keep,
                                      const std::set<int>& evidence) {
  // Moral graph restricted to non-evidence nodes: each node's family
  // (parents plus itself) forms a clique.
  std::map<int, std::set<int>> adj;
  for (const auto& n : net.ssbn->nodes) {
    std::vector<int> family;
    int self = net.index.at(n.id);
    if (evidence.count(self) == 0) family.push_back(self);
    for (const auto& p : n.parents) {
      int idx = net.index.at(p);
      if (evidence.count(idx) == 0) family.push_back(idx);
    }
    for (int a : family)
      for (int b : family)
        if (a != b) adj[a].insert(b);
    for (int a : family) adj[a];  // ensure isolated nodes appear
  }

  std::set<int> remaining;
  for (const auto& [v, _] : adj)
    if (keep.count(v) == 0) remaining.insert(v);
  // Degrees count only other nodes eligible for elimination.
  std::vector<std::string> order;
  while (!remaining.empty()) {
    int best = -1;
    size_t bestDeg = 0;
    for (int v : remaining) {
      size_t deg = 0;
      for (int w : adj[v])
        if (remaining.count(w) != 0) ++deg;
      if (best < 0 || deg < bestDeg ||
          (deg == bestDeg &&
           net.ssbn->nodes[static_cast<size_t>(v)].id <
               net.ssbn->nodes[static_cast<size_t>(best)].id)) {
        best = v;
        bestDeg = deg;
      }
    }
    order.push_back(net.ssbn->nodes[static_cast<size_t>(best)].id);
    for (int a : adj[best])
      for (int b : adj[best])
        if (a != b) adj[a].insert(b);
    for (int a : adj[best]) adj[a].erase(best);
    adj.erase(best);
    remaining.erase(best);
  }
  return order;
}

Posterior finish(const Net& net, int qi, Factor result) {
  // Anything still joined with the query integrates out.
  std::vector<int> leftovers;
  for (int v : result.scope)
    if (v != qi) leftovers.push_back(v);
  for (int v : leftovers) result = factor_sum_out(result, v);

  const GroundNode& qn = net.ssbn->nodes[static_cast<size_t>(qi)];
  size_t k = qn.states.size();
  std::vector<double> values(k, 0.0);
  if (result.scope.empty()) {
    // Query vanished entirely (possible only through caller-built factors).
    throw MebnError("INFER-1", "query '" + qn.id + "' was eliminated from every factor");
  }
  for (size_t s = 0; s < k; ++s) values[s] = result.table[s];

  double total = 0.0;
  for (double v : values) total += v;
  if (!(total >= kZeroMass))
    throw MebnError("INFER-1", "evidence has zero probability; cannot normalize posterior for '" +
                                   qn.id + "'");
  Posterior out;
  out.atom = qn.id;
  for (size_t s = 0; s < k; ++s) out.distribution.emplace_back(qn.states[s], values[s] / total);
  return out;
}

}  // namespace

std::vector<std::string> elimination_order(const Ssbn& s, const std::set<std::string>& keep) {
  Net net(s);
  std::set<int> keepIdx, evidenceIdx;
  for (const auto& id : keep) keepIdx.insert(net.require(id));
  for (const auto& n : s.nodes)
    if (n.evidenceState) evidenceIdx.insert(net.index.at(n.id));
  return greedy_order(net, keepIdx, evidenceIdx);
}

namespace {

// The posterior depends only on the ancestral subgraph of query + evidence;
// every other node's factor integrates to one and would only add rounding
// noise (and work).
std::set<int> ancestral_set(const Net& net, int qi, const std::map<int, int>& evidence) {
  std::set<int> relevant;
  std::vector<int> frontier{qi};
  for (const auto& [v, _] : evidence) frontier.push_back(v);
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    if (!relevant.insert(v).second) continue;
    for (const auto& p : net.ssbn->nodes[static_cast<size_t>(v)].parents)
      frontier.push_back(net.index.at(p));
  }
  return relevant;
}

}  // namespace

Posterior eliminate_marginal_with_order(const Ssbn& s, const std::string& query,
                                        const EvidenceMap& extraEvidence,
                                        const std::vector<std::string>& order) {
  Net net(s);
  int qi = net.require(query);
  std::map<int, int> evidence = merged_evidence(net, extraEvidence);

  std::set<int> relevant = ancestral_set(net, qi, evidence);
  std::vector<Factor> factors;
  for (const auto& n : s.nodes)
    if (relevant.count(net.index.at(n.id)) != 0) factors.push_back(node_factor(net, n));
  for (auto& f : factors)
    for (const auto& [v, state] : evidence)
      if (v != qi) f = factor_reduce(f, v, state);
  if (auto it = evidence.find(qi); it != evidence.end()) {
    Factor indicator;
    indicator.scope = {qi};
    indicator.card = {net.card[static_cast<size_t>(qi)]};
    indicator.table.assign(static_cast<size_t>(indicator.card[0]), 0.0);
    indicator.table[static_cast<size_t>(it->second)] = 1.0;
    factors.push_back(std::move(indicator));
  }

  for (const auto& id : order) {
    int v = net.require(id);
    if (v == qi || evidence.count(v) != 0) continue;
    std::vector<Factor> bucket;
    std::vector<Factor> rest;
    for (auto& f : factors) {
      bool inScope = std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end();
      (inScope ? bucket : rest).push_back(std::move(f));
    }
    factors = std::move(rest);
    if (bucket.empty()) continue;
    Factor product = std::move(bucket[0]);
    for (size_t i = 1; i < bucket.size(); ++i) product = factor_multiply(product, bucket[i]);
    factors.push_back(factor_sum_out(product, v));
  }

  Factor result;
  result.table = {1.0};
  for (const auto& f : factors) result = factor_multiply(result, f);
  return finish(net, qi, std::move(result));
}

Posterior eliminate_marginal(const Ssbn& s, const std::string& query,
                             const EvidenceMap& extraEvidence) {
  Net net(s);
  int qi = net.require(query);
  std::map<int, int> evidence = merged_evidence(net, extraEvidence);
  std::set<int> evidenceIdx;
  for (const auto& [v, _] : evidence) evidenceIdx.insert(v);
  std::vector<std::string> order = greedy_order(net, {qi}, evidenceIdx);
  return eliminate_marginal_with_order(s, query, extraEvidence, order);
}

Posterior enumerate_marginal(const Ssbn& s, const std::string& query,
                             const EvidenceMap& extraEvidence) {
  Net net(s);
  int qi = net.require(query);
  std::map<int, int> evidence = merged_evidence(net, extraEvidence);

  size_t joint = 1;
  for (int c : net.card) {
    joint *= static_cast<size_t>(c);
    if (joint > kOracleLimit)
      throw MebnError("ORACLE-1", "joint state space exceeds " +
                                      std::to_string(kOracleLimit) + " configurations");
  }

  std::vector<int> config(s.nodes.size(), 0);
  std::vector<int> freeVars;
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    auto it = evidence.find(static_cast<int>(i));
    if (it != evidence.end())
      config[i] = it->second;
    else
      freeVars.push_back(static_cast<int>(i));
  }

  const GroundNode& qn = s.nodes[static_cast<size_t>(qi)];
  std::vector<double> acc(qn.states.size(), 0.0);
  while (true) {
    double p = 1.0;
    for (size_t i = 0; i < s.nodes.size(); ++i) {
      const GroundNode& n = s.nodes[i];
      size_t row = 0;
      for (const auto& parent : n.parents) {
        int pIdx = net.index.at(parent);
        row = row * static_cast<size_t>(net.card[static_cast<size_t>(pIdx)]) +
              static_cast<size_t>(config[static_cast<size_t>(pIdx)]);
      }
      p *= n.cpt[row * n.states.size() + static_cast<size_t>(config[i])];
    }
    acc[static_cast<size_t>(config[static_cast<size_t>(qi)])] += p;

    int i = static_cast<int>(freeVars.size()) - 1;
    for (; i >= 0; --i) {
      int v = freeVars[static_cast<size_t>(i)];
      if (++config[static_cast<size_t>(v)] < net.card[static_cast<size_t>(v)]) break;
      config[static_cast<size_t>(v)] = 0;
    }
    if (i < 0) break;
  }

  double total = 0.0;
  for (double v : acc) total += v;
  if (!(total >= kZeroMass))
    throw MebnError("INFER-1", "evidence has zero probability; cannot normalize posterior for '" +
                                   qn.id + "'");
  Posterior out;
  out.atom = qn.id;
  for (size_t i = 0; i < acc.size(); ++i) out.distribution.emplace_back(qn.states[i], acc[i] / total);
  return out;
}

}  // namespace mebn
