// Exact inference on ground networks: variable elimination, plus a
// full-joint enumeration engine used as an independent cross-check.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mebn/grounding.hpp"

namespace mebn {

// Discrete factor over ground nodes, identified by their index in the
// network's node list. Row-major with scope[0] most significant.
struct Factor {
  std::vector<int> scope;
  std::vector<int> card;
  std::vector<double> table;
};

Factor factor_multiply(const Factor& a, const Factor& b);
Factor factor_sum_out(const Factor& f, int var);
Factor factor_reduce(const Factor& f, int var, int state);

struct Posterior {
  std::string atom;
  std::vector<std::pair<std::string, double>> distribution;  // declared order

  double probability_of(std::string_view state) const;
};

using EvidenceMap = std::map<std::string, std::string>;  // node id -> state

// Min-degree greedy order over the moralized graph restricted to nodes that
// are neither kept nor evidence; ties break lexicographically by id.
std::vector<std::string> elimination_order(const Ssbn& s, const std::set<std::string>& keep);

// Posterior over `query` given the union of `extraEvidence` and the
// network's embedded evidence. Throws MebnError("INFER-1") when the
// evidence has (numerically) zero probability.
Posterior eliminate_marginal(const Ssbn& s, const std::string& query,
                             const EvidenceMap& extraEvidence = {});

// Same computation along a caller-chosen elimination order.
Posterior eliminate_marginal_with_order(const Ssbn& s, const std::string& query,
                                        const EvidenceMap& extraEvidence,
                                        const std::vector<std::string>& order);

// Linear-scan enumeration over the full joint. Guarded: throws
// MebnError("ORACLE-1") if the joint state space exceeds 2^22 configurations.
Posterior enumerate_marginal(const Ssbn& s, const std::string& query,
                             const EvidenceMap& extraEvidence = {});

}  // namespace mebn
