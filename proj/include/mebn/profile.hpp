// Conformance profiles: permitted RV kinds, kind-level edge whitelist, and
// structural context requirements. Profiles are data; psaw and msaw ship
// built in and custom profiles load from the same textual format.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mebn {

// A structural requirement checked per MFrag or per resident:
//   CONF-OBS : an MFrag housing a resident of an observing kind that binds
//              both a sensor-typed and a target-typed variable needs a
//              predicate context on `contextTemplate`.
//   CONF-ACT : a resident of a reported kind fed by a parent of one of
//              `parentKinds` needs an equality context on `contextTemplate`.
//   CONF-PRED: a same-template input (temporal recursion) needs a
//              `contextTemplate` constraint relating its ordered arguments.
struct RequiredContextRule {
  std::string id;
  std::vector<std::string> residentKinds;
  std::vector<std::string> parentKinds;
  std::string contextTemplate;
  bool equality = false;
};

struct ConformanceProfile {
  std::string name;
  std::vector<std::string> kinds;
  std::vector<std::pair<std::string, std::string>> allowedEdges;
  bool allowSameKindTemporalRecursion = true;
  std::vector<RequiredContextRule> requiredContexts;

  bool has_kind(std::string_view k) const;
  bool allows_edge(std::string_view parentKind, std::string_view childKind) const;
};

// "psaw" or "msaw". Throws MebnError("NotFound") for anything else.
const ConformanceProfile& builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

}  // namespace mebn
