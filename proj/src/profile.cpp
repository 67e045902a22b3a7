#include "mebn/profile.hpp"

#include <map>

#include "mebn/diagnostics.hpp"
#include "mebn/parser.hpp"

namespace mebn {

bool ConformanceProfile::has_kind(std::string_view k) const {
  for (const auto& kind : kinds)
    if (kind == k) return true;
  return false;
}

bool ConformanceProfile::allows_edge(std::string_view parentKind,
                                     std::string_view childKind) const {
  for (const auto& [from, to] : allowedEdges)
    if (from == parentKind && to == childKind) return true;
  return false;
}

namespace {

// Built-ins are expressed in the same textual format custom profiles use,
// so loading a profile file and using a built-in exercise identical code.
constexpr std::string_view kPsawText = R"(
profile psaw {
  kinds OC, RT, TR, SIT, CTX;
  edge OC -> OC;
  edge OC -> RT;
  edge TR -> RT;
  edge TR -> TR;
  edge SIT -> TR;
  edge SIT -> SIT;
  edge TR -> SIT;
  recursion allow;
  require observer ObserverOf for OC;
  require actual ActualObject for RT from TR;
  require predecessor Predecessor;
}
)";

constexpr std::string_view kMsawText = R"(
profile msaw {
  kinds OC, RSYS, RIT, SYS, IT, SIT, CTX;
  edge OC -> OC;
  edge SYS -> RSYS;
  edge OC -> RSYS;
  edge IT -> RIT;
  edge OC -> RIT;
  edge IT -> SYS;
  edge SYS -> IT;
  edge IT -> IT;
  edge SYS -> SIT;
  edge IT -> SIT;
  recursion allow;
  require observer ObserverOf for OC;
  require actual ActualObject for RSYS, RIT from SYS, IT;
  require predecessor Predecessor;
}
)";

ConformanceProfile load_builtin(std::string_view text, const char* name) {
  ProfileParseResult r = parse_profile(text, std::string("<builtin:") + name + ">");
  if (!r.ok()) throw MebnError("Internal", std::string("built-in profile '") + name + "' invalid");
  return *r.profile;
}

}  // namespace

const ConformanceProfile& builtin_profile(std::string_view name) {
  static const std::map<std::string, ConformanceProfile, std::less<>> profiles = {
      {"psaw", load_builtin(kPsawText, "psaw")},
      {"msaw", load_builtin(kMsawText, "msaw")},
  };
  auto it = profiles.find(name);
  if (it == profiles.end())
    throw MebnError("NotFound", "no built-in profile named '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> builtin_profile_names() { return {"psaw", "msaw"}; }

}  // namespace mebn
