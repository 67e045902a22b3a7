#include "mebn/world.hpp"

namespace mebn {

std::string GroundAtom::id() const {
  std::string out = templateName;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i != 0) out += ',';
    out += args[i];
  }
  out += ')';
  return out;
}

bool operator==(const GroundAtom& a, const GroundAtom& b) {
  return a.templateName == b.templateName && a.args == b.args;
}

bool operator<(const GroundAtom& a, const GroundAtom& b) {
  if (a.templateName != b.templateName) return a.templateName < b.templateName;
  return a.args < b.args;
}

const EntityInstance* WorldModel::find_instance(std::string_view id) const {
  for (const auto& inst : instances)
    if (inst.id == id) return &inst;
  return nullptr;
}

std::vector<std::string> WorldModel::instances_of_type(std::string_view type) const {
  std::vector<std::string> out;
  for (const auto& inst : instances)
    if (inst.type == type) out.push_back(inst.id);
  return out;
}

bool operator==(const WorldModel& a, const WorldModel& b) {
  return a.name == b.name && a.instances == b.instances && a.facts == b.facts &&
         a.evidence == b.evidence && a.queries == b.queries;
}

}  // namespace mebn
