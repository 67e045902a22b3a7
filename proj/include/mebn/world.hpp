// World models: entity instances, context-relation facts, evidence, queries.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mebn/model.hpp"

namespace mebn {

struct GroundAtom {
  std::string templateName;
  std::vector<std::string> args;

  // Canonical form, e.g. "Speed(tr1,t1)". Used as node id everywhere.
  std::string id() const;
};

bool operator==(const GroundAtom& a, const GroundAtom& b);
bool operator<(const GroundAtom& a, const GroundAtom& b);

struct WorldModel {
  std::string name;
  std::vector<EntityInstance> instances;            // declaration order
  std::vector<GroundAtom> facts;                    // ground context relations
  std::vector<std::pair<GroundAtom, std::string>> evidence;  // atom -> state
  std::vector<GroundAtom> queries;

  const EntityInstance* find_instance(std::string_view id) const;
  std::vector<std::string> instances_of_type(std::string_view type) const;
};

bool operator==(const WorldModel& a, const WorldModel& b);

}  // namespace mebn
