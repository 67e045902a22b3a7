// Canonical text form for theories and worlds. parse(serialize(x)) == x.

#pragma once

#include <string>

#include "mebn/model.hpp"
#include "mebn/world.hpp"

namespace mebn {

std::string serialize_theory(const MTheory& t);
std::string serialize_world(const WorldModel& w);

}  // namespace mebn
