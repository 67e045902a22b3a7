// Shared test scaffolding: fixture loading and tiny assertion helpers.

#pragma once

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "mebn/parser.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(MEBN_FIXTURES_DIR) + "/" + name;
}

inline mebn::MTheory load_theory(const std::string& fixtureName) {
  auto r = mebn::parse_theory(read_file(fixture_path(fixtureName)), fixtureName);
  for (const auto& d : r.diagnostics) INFO(mebn::format_diagnostic(d));
  REQUIRE(r.ok());
  return *r.theory;
}

inline mebn::WorldModel load_world(const std::string& fixtureName, const mebn::MTheory& t) {
  auto r = mebn::parse_world(read_file(fixture_path(fixtureName)), t, fixtureName);
  for (const auto& d : r.diagnostics) INFO(mebn::format_diagnostic(d));
  REQUIRE(r.ok());
  return *r.world;
}

// First diagnostic code of the given severity, or "" if none.
inline std::string first_code(const std::vector<mebn::Diagnostic>& diags,
                              mebn::Severity sev = mebn::Severity::Error) {
  for (const auto& d : diags)
    if (d.severity == sev) return d.code;
  return "";
}

inline int count_code(const std::vector<mebn::Diagnostic>& diags, const std::string& code) {
  int n = 0;
  for (const auto& d : diags)
    if (d.code == code) ++n;
  return n;
}

}  // namespace testutil
