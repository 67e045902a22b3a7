// Parsers for the three textual formats: theories (.pmt), worlds (.pw), and
// conformance profiles. Hand-written recursive descent with source spans.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mebn/diagnostics.hpp"
#include "mebn/model.hpp"
#include "mebn/profile.hpp"
#include "mebn/world.hpp"

namespace mebn {

struct TheoryParseResult {
  std::optional<MTheory> theory;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return theory.has_value(); }
};

struct WorldParseResult {
  std::optional<WorldModel> world;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return world.has_value(); }
};

struct ProfileParseResult {
  std::optional<ConformanceProfile> profile;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return profile.has_value(); }
};

TheoryParseResult parse_theory(std::string_view text, std::string_view filename = "<input>");

// Worlds resolve names against an already parsed theory.
WorldParseResult parse_world(std::string_view text, const MTheory& theory,
                             std::string_view filename = "<input>");

ProfileParseResult parse_profile(std::string_view text, std::string_view filename = "<input>");

}  // namespace mebn
