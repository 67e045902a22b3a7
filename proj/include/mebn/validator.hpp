// Theory-level consistency checks: unique homes, slice-level acyclicity,
// well-formed temporal recursion, and profile conformance.

#pragma once

#include <vector>

#include "mebn/diagnostics.hpp"
#include "mebn/model.hpp"
#include "mebn/profile.hpp"

namespace mebn {

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  bool passed = false;
};

// UH-1: template resident in more than one MFrag.
// UH-2: referenced template (input or context) has no home.
// UH-3: reference incompatible with the template's signature, or a
//       deterministic context template used as a stochastic input.
std::vector<Diagnostic> check_unique_home(const MTheory& t);

// CYC-1: dependency cycle with no strictly-backward-looking edge.
std::vector<Diagnostic> check_template_acyclic(const MTheory& t);

// REC-1: same-template input whose ordered argument is not constrained by a
//        Predecessor context.
// REC-2: recursive definition without a fallback distribution.
std::vector<Diagnostic> check_recursion_wellformed(const MTheory& t);

// CONF-KIND: resident kind absent from the profile.
// CONF-EDGE: dependency whose (parent kind, child kind) pair the profile
//            does not allow.
// CONF-TIME: dependency on a strictly later time slice.
// CONF-OBS / CONF-ACT / CONF-PRED: missing structural contexts (warnings).
std::vector<Diagnostic> check_conformance(const MTheory& t, const ConformanceProfile& p);

// Runs the checks in order (UH, CYC, REC, CONF). Reference errors stop the
// pipeline; structural errors skip conformance. `strict` promotes warnings
// to errors. `passed` == no error-severity diagnostics.
ValidationReport validate_all(const MTheory& t, const ConformanceProfile& p, bool strict = false);

}  // namespace mebn
