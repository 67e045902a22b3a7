// Source spans, diagnostics, and the engine's error exception.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mebn {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
};

inline bool operator==(const SourceSpan& a, const SourceSpan& b) {
  return a.file == b.file && a.line == b.line && a.column == b.column;
}

enum class Severity { Error, Warning };

// Diagnostic codes are a stable contract (PARSE-*, WORLD-*, UH-*, CYC-*,
// REC-*, CONF-*). See README for the full table.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceSpan span;
};

bool has_errors(const std::vector<Diagnostic>& diags);
std::string format_diagnostic(const Diagnostic& d);

// Thrown by programmatic-API operations with a hard error (NotFound,
// MultipleHomes, UnknownState, GROUND-*, INFER-1, ORACLE-1).
class MebnError : public std::runtime_error {
 public:
  MebnError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace mebn
