// Command-line front end: validate theories, ground worlds, answer queries.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mebn/grounding.hpp"
#include "mebn/inference.hpp"
#include "mebn/parser.hpp"
#include "mebn/validator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostics(const std::vector<mebn::Diagnostic>& diags) {
  for (const auto& d : diags) std::printf("%s\n", mebn::format_diagnostic(d).c_str());
}

void print_diagnostics_json(const std::vector<mebn::Diagnostic>& diags) {
  for (const auto& d : diags) {
    nlohmann::ordered_json j;
    j["severity"] = d.severity == mebn::Severity::Error ? "error" : "warning";
    j["code"] = d.code;
    j["message"] = d.message;
    j["file"] = d.span.file;
    j["line"] = d.span.line;
    j["column"] = d.span.column;
    std::printf("%s\n", j.dump().c_str());
  }
}

struct Loaded {
  mebn::MTheory theory;
  mebn::ConformanceProfile profile;
};

// Exits via return code; on success fills `out`.
int load_theory_and_profile(const std::string& theoryPath, const std::string& profileArg,
                            bool json, Loaded& out) {
  std::optional<std::string> text = read_file(theoryPath);
  if (!text) {
    std::fprintf(stderr, "error: cannot read file '%s'\n", theoryPath.c_str());
    return kExitParse;
  }
  mebn::TheoryParseResult parsed = mebn::parse_theory(*text, theoryPath);
  if (json)
    print_diagnostics_json(parsed.diagnostics);
  else
    print_diagnostics(parsed.diagnostics);
  if (!parsed.ok()) return kExitParse;
  out.theory = std::move(*parsed.theory);

  bool builtin = false;
  for (const auto& name : mebn::builtin_profile_names())
    if (name == profileArg) builtin = true;
  if (builtin) {
    out.profile = mebn::builtin_profile(profileArg);
    return kExitOk;
  }
  std::optional<std::string> profText = read_file(profileArg);
  if (!profText) {
    std::fprintf(stderr, "error: unknown profile '%s' (not built in, not a readable file)\n",
                 profileArg.c_str());
    return kExitParse;
  }
  mebn::ProfileParseResult prof = mebn::parse_profile(*profText, profileArg);
  if (json)
    print_diagnostics_json(prof.diagnostics);
  else
    print_diagnostics(prof.diagnostics);
  if (!prof.ok()) return kExitParse;
  out.profile = std::move(*prof.profile);
  return kExitOk;
}

int run_validate(const std::string& theoryPath, const std::string& profileArg, bool strict,
                 bool json) {
  Loaded loaded;
  if (int rc = load_theory_and_profile(theoryPath, profileArg, json, loaded); rc != kExitOk)
    return rc;
  mebn::ValidationReport report = mebn::validate_all(loaded.theory, loaded.profile, strict);
  if (json) {
    print_diagnostics_json(report.diagnostics);
  } else {
    print_diagnostics(report.diagnostics);
    int errors = 0, warnings = 0;
    for (const auto& d : report.diagnostics)
      (d.severity == mebn::Severity::Error ? errors : warnings) += 1;
    if (report.passed)
      std::printf("validation passed (%d warning%s)\n", warnings, warnings == 1 ? "" : "s");
    else
      std::printf("validation failed (%d error%s, %d warning%s)\n", errors,
                  errors == 1 ? "" : "s", warnings, warnings == 1 ? "" : "s");
  }
  return report.passed ? kExitOk : kExitValidation;
}

// Shared by ground and query: theory must validate, world must parse.
int prepare(const std::string& theoryPath, const std::string& worldPath,
            const std::string& profileArg, bool json, Loaded& loaded, mebn::WorldModel& world) {
  if (int rc = load_theory_and_profile(theoryPath, profileArg, json, loaded); rc != kExitOk)
    return rc;
  mebn::ValidationReport report = mebn::validate_all(loaded.theory, loaded.profile, false);
  if (json)
    print_diagnostics_json(report.diagnostics);
  else
    print_diagnostics(report.diagnostics);
  if (!report.passed) return kExitValidation;

  std::optional<std::string> text = read_file(worldPath);
  if (!text) {
    std::fprintf(stderr, "error: cannot read file '%s'\n", worldPath.c_str());
    return kExitParse;
  }
  mebn::WorldParseResult parsed = mebn::parse_world(*text, loaded.theory, worldPath);
  if (json)
    print_diagnostics_json(parsed.diagnostics);
  else
    print_diagnostics(parsed.diagnostics);
  if (!parsed.ok()) return kExitParse;
  world = std::move(*parsed.world);
  return kExitOk;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int run_ground(const std::string& theoryPath, const std::string& worldPath,
               const std::string& profileArg, const std::string& outPath,
               const std::string& dotPath, int maxDepth) {
  Loaded loaded;
  mebn::WorldModel world;
  if (int rc = prepare(theoryPath, worldPath, profileArg, false, loaded, world); rc != kExitOk)
    return rc;
  try {
    mebn::GroundingOptions opt;
    opt.maxDepth = maxDepth;
    mebn::Ssbn ssbn = mebn::build_ssbn(loaded.theory, world, opt);
    size_t edges = 0;
    for (const auto& n : ssbn.nodes) edges += n.parents.size();
    if (!outPath.empty() && !write_file(outPath, mebn::export_json(ssbn))) {
      std::fprintf(stderr, "error: cannot write file '%s'\n", outPath.c_str());
      return kExitRuntime;
    }
    if (!dotPath.empty() && !write_file(dotPath, mebn::export_dot(ssbn))) {
      std::fprintf(stderr, "error: cannot write file '%s'\n", dotPath.c_str());
      return kExitRuntime;
    }
    std::printf("nodes: %zu\nedges: %zu\n", ssbn.nodes.size(), edges);
    return kExitOk;
  } catch (const mebn::MebnError& e) {
    std::fprintf(stderr, "error %s\n", e.what());
    return kExitRuntime;
  }
}

// "Name(a,b)" -> ground atom; false on malformed syntax.
bool parse_target(const std::string& text, mebn::GroundAtom& out) {
  size_t open = text.find('(');
  if (open == 0 || open == std::string::npos || text.back() != ')') return false;
  out.templateName = text.substr(0, open);
  out.args.clear();
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  size_t start = 0;
  while (true) {
    size_t comma = inner.find(',', start);
    std::string arg = inner.substr(start, comma == std::string::npos ? comma : comma - start);
    size_t a = arg.find_first_not_of(" \t");
    size_t b = arg.find_last_not_of(" \t");
    if (a == std::string::npos) return false;
    out.args.push_back(arg.substr(a, b - a + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return true;
}

// Targets go through the same checks a world `query` declaration gets.
bool check_target(const mebn::MTheory& t, const mebn::WorldModel& w, const mebn::GroundAtom& atom,
                  std::string& problem) {
  const mebn::MFrag* home = nullptr;
  const mebn::ResidentNode* resident = nullptr;
  for (const auto& f : t.mfrags)
    if (const auto* r = f.find_resident(atom.templateName)) {
      home = &f;
      resident = r;
    }
  if (resident == nullptr) {
    problem = "unknown template '" + atom.templateName + "'";
    return false;
  }
  if (resident->deterministic) {
    problem = "'" + atom.templateName + "' is a deterministic context relation";
    return false;
  }
  if (atom.args.size() != resident->ovArgs.size()) {
    problem = "'" + atom.templateName + "' takes " + std::to_string(resident->ovArgs.size()) +
              " arguments";
    return false;
  }
  for (size_t i = 0; i < atom.args.size(); ++i) {
    const mebn::EntityInstance* inst = w.find_instance(atom.args[i]);
    if (inst == nullptr) {
      problem = "unknown instance '" + atom.args[i] + "'";
      return false;
    }
    const mebn::OrdinaryVariable* ov = home->find_ov(resident->ovArgs[i]);
    if (ov != nullptr && inst->type != ov->type) {
      problem = "argument " + std::to_string(i + 1) + " of '" + atom.templateName + "' must be " +
                ov->type;
      return false;
    }
  }
  return true;
}

int run_query(const std::string& theoryPath, const std::string& worldPath,
              const std::string& profileArg, const std::vector<std::string>& targets,
              const std::string& engine, bool json, int maxDepth) {
  Loaded loaded;
  mebn::WorldModel world;
  if (int rc = prepare(theoryPath, worldPath, profileArg, json, loaded, world); rc != kExitOk)
    return rc;

  if (!targets.empty()) {
    world.queries.clear();
    for (const auto& text : targets) {
      mebn::GroundAtom atom;
      if (!parse_target(text, atom)) {
        std::fprintf(stderr, "error: malformed target '%s'\n", text.c_str());
        return kExitParse;
      }
      std::string problem;
      if (!check_target(loaded.theory, world, atom, problem)) {
        std::fprintf(stderr, "error: target '%s': %s\n", text.c_str(), problem.c_str());
        return kExitParse;
      }
      world.queries.push_back(std::move(atom));
    }
  }
  if (world.queries.empty()) {
    std::fprintf(stderr, "error: nothing to query (no world queries, no --target)\n");
    return kExitParse;
  }

  try {
    mebn::GroundingOptions opt;
    opt.maxDepth = maxDepth;
    mebn::Ssbn ssbn = mebn::build_ssbn(loaded.theory, world, opt);
    nlohmann::ordered_json jout = nlohmann::ordered_json::array();
    std::string hout;
    for (const auto& q : ssbn.queries) {
      mebn::Posterior p = engine == "enum" ? mebn::enumerate_marginal(ssbn, q)
                                           : mebn::eliminate_marginal(ssbn, q);
      if (json) {
        nlohmann::ordered_json jp;
        jp["atom"] = p.atom;
        nlohmann::ordered_json dist;
        for (const auto& [state, prob] : p.distribution) dist[state] = prob;
        jp["distribution"] = std::move(dist);
        jout.push_back(std::move(jp));
      } else {
        hout += p.atom + ":";
        for (const auto& [state, prob] : p.distribution) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), " %s=%.9f", state.c_str(), prob);
          hout += buf;
        }
        hout += '\n';
      }
    }
    if (json)
      std::printf("%s\n", jout.dump(2).c_str());
    else
      std::fputs(hout.c_str(), stdout);
    return kExitOk;
  } catch (const mebn::MebnError& e) {
    std::fprintf(stderr, "error %s\n", e.what());
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-entity Bayesian network engine for predictive situation awareness"};
  app.require_subcommand(1);

  std::string theoryPath, worldPath, profileArg = "psaw";
  std::string outPath, dotPath, engine = "ve";
  std::vector<std::string> targets;
  bool strict = false, json = false;
  int maxDepth = 10000;

  CLI::App* validate = app.add_subcommand("validate", "Check a theory against a profile");
  validate->add_option("theory", theoryPath, "Theory file")->required();
  validate->add_option("--profile", profileArg, "Built-in profile name or profile file");
  validate->add_flag("--strict", strict, "Treat warnings as errors");
  validate->add_flag("--json", json, "Machine-readable diagnostics (JSON lines)");

  CLI::App* ground = app.add_subcommand("ground", "Instantiate the network for a world");
  ground->add_option("theory", theoryPath, "Theory file")->required();
  ground->add_option("world", worldPath, "World file")->required();
  ground->add_option("--profile", profileArg, "Built-in profile name or profile file");
  ground->add_option("--out", outPath, "Write the network as JSON");
  ground->add_option("--dot", dotPath, "Write the network as Graphviz DOT");
  ground->add_option("--max-depth", maxDepth, "Grounding depth limit");

  CLI::App* query = app.add_subcommand("query", "Compute posterior distributions");
  query->add_option("theory", theoryPath, "Theory file")->required();
  query->add_option("world", worldPath, "World file")->required();
  query->add_option("--profile", profileArg, "Built-in profile name or profile file");
  query->add_option("--target", targets, "Query atom, e.g. 'Speed(tr1,t1)' (repeatable)");
  query->add_option("--engine", engine, "Inference engine")
      ->check(CLI::IsMember({"ve", "enum"}));
  query->add_flag("--json", json, "Machine-readable output");
  query->add_option("--max-depth", maxDepth, "Grounding depth limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  if (validate->parsed()) return run_validate(theoryPath, profileArg, strict, json);
  if (ground->parsed())
    return run_ground(theoryPath, worldPath, profileArg, outPath, dotPath, maxDepth);
  return run_query(theoryPath, worldPath, profileArg, targets, engine, json, maxDepth);
}
