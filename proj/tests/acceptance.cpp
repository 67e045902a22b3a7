// End-to-end acceptance battery. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. Run via ctest or
// directly from the build directory.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mebn/inference.hpp"
#include "mebn/parser.hpp"
#include "mebn/profile.hpp"
#include "mebn/serializer.hpp"
#include "mebn/validator.hpp"
#include "random_net.hpp"

using namespace mebn;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
  if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) {
  return std::string(MEBN_FIXTURES_DIR) + "/" + name;
}

MTheory theory_from(const std::string& text, const std::string& what) {
  auto r = parse_theory(text, what);
  if (!r.ok()) {
    std::string codes;
    for (const auto& d : r.diagnostics) codes += " " + d.code;
    throw std::runtime_error(what + " failed to parse:" + codes);
  }
  return *r.theory;
}

WorldModel world_from(const std::string& text, const MTheory& t, const std::string& what) {
  auto r = parse_world(text, t, what);
  if (!r.ok()) {
    std::string codes;
    for (const auto& d : r.diagnostics) codes += " " + d.code;
    throw std::runtime_error(what + " failed to parse:" + codes);
  }
  return *r.world;
}

MTheory load_theory(const std::string& name) { return theory_from(read_file(fixture(name)), name); }

WorldModel load_world(const std::string& name, const MTheory& t) {
  return world_from(read_file(fixture(name)), t, name);
}

std::string cli_output(const std::string& args, int& status) {
  std::string cmd = std::string(MEBN_CLI_PATH) + " " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

std::string danger_world_text(int timestamps, const std::string& queryLine) {
  std::string src = "world W {\n  time";
  for (int i = 1; i <= timestamps; ++i) src += (i == 1 ? " t" : ", t") + std::to_string(i);
  src += ";\n  Target tr1;\n  CriticalInfrastructure ci1;\n"
         "  fact Approaching(tr1, ci1);\n  " + queryLine + "\n}\n";
  return src;
}

// --------------------------------------------------------------- criterion 1

void canonical_grounding() {
  std::string detail;
  bool ok = true;
  try {
    MTheory t = load_theory("danger.pmt");
    Ssbn s = build_ssbn(t, load_world("danger-world.pw", t));

    std::set<std::string> ids;
    for (const auto& n : s.nodes) ids.insert(n.id);
    std::set<std::string> expected{"Speed(tr1,t1)", "Speed(tr1,t2)", "Speed(tr1,t3)",
                                   "DangerLevel(ci1,t3)"};
    if (ids != expected) {
      ok = false;
      detail = "node set mismatch:";
      for (const auto& id : ids) detail += " " + id;
    }
    auto has_sole_parent = [&](const char* child, const char* parent) {
      const GroundNode* n = s.find(child);
      return n != nullptr && n->parents == std::vector<std::string>{parent};
    };
    if (ok && (!s.find("Speed(tr1,t1)")->parents.empty() ||
               !has_sole_parent("Speed(tr1,t2)", "Speed(tr1,t1)") ||
               !has_sole_parent("Speed(tr1,t3)", "Speed(tr1,t2)") ||
               !has_sole_parent("DangerLevel(ci1,t3)", "Speed(tr1,t3)"))) {
      ok = false;
      detail = "edge chain mismatch";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("canonical grounding", ok, detail);
}

// --------------------------------------------------------------- criterion 2

void engine_agreement() {
  std::string detail;
  bool ok = true;
  double worst = 0.0;
  try {
    for (const char* name : {"danger", "msaw", "prognos-subset"}) {
      MTheory t = load_theory(std::string(name) + ".pmt");
      Ssbn s = build_ssbn(t, load_world(std::string(name) + "-world.pw", t));
      for (const auto& q : s.queries) {
        Posterior ve = eliminate_marginal(s, q);
        Posterior en = enumerate_marginal(s, q);
        for (size_t i = 0; i < ve.distribution.size(); ++i)
          worst = std::max(worst,
                           std::abs(ve.distribution[i].second - en.distribution[i].second));
      }
    }

    std::mt19937 rng(424242);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      Ssbn s = testutil::random_ssbn(rng);
      std::uniform_int_distribution<size_t> pick(0, s.nodes.size() - 1);
      const std::string query = s.nodes[pick(rng)].id;
      Posterior ve = eliminate_marginal(s, query);
      Posterior en = enumerate_marginal(s, query);
      for (size_t i = 0; i < ve.distribution.size(); ++i)
        worst = std::max(worst,
                         std::abs(ve.distribution[i].second - en.distribution[i].second));
    }
    if (worst >= 1e-9) {
      ok = false;
      detail = "max engine divergence " + std::to_string(worst);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("engine agreement", ok, detail);
}

// --------------------------------------------------------------- criterion 3

struct Mutation {
  const char* rule;
  const char* fixtureName;
  const char* profile;
  std::string from;  // empty: `to` is appended before the final two braces
  std::string to;
};

bool apply_mutation(const Mutation& m, std::string& text, std::string& detail) {
  if (m.from.empty()) {
    auto pos = text.rfind("}\n}");
    if (pos == std::string::npos) {
      detail = "no insertion point";
      return false;
    }
    text.insert(pos, m.to);
    return true;
  }
  auto pos = text.find(m.from);
  if (pos == std::string::npos) {
    detail = std::string("pattern not found: ") + m.from;
    return false;
  }
  text.replace(pos, m.from.size(), m.to);
  return true;
}

void mutation_battery() {
  std::string detail;
  bool ok = true;

  // The unmutated fixtures must be strictly clean first.
  try {
    for (auto [name, prof] : {std::pair{"danger.pmt", "psaw"},
                              std::pair{"prognos-subset.pmt", "psaw"},
                              std::pair{"msaw.pmt", "msaw"}}) {
      auto report_ = validate_all(load_theory(name), builtin_profile(prof), true);
      if (!report_.passed) {
        ok = false;
        detail = std::string(name) + " is not strictly clean";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }

  // Each single edit must trip exactly its own rule.
  const std::vector<Mutation> mutations = {
      // A second home for Speed inside the danger Context MFrag.
      {"UH-1", "danger.pmt", "psaw",
       "    resident Approaching(tr, ci): boolean kind CTX deterministic;\n",
       "    resident Approaching(tr, ci): boolean kind CTX deterministic;\n"
       "    resident Speed(tr, t): {Fast, Slow} kind TR { default -> (0.2, 0.8); }\n"},
      // The first transition rule now reads the same slice it defines.
      {"CYC-1", "danger.pmt", "psaw",
       "if any Speed(tr, pre_t) == Fast", "if any Speed(tr, t) == Fast"},
      // Recursion with its predecessor constraint removed.
      {"REC-1", "danger.pmt", "psaw",
       "    context Predecessor(pre_t, t);\n    input Speed(tr, pre_t);",
       "    input Speed(tr, pre_t);"},
      // Predecessor arguments reversed: the parent sits in the future.
      {"CONF-TIME", "danger.pmt", "psaw",
       "context Predecessor(pre_t, t);\n    input Speed(tr, pre_t);",
       "context Predecessor(t, pre_t);\n    input Speed(tr, pre_t);"},
      // Re-kinding the report turns its sensor parent into OC -> TR.
      {"CONF-EDGE", "prognos-subset.pmt", "psaw",
       "resident ReportedInterest(r, t): boolean kind RT",
       "resident ReportedInterest(r, t): boolean kind TR"},
      // Observation MFrag with the observer link deleted.
      {"CONF-OBS", "prognos-subset.pmt", "psaw",
       "    context ObserverOf(sr, s);\n    resident Visibility",
       "    resident Visibility"},
      // Report MFrag with the identity link deleted.
      {"CONF-ACT", "prognos-subset.pmt", "psaw",
       "    context s = ActualObject(r);\n", ""},
  };

  for (const Mutation& m : mutations) {
    if (!ok) break;
    try {
      std::string text = read_file(fixture(m.fixtureName));
      if (!apply_mutation(m, text, detail)) {
        ok = false;
        detail = std::string(m.rule) + ": " + detail;
        break;
      }
      MTheory t = theory_from(text, std::string(m.rule) + " mutant");
      auto rep = validate_all(t, builtin_profile(m.profile), true);
      if (rep.passed) {
        ok = false;
        detail = std::string(m.rule) + " mutant passed validation";
        break;
      }
      for (const auto& d : rep.diagnostics)
        if (d.code != m.rule) {
          ok = false;
          detail = std::string(m.rule) + " mutant also reports " + d.code;
          break;
        }
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string(m.rule) + ": " + e.what();
    }
  }
  report("mutation battery", ok, detail);
}

// --------------------------------------------------------------- criterion 4

void temporal_unrolling() {
  std::string detail;
  bool ok = true;
  try {
    MTheory t = load_theory("danger.pmt");
    WorldModel w = world_from(danger_world_text(50, "query Speed(tr1, t50);"), t, "t50 world");
    Ssbn s = build_ssbn(t, w);

    int speeds = 0;
    for (const auto& n : s.nodes)
      if (n.templateName == "Speed") ++speeds;
    if (speeds != 50) {
      ok = false;
      detail = "chain has " + std::to_string(speeds) + " links";
    }

    // The transition matrix rows (0.8,0.2)/(0.1,0.9) have the stationary
    // point 0.1/(0.2+0.1) = 1/3, which 50 steps approach well within 1e-6.
    double p = eliminate_marginal(s, "Speed(tr1,t50)").probability_of("Fast");
    if (std::abs(p - 1.0 / 3.0) >= 1e-6) {
      ok = false;
      detail = "P(Fast at t50) = " + std::to_string(p);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("temporal unrolling", ok, detail);
}

// --------------------------------------------------------------- criterion 5

void forced_posteriors() {
  std::string detail;
  bool ok = true;
  try {
    MTheory t = load_theory("danger.pmt");
    Ssbn s = build_ssbn(t, load_world("danger-world.pw", t));

    double root = eliminate_marginal(s, "Speed(tr1,t1)").probability_of("Fast");
    if (root != 0.2) {  // root prior must come through untouched
      ok = false;
      detail = "root prior " + std::to_string(root);
    }

    double forced = eliminate_marginal(s, "DangerLevel(ci1,t3)", {{"Speed(tr1,t3)", "Fast"}})
                        .probability_of("High");
    if (std::abs(forced - 0.9) >= 1e-12) {
      ok = false;
      detail = "forced rule row gave " + std::to_string(forced);
    }

    double step = eliminate_marginal(s, "Speed(tr1,t2)").probability_of("Fast");
    if (std::abs(step - 0.24) >= 1e-12) {  // 0.2*0.8 + 0.8*0.1
      ok = false;
      detail = "two-term sum gave " + std::to_string(step);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("forced posteriors", ok, detail);
}

// --------------------------------------------------------------- criterion 6

void determinism() {
  std::string detail;
  bool ok = true;
  try {
    for (const char* name : {"danger", "msaw", "prognos-subset"}) {
      MTheory t = load_theory(std::string(name) + ".pmt");
      auto tBack = parse_theory(serialize_theory(t));
      if (!tBack.ok() || !(*tBack.theory == t)) {
        ok = false;
        detail = std::string(name) + ".pmt round-trip drifted";
      }
      WorldModel w = load_world(std::string(name) + "-world.pw", t);
      auto wBack = parse_world(serialize_world(w), t);
      if (!wBack.ok() || !(*wBack.world == w)) {
        ok = false;
        detail = std::string(name) + "-world.pw round-trip drifted";
      }
      if (export_json(build_ssbn(t, w)) != export_json(build_ssbn(t, w))) {
        ok = false;
        detail = std::string(name) + " export not deterministic";
      }
    }

    std::string args = "query \"" + fixture("msaw.pmt") + "\" \"" + fixture("msaw-world.pw") +
                       "\" --profile msaw";
    int statusA = 0, statusB = 0;
    std::string a = cli_output(args, statusA);
    std::string b = cli_output(args, statusB);
    if (statusA != 0 || statusB != 0 || a != b || a.empty()) {
      ok = false;
      detail = "repeated invocations diverged";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("round-trip and determinism", ok, detail);
}

// --------------------------------------------------------------- criterion 7

struct WorldRecipe {
  std::string text;
};

std::string random_danger_world(std::mt19937& rng) {
  std::uniform_int_distribution<int> times(1, 8), targets(1, 3), cis(1, 2);
  std::uniform_real_distribution<double> unit(0, 1);
  int nt = times(rng), ntr = targets(rng), nci = cis(rng);
  std::string src = "world W {\n  time";
  for (int i = 1; i <= nt; ++i) src += (i == 1 ? " t" : ", t") + std::to_string(i);
  src += ";\n  Target";
  for (int i = 1; i <= ntr; ++i) src += (i == 1 ? " tr" : ", tr") + std::to_string(i);
  src += ";\n  CriticalInfrastructure";
  for (int i = 1; i <= nci; ++i) src += (i == 1 ? " ci" : ", ci") + std::to_string(i);
  src += ";\n";
  for (int a = 1; a <= ntr; ++a)
    for (int b = 1; b <= nci; ++b)
      if (unit(rng) < 0.5)
        src += "  fact Approaching(tr" + std::to_string(a) + ", ci" + std::to_string(b) + ");\n";
  for (int a = 1; a <= ntr; ++a)
    for (int i = 1; i <= nt; ++i)
      if (unit(rng) < 0.08)
        src += "  evidence Speed(tr" + std::to_string(a) + ", t" + std::to_string(i) + ") = " +
               (unit(rng) < 0.5 ? "Fast" : "Slow") + ";\n";
  src += "  query DangerLevel(ci1, t" + std::to_string(nt) + ");\n";
  if (unit(rng) < 0.5) src += "  query Speed(tr1, t" + std::to_string(1 + (nt > 1)) + ");\n";
  src += "}\n";
  return src;
}

std::string random_msaw_world(std::mt19937& rng) {
  std::uniform_int_distribution<int> times(1, 4), slabs(1, 3), gauges(1, 2), reports(1, 2);
  std::uniform_real_distribution<double> unit(0, 1);
  int nt = times(rng), ns = slabs(rng), ng = gauges(rng), nr = reports(rng);
  std::string src = "world W {\n  time";
  for (int i = 1; i <= nt; ++i) src += (i == 1 ? " t" : ", t") + std::to_string(i);
  src += ";\n  Heater heater1;\n  Slab";
  for (int i = 1; i <= ns; ++i) src += (i == 1 ? " slab" : ", slab") + std::to_string(i);
  src += ";\n  Gauge";
  for (int i = 1; i <= ng; ++i) src += (i == 1 ? " gauge" : ", gauge") + std::to_string(i);
  src += ";\n  HeaterReport";
  for (int i = 1; i <= nr; ++i) src += (i == 1 ? " hr" : ", hr") + std::to_string(i);
  src += ";\n";
  for (int g = 1; g <= ng; ++g)
    if (unit(rng) < 0.7) src += "  fact ObserverOf(gauge" + std::to_string(g) + ", heater1);\n";
  for (int r = 1; r <= nr; ++r)
    if (unit(rng) < 0.8) src += "  fact ActualObject(hr" + std::to_string(r) + ", heater1);\n";
  for (int r = 1; r <= nr; ++r)
    if (unit(rng) < 0.3)
      src += "  evidence ReportedHeatingTime(hr" + std::to_string(r) + ", t" +
             std::to_string(nt) + ") = " + (unit(rng) < 0.5 ? "Long" : "Short") + ";\n";
  src += "  query ProcessRisk(t" + std::to_string(nt) + ");\n";
  src += "  query SlabTemp(slab1, t" + std::to_string(nt) + ");\n";
  src += "}\n";
  return src;
}

std::string random_prognos_world(std::mt19937& rng) {
  std::uniform_int_distribution<int> times(1, 5), ships(1, 3), sensors(1, 2), reports(1, 2);
  std::uniform_real_distribution<double> unit(0, 1);
  int nt = times(rng), ns = ships(rng), nse = sensors(rng), nr = reports(rng);
  std::string src = "world W {\n  time";
  for (int i = 1; i <= nt; ++i) src += (i == 1 ? " t" : ", t") + std::to_string(i);
  src += ";\n  Ship";
  for (int i = 1; i <= ns; ++i) src += (i == 1 ? " ship" : ", ship") + std::to_string(i);
  src += ";\n  Sensor";
  for (int i = 1; i <= nse; ++i) src += (i == 1 ? " radar" : ", radar") + std::to_string(i);
  src += ";\n  ShipReport";
  for (int i = 1; i <= nr; ++i) src += (i == 1 ? " rpt" : ", rpt") + std::to_string(i);
  src += ";\n";
  for (int a = 1; a <= nse; ++a)
    for (int b = 1; b <= ns; ++b)
      if (unit(rng) < 0.5)
        src += "  fact ObserverOf(radar" + std::to_string(a) + ", ship" + std::to_string(b) +
               ");\n";
  for (int r = 1; r <= nr; ++r)
    if (unit(rng) < 0.8)
      src += "  fact ActualObject(rpt" + std::to_string(r) + ", ship" +
             std::to_string(1 + static_cast<int>(unit(rng) * ns) % ns) + ");\n";
  for (int r = 1; r <= nr; ++r)
    if (unit(rng) < 0.3)
      src += "  evidence ReportedInterest(rpt" + std::to_string(r) + ", t" +
             std::to_string(nt) + ") = " + (unit(rng) < 0.5 ? "true" : "false") + ";\n";
  src += "  query HarborThreat(t" + std::to_string(nt) + ");\n";
  src += "  query ShipOfInterest(ship1, t" + std::to_string(nt) + ");\n";
  src += "}\n";
  return src;
}

bool dag_and_normalized(const Ssbn& s, std::string& detail) {
  std::set<std::string> seen;
  for (const auto& n : s.nodes) {
    for (const auto& p : n.parents)
      if (seen.count(p) == 0) {
        detail = "parent " + p + " after child " + n.id;
        return false;
      }
    seen.insert(n.id);
    size_t rows = 1;
    for (const auto& p : n.parents) rows *= s.find(p)->states.size();
    if (n.cpt.size() != rows * n.states.size()) {
      detail = "table shape off for " + n.id;
      return false;
    }
    for (size_t r = 0; r < rows; ++r) {
      double sum = 0;
      for (size_t c = 0; c < n.states.size(); ++c) sum += n.cpt[r * n.states.size() + c];
      if (std::abs(sum - 1.0) > 1e-9) {
        detail = "row does not normalize for " + n.id;
        return false;
      }
    }
  }
  return true;
}

void instantiation_safety() {
  std::string detail;
  bool ok = true;
  try {
    std::mt19937 rng(77007700);
    struct Gen {
      const char* theoryName;
      std::string (*make)(std::mt19937&);
    };
    const Gen gens[] = {{"danger.pmt", random_danger_world},
                        {"msaw.pmt", random_msaw_world},
                        {"prognos-subset.pmt", random_prognos_world}};
    for (const Gen& g : gens) {
      MTheory t = load_theory(g.theoryName);
      for (int trial = 0; trial < 200 && ok; ++trial) {
        std::string src = g.make(rng);
        WorldModel w = world_from(src, t, std::string(g.theoryName) + " random world");
        Ssbn s = build_ssbn(t, w);
        if (!dag_and_normalized(s, detail)) {
          ok = false;
          detail = std::string(g.theoryName) + " trial " + std::to_string(trial) + ": " + detail;
        }
      }
      if (!ok) break;
    }

    // Long timelines must stay well inside the default expansion budget.
    if (ok) {
      MTheory danger = load_theory("danger.pmt");
      WorldModel w100 =
          world_from(danger_world_text(100, "query DangerLevel(ci1, t100);"), danger, "t100");
      Ssbn s = build_ssbn(danger, w100);
      if (s.nodes.size() != 101 || !dag_and_normalized(s, detail)) {
        ok = false;
        detail = "100-step unrolling: " + detail;
      }

      MTheory harbor = load_theory("prognos-subset.pmt");
      std::string src = "world W {\n  time";
      for (int i = 1; i <= 100; ++i) src += (i == 1 ? " t" : ", t") + std::to_string(i);
      src += ";\n  Ship ship1;\n  Sensor radar1;\n  ShipReport rpt1;\n"
             "  fact ObserverOf(radar1, ship1);\n  fact ActualObject(rpt1, ship1);\n"
             "  query ShipOfInterest(ship1, t100);\n}\n";
      Ssbn hs = build_ssbn(harbor, world_from(src, harbor, "harbor t100"));
      if (hs.nodes.size() != 100 || !dag_and_normalized(hs, detail)) {
        ok = false;
        detail = "harbor 100-step unrolling: " + detail;
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report("instantiation safety", ok, detail);
}

}  // namespace

int main() {
  canonical_grounding();
  engine_agreement();
  mutation_battery();
  temporal_unrolling();
  forced_posteriors();
  determinism();
  instantiation_safety();
  if (g_failures != 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
