#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "mebn/model.hpp"

using namespace mebn;
using testutil::load_theory;

TEST_CASE("entity kinds and mfrag groups round-trip through their names") {
  for (auto k : {EntityKind::Time, EntityKind::Observer, EntityKind::Sensor,
                 EntityKind::Reported, EntityKind::Target, EntityKind::Other}) {
    auto back = entity_kind_from(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(!entity_kind_from("banana").has_value());

  for (auto g : {MFragGroup::Context, MFragGroup::Target, MFragGroup::Observing,
                 MFragGroup::Report, MFragGroup::Situation}) {
    auto back = mfrag_group_from(to_string(g));
    REQUIRE(back.has_value());
    CHECK(*back == g);
  }
  CHECK(!mfrag_group_from("nope").has_value());
}

TEST_CASE("home resolution finds the unique declaring mfrag") {
  MTheory t = load_theory("danger.pmt");

  CHECK(home_mfrag(t, "Speed").name == "Target");
  CHECK(home_mfrag(t, "DangerLevel").name == "Situation");
  CHECK(home_mfrag(t, "Predecessor").name == "Context");

  CHECK_THROWS_AS(home_mfrag(t, "NoSuchTemplate"), MebnError);
  try {
    home_mfrag(t, "NoSuchTemplate");
  } catch (const MebnError& e) {
    CHECK(e.code() == "NotFound");
  }
}

TEST_CASE("home resolution rejects templates resident in two mfrags") {
  // Second home for Speed added to the Situation MFrag.
  auto r = parse_theory(R"(
mtheory Dup {
  entity Time ordered kind time;
  entity Target kind target;
  mfrag A {
    ov tr: Target;
    ov t: Time;
    resident Speed(tr, t): {Fast, Slow} {
      default -> (0.5, 0.5);
    }
  }
  mfrag B {
    ov tr: Target;
    ov t: Time;
    resident Speed(tr, t): {Fast, Slow} {
      default -> (0.5, 0.5);
    }
  }
}
)");
  REQUIRE(r.ok());
  CHECK_THROWS_AS(home_mfrag(*r.theory, "Speed"), MebnError);
  try {
    home_mfrag(*r.theory, "Speed");
  } catch (const MebnError& e) {
    CHECK(e.code() == "MultipleHomes");
  }
}

TEST_CASE("resolve_template reports signature as declared") {
  MTheory t = load_theory("danger.pmt");

  RVTemplate speed = resolve_template(t, "Speed");
  CHECK(speed.argTypes == std::vector<std::string>{"Target", "Time"});
  CHECK(speed.states == std::vector<std::string>{"Fast", "Slow"});
  CHECK(speed.kind == "TR");
  CHECK_FALSE(speed.deterministic);

  RVTemplate pred = resolve_template(t, "Predecessor");
  CHECK(pred.argTypes == std::vector<std::string>{"Time", "Time"});
  CHECK(pred.states == std::vector<std::string>{"true", "false"});
  CHECK(pred.deterministic);
  CHECK(pred.kind == "CTX");
}

TEST_CASE("state_index follows declared order and rejects unknown labels") {
  MTheory t = load_theory("danger.pmt");
  RVTemplate speed = resolve_template(t, "Speed");

  CHECK(state_index(speed, "Fast") == 0);
  CHECK(state_index(speed, "Slow") == 1);
  CHECK_THROWS_AS(state_index(speed, "Medium"), MebnError);
  try {
    state_index(speed, "Medium");
  } catch (const MebnError& e) {
    CHECK(e.code() == "UnknownState");
  }
}

TEST_CASE("template dependency graph of the danger theory") {
  MTheory t = load_theory("danger.pmt");
  auto edges = template_dependency_graph(t);

  // Two dependencies: Speed on its own predecessor, DangerLevel on Speed.
  REQUIRE(edges.size() == 2);

  auto find_edge = [&](const std::string& p, const std::string& c) -> const TemplateEdge* {
    for (const auto& e : edges)
      if (e.parent == p && e.child == c) return &e;
    return nullptr;
  };

  const TemplateEdge* rec = find_edge("Speed", "Speed");
  REQUIRE(rec != nullptr);
  CHECK(rec->timing == EdgeTiming::Recursive);
  CHECK(rec->recursive());
  CHECK(rec->mfrag == "Target");

  const TemplateEdge* same = find_edge("Speed", "DangerLevel");
  REQUIRE(same != nullptr);
  CHECK(same->timing == EdgeTiming::SameSlice);
  CHECK(same->mfrag == "Situation");
}

TEST_CASE("edge timing: reversed predecessor arguments read as backward") {
  auto r = parse_theory(R"(
mtheory Back {
  entity Time ordered kind time;
  entity Target kind target;
  mfrag Context {
    ov pre_t: Time;
    ov t: Time;
    resident Predecessor(pre_t, t): boolean kind CTX deterministic;
  }
  mfrag F {
    ov tr: Target;
    ov pre_t: Time;
    ov t: Time;
    context Predecessor(t, pre_t);
    input Speed(tr, pre_t);
    resident Speed(tr, t): {Fast, Slow} {
      if any Speed(tr, pre_t) == Fast -> (0.8, 0.2);
      default -> (0.2, 0.8);
    }
  }
}
)");
  REQUIRE(r.ok());
  auto edges = template_dependency_graph(*r.theory);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].timing == EdgeTiming::Backward);
}

TEST_CASE("edge timing: ordered-argument mismatch without a tie is an unbound shift") {
  auto r = parse_theory(R"(
mtheory Shift {
  entity Time ordered kind time;
  entity Target kind target;
  mfrag F {
    ov tr: Target;
    ov u: Time;
    ov t: Time;
    input Speed(tr, u);
    resident Speed(tr, t): {Fast, Slow} {
      if any Speed(tr, u) == Fast -> (0.8, 0.2);
      default -> (0.2, 0.8);
    }
  }
}
)");
  REQUIRE(r.ok());
  auto edges = template_dependency_graph(*r.theory);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].timing == EdgeTiming::UnboundShift);
}

TEST_CASE("dependency graph deduplicates repeated references") {
  // Two rules against the same parent atom still yield one edge.
  auto r = parse_theory(R"(
mtheory Dedup {
  entity Time ordered kind time;
  entity Target kind target;
  mfrag A {
    ov tr: Target;
    ov t: Time;
    resident Speed(tr, t): {Fast, Slow} {
      default -> (0.5, 0.5);
    }
  }
  mfrag B {
    ov tr: Target;
    ov t: Time;
    input Speed(tr, t);
    resident Alert(tr, t): {On, Off} {
      if any Speed(tr, t) == Fast -> (0.9, 0.1);
      if any Speed(tr, t) == Slow -> (0.2, 0.8);
      default -> (0.1, 0.9);
    }
  }
}
)");
  REQUIRE(r.ok());
  auto edges = template_dependency_graph(*r.theory);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].parent == "Speed");
  CHECK(edges[0].child == "Alert");
}

TEST_CASE("dependency graph requires referenced templates to have a home") {
  auto r = parse_theory(R"(
mtheory Unhomed {
  entity Time ordered kind time;
  entity Target kind target;
  mfrag A {
    ov tr: Target;
    ov t: Time;
    input Ghost(tr, t);
    resident Alert(tr, t): {On, Off} {
      if any Ghost(tr, t) == On -> (0.9, 0.1);
      default -> (0.1, 0.9);
    }
  }
}
)");
  REQUIRE(r.ok());
  CHECK_THROWS_AS(template_dependency_graph(*r.theory), MebnError);
  try {
    template_dependency_graph(*r.theory);
  } catch (const MebnError& e) {
    CHECK(e.code() == "UnresolvedReference");
  }
}

TEST_CASE("mfrag lookups") {
  MTheory t = load_theory("danger.pmt");
  const MFrag& target = home_mfrag(t, "Speed");

  REQUIRE(target.find_ov("tr") != nullptr);
  CHECK(target.find_ov("tr")->type == "Target");
  CHECK(target.find_ov("zz") == nullptr);

  REQUIRE(target.find_resident("Speed") != nullptr);
  CHECK(target.find_resident("DangerLevel") == nullptr);

  REQUIRE(t.find_entity_type("Time") != nullptr);
  CHECK(t.find_entity_type("Time")->ordered);
  CHECK(t.find_entity_type("Target")->kind == EntityKind::Target);
  CHECK(t.find_entity_type("Bogus") == nullptr);
}

TEST_CASE("model equality ignores source spans") {
  MTheory a = load_theory("danger.pmt");
  MTheory b = load_theory("danger.pmt");
  for (auto& f : b.mfrags) f.span.line += 100;
  b.mfrags[0].residents[0].span.column += 7;
  CHECK(a == b);

  b.mfrags[0].residents[0].states.push_back("Extra");
  CHECK_FALSE(a == b);
}
