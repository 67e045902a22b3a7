#include "mebn/parser.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "lexer.hpp"

namespace mebn {

namespace {

using detail::TokKind;
using detail::Token;

constexpr double kDistTolerance = 1e-9;

struct ParseAbort {};

class ParserBase {
 public:
  ParserBase(std::string_view text, std::string_view filename) {
    toks_ = detail::Lexer(text, filename).run();
  }

  std::vector<Diagnostic> take_diagnostics() { return std::move(diags_); }

 protected:
  const Token& peek(size_t k = 0) const {
    size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }

  bool at(TokKind k) const { return peek().kind == k; }

  bool at_word(std::string_view w) const {
    return peek().kind == TokKind::Ident && peek().text == w;
  }

  Token take() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(TokKind k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    take();
    return true;
  }

  Token expect(TokKind k, const std::string& what) {
    if (!at(k)) fail("expected " + what + ", found '" + describe(peek()) + "'", peek().span);
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w))
      fail("expected '" + std::string(w) + "', found '" + describe(peek()) + "'", peek().span);
    take();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokKind::End: return "end of input";
      case TokKind::Bad: return t.text;
      default: return t.text;
    }
  }

  void diag(Severity sev, const std::string& code, const std::string& msg,
            const SourceSpan& span) {
    diags_.push_back({sev, code, msg, span});
  }

  void error(const std::string& code, const std::string& msg, const SourceSpan& span) {
    diag(Severity::Error, code, msg, span);
  }

  // Syntax errors abort; everything else recovers and keeps collecting.
  [[noreturn]] void fail(const std::string& msg, const SourceSpan& span) {
    error("PARSE-1", msg, span);
    throw ParseAbort{};
  }

  double number(const Token& t) {
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end == nullptr || *end != '\0') fail("malformed number '" + t.text + "'", t.span);
    return v;
  }

  struct Atom {
    std::string name;
    std::vector<std::string> args;
    SourceSpan span;
  };

  Atom atom() {
    Token name = expect(TokKind::Ident, "a name");
    return atom_with_name(name);
  }

  Atom atom_with_name(const Token& name) {
    Atom a;
    a.name = name.text;
    a.span = name.span;
    expect(TokKind::LParen, "'('");
    a.args.push_back(expect(TokKind::Ident, "an argument").text);
    while (accept(TokKind::Comma)) a.args.push_back(expect(TokKind::Ident, "an argument").text);
    expect(TokKind::RParen, "')'");
    return a;
  }

  std::vector<double> distribution() {
    std::vector<double> out;
    expect(TokKind::LParen, "'('");
    out.push_back(number(expect(TokKind::Number, "a probability")));
    while (accept(TokKind::Comma)) out.push_back(number(expect(TokKind::Number, "a probability")));
    expect(TokKind::RParen, "')'");
    return out;
  }

  void check_distribution(const std::vector<double>& d, size_t arity, const SourceSpan& span) {
    if (d.size() != arity) {
      error("PARSE-3",
            "distribution has " + std::to_string(d.size()) + " entries for " +
                std::to_string(arity) + " states",
            span);
      return;
    }
    double sum = 0.0;
    for (double v : d) {
      if (v < 0.0) {
        error("PARSE-3", "distribution has a negative entry", span);
        return;
      }
      sum += v;
    }
    if (sum < 1.0 - kDistTolerance || sum > 1.0 + kDistTolerance)
      error("PARSE-3", "distribution does not sum to 1", span);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
};

// ---------------------------------------------------------------------------

class TheoryParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  MTheory run() {
    MTheory t;
    expect_word("mtheory");
    t.name = expect(TokKind::Ident, "a theory name").text;
    expect(TokKind::LBrace, "'{'");
    while (!accept(TokKind::RBrace)) {
      if (at_word("entity")) {
        parse_entity(t);
      } else if (at_word("mfrag")) {
        parse_mfrag(t);
      } else {
        fail("expected 'entity', 'mfrag' or '}', found '" + describe(peek()) + "'", peek().span);
      }
    }
    if (!at(TokKind::End)) fail("trailing input after theory", peek().span);
    return t;
  }

 private:
  void parse_entity(MTheory& t) {
    Token kw = take();
    EntityType e;
    Token name = expect(TokKind::Ident, "an entity type name");
    e.name = name.text;
    e.span = kw.span;
    bool kindGiven = false;
    if (accept_word("ordered")) e.ordered = true;
    if (accept_word("kind")) {
      Token k = expect(TokKind::Ident, "an entity kind");
      auto kind = entity_kind_from(k.text);
      if (!kind) fail("unknown entity kind '" + k.text + "'", k.span);
      e.kind = *kind;
      kindGiven = true;
    }
    expect(TokKind::Semicolon, "';'");
    if (e.ordered && !kindGiven) e.kind = EntityKind::Time;
    if (e.ordered && e.kind != EntityKind::Time)
      error("PARSE-5", "only time-kinded entity types may be ordered", name.span);
    if (t.find_entity_type(e.name) != nullptr)
      error("PARSE-2", "duplicate entity type '" + e.name + "'", name.span);
    t.entityTypes.push_back(std::move(e));
  }

  void parse_mfrag(MTheory& t) {
    Token kw = take();
    MFrag f;
    Token name = expect(TokKind::Ident, "an MFrag name");
    f.name = name.text;
    f.span = kw.span;
    for (const auto& other : t.mfrags)
      if (other.name == f.name)
        error("PARSE-2", "duplicate MFrag '" + f.name + "'", name.span);
    if (accept_word("group")) {
      Token g = expect(TokKind::Ident, "an MFrag group");
      auto group = mfrag_group_from(g.text);
      if (!group) fail("unknown MFrag group '" + g.text + "'", g.span);
      f.group = *group;
    }
    expect(TokKind::LBrace, "'{'");
    std::vector<std::pair<DistRule*, SourceSpan>> pendingRuleChecks;
    while (!accept(TokKind::RBrace)) {
      if (at_word("ov")) {
        parse_ov(t, f);
      } else if (at_word("context")) {
        parse_context(f);
      } else if (at_word("input")) {
        parse_input(f);
      } else if (at_word("resident")) {
        parse_resident(f);
      } else {
        fail("expected 'ov', 'context', 'input', 'resident' or '}', found '" + describe(peek()) +
                 "'",
             peek().span);
      }
    }
    resolve_rule_references(f);
    t.mfrags.push_back(std::move(f));
  }

  void parse_ov(const MTheory& t, MFrag& f) {
    take();
    OrdinaryVariable ov;
    Token name = expect(TokKind::Ident, "a variable name");
    ov.name = name.text;
    ov.span = name.span;
    expect(TokKind::Colon, "':'");
    Token type = expect(TokKind::Ident, "an entity type");
    ov.type = type.text;
    expect(TokKind::Semicolon, "';'");
    if (t.find_entity_type(ov.type) == nullptr)
      error("PARSE-4", "unknown entity type '" + ov.type + "'", type.span);
    if (f.find_ov(ov.name) != nullptr)
      error("PARSE-2", "duplicate ordinary variable '" + ov.name + "' in MFrag '" + f.name + "'",
            name.span);
    f.ovs.push_back(std::move(ov));
  }

  void check_args_are_ovs(const MFrag& f, const Atom& a) {
    for (const auto& arg : a.args)
      if (f.find_ov(arg) == nullptr)
        error("PARSE-4", "unknown ordinary variable '" + arg + "' in MFrag '" + f.name + "'",
              a.span);
  }

  void parse_context(MFrag& f) {
    take();
    ContextConstraint c;
    Token first = expect(TokKind::Ident, "a name");
    if (accept(TokKind::Assign)) {
      c.equality = true;
      c.boundOv = first.text;
      if (f.find_ov(c.boundOv) == nullptr)
        error("PARSE-4", "unknown ordinary variable '" + c.boundOv + "' in MFrag '" + f.name + "'",
              first.span);
      Atom a = atom();
      c.templateName = a.name;
      c.ovArgs = a.args;
      c.span = first.span;
      check_args_are_ovs(f, a);
    } else {
      Atom a = atom_with_name(first);
      c.templateName = a.name;
      c.ovArgs = a.args;
      c.span = a.span;
      check_args_are_ovs(f, a);
    }
    expect(TokKind::Semicolon, "';'");
    f.contexts.push_back(std::move(c));
  }

  void parse_input(MFrag& f) {
    take();
    Atom a = atom();
    expect(TokKind::Semicolon, "';'");
    check_args_are_ovs(f, a);
    for (const auto& other : f.inputs)
      if (other.templateName == a.name && other.ovArgs == a.args)
        error("PARSE-2", "duplicate input '" + a.name + "' in MFrag '" + f.name + "'", a.span);
    f.inputs.push_back({a.name, a.args, a.span});
  }

  void parse_resident(MFrag& f) {
    take();
    ResidentNode r;
    Atom a = atom();
    r.templateName = a.name;
    r.ovArgs = a.args;
    r.span = a.span;
    check_args_are_ovs(f, a);
    if (f.find_resident(r.templateName) != nullptr)
      error("PARSE-2",
            "template '" + r.templateName + "' declared resident twice in MFrag '" + f.name + "'",
            a.span);
    expect(TokKind::Colon, "':'");
    parse_states(r);
    if (accept_word("kind")) r.kind = expect(TokKind::Ident, "an RV kind").text;
    if (accept_word("deterministic")) {
      r.deterministic = true;
      expect(TokKind::Semicolon, "';'");
      if (r.kind.empty()) r.kind = "CTX";
      if (r.kind != "CTX")
        error("PARSE-5",
              "deterministic resident '" + r.templateName + "' must have kind CTX",
              a.span);
      if (r.states != std::vector<std::string>{"true", "false"})
        error("PARSE-5",
              "deterministic resident '" + r.templateName + "' must be boolean",
              a.span);
    } else {
      if (r.kind == "CTX")
        error("PARSE-5",
              "kind CTX is reserved for deterministic residents ('" + r.templateName + "')",
              a.span);
      parse_lpd(f, r);
    }
    f.residents.push_back(std::move(r));
  }

  void parse_states(ResidentNode& r) {
    if (accept_word("boolean")) {
      r.states = {"true", "false"};
      return;
    }
    Token open = expect(TokKind::LBrace, "'boolean' or '{'");
    r.states.push_back(expect(TokKind::Ident, "a state label").text);
    while (accept(TokKind::Comma)) r.states.push_back(expect(TokKind::Ident, "a state label").text);
    expect(TokKind::RBrace, "'}'");
    std::set<std::string> seen;
    for (const auto& s : r.states)
      if (!seen.insert(s).second)
        error("PARSE-2", "duplicate state '" + s + "' for '" + r.templateName + "'", open.span);
    if (r.states.size() < 2)
      error("PARSE-5", "'" + r.templateName + "' needs at least two states", open.span);
  }

  void parse_lpd(const MFrag& f, ResidentNode& r) {
    expect(TokKind::LBrace, "'{'");
    while (at_word("if")) {
      take();
      DistRule rule;
      if (accept_word("any")) {
        rule.quant = Quantifier::Any;
      } else if (accept_word("all")) {
        rule.quant = Quantifier::All;
      } else {
        fail("expected 'any' or 'all', found '" + describe(peek()) + "'", peek().span);
      }
      Atom a = atom();
      rule.parentTemplate = a.name;
      rule.parentOvArgs = a.args;
      rule.span = a.span;
      check_args_are_ovs(f, a);
      expect(TokKind::Equals, "'=='");
      rule.state = expect(TokKind::Ident, "a state label").text;
      expect(TokKind::Arrow, "'->'");
      rule.dist = distribution();
      expect(TokKind::Semicolon, "';'");
      check_distribution(rule.dist, r.states.size(), a.span);
      r.lpd.rules.push_back(std::move(rule));
    }
    Token def = peek();
    expect_word("default");
    expect(TokKind::Arrow, "'->'");
    r.lpd.defaultDist = distribution();
    expect(TokKind::Semicolon, "';'");
    check_distribution(r.lpd.defaultDist, r.states.size(), def.span);
    expect(TokKind::RBrace, "'}'");
  }

  // Every rule atom must match a declared input or resident of its MFrag;
  // checked after the MFrag closes so declaration order does not matter.
  void resolve_rule_references(const MFrag& f) {
    for (const auto& r : f.residents) {
      for (const auto& rule : r.lpd.rules) {
        bool found = false;
        for (const auto& in : f.inputs)
          if (in.templateName == rule.parentTemplate && in.ovArgs == rule.parentOvArgs)
            found = true;
        for (const auto& res : f.residents)
          if (res.templateName == rule.parentTemplate && res.ovArgs == rule.parentOvArgs)
            found = true;
        if (!found)
          error("PARSE-4",
                "rule for '" + r.templateName + "' references '" + rule.parentTemplate +
                    "', which is not a declared input or resident of MFrag '" + f.name + "'",
                rule.span);
      }
    }
  }
};

// ---------------------------------------------------------------------------

class WorldParser : public ParserBase {
 public:
  WorldParser(std::string_view text, const MTheory& theory, std::string_view filename)
      : ParserBase(text, filename), theory_(theory) {
    for (const auto& f : theory.mfrags)
      for (const auto& r : f.residents)
        if (!homes_.emplace(r.templateName, std::pair{&f, &r}).second)
          ambiguous_.insert(r.templateName);
  }

  WorldModel run() {
    WorldModel w;
    expect_word("world");
    w.name = expect(TokKind::Ident, "a world name").text;
    expect(TokKind::LBrace, "'{'");
    while (!accept(TokKind::RBrace)) {
      if (at_word("time")) {
        parse_time(w);
      } else if (at_word("fact")) {
        parse_fact(w);
      } else if (at_word("evidence")) {
        parse_evidence(w);
      } else if (at_word("query")) {
        parse_query(w);
      } else if (at(TokKind::Ident)) {
        parse_instances(w);
      } else {
        fail("expected a declaration or '}', found '" + describe(peek()) + "'", peek().span);
      }
    }
    if (!at(TokKind::End)) fail("trailing input after world", peek().span);
    return w;
  }

 private:
  void add_instance(WorldModel& w, const Token& id, const EntityType& type) {
    if (w.find_instance(id.text) != nullptr) {
      error("PARSE-2", "duplicate instance '" + id.text + "'", id.span);
      return;
    }
    EntityInstance inst;
    inst.id = id.text;
    inst.type = type.name;
    if (type.ordered) inst.ordinal = ++ordinals_[type.name];
    w.instances.push_back(std::move(inst));
  }

  void parse_time(WorldModel& w) {
    Token kw = take();
    const EntityType* timeType = nullptr;
    int orderedCount = 0;
    for (const auto& e : theory_.entityTypes)
      if (e.ordered) {
        timeType = &e;
        ++orderedCount;
      }
    if (orderedCount == 0)
      fail_ref("PARSE-4", "the theory declares no ordered entity type", kw.span);
    if (orderedCount > 1)
      fail_ref("PARSE-4", "multiple ordered entity types; name the type explicitly", kw.span);
    add_instance(w, expect(TokKind::Ident, "an instance id"), *timeType);
    while (accept(TokKind::Comma))
      add_instance(w, expect(TokKind::Ident, "an instance id"), *timeType);
    expect(TokKind::Semicolon, "';'");
  }

  void parse_instances(WorldModel& w) {
    Token typeName = take();
    const EntityType* type = theory_.find_entity_type(typeName.text);
    if (type == nullptr)
      fail_ref("PARSE-4", "unknown entity type '" + typeName.text + "'", typeName.span);
    add_instance(w, expect(TokKind::Ident, "an instance id"), *type);
    while (accept(TokKind::Comma))
      add_instance(w, expect(TokKind::Ident, "an instance id"), *type);
    expect(TokKind::Semicolon, "';'");
  }

  // Unresolvable names leave nothing sensible to continue with; stop here.
  [[noreturn]] void fail_ref(const std::string& code, const std::string& msg,
                             const SourceSpan& span) {
    error(code, msg, span);
    throw ParseAbort{};
  }

  struct ResolvedAtom {
    GroundAtom atom;
    const ResidentNode* resident = nullptr;
    bool argsOk = false;
    SourceSpan span;
  };

  ResolvedAtom resolve_atom(const WorldModel& w) {
    Atom a = atom();
    ResolvedAtom out;
    out.atom.templateName = a.name;
    out.atom.args = a.args;
    out.span = a.span;
    if (ambiguous_.count(a.name) != 0)
      fail_ref("PARSE-4", "template '" + a.name + "' has multiple homes", a.span);
    auto it = homes_.find(a.name);
    if (it == homes_.end())
      fail_ref("PARSE-4", "unknown template '" + a.name + "'", a.span);
    const MFrag* home = it->second.first;
    out.resident = it->second.second;
    if (a.args.size() != out.resident->ovArgs.size()) {
      error("WORLD-2",
            "'" + a.name + "' takes " + std::to_string(out.resident->ovArgs.size()) +
                " arguments, got " + std::to_string(a.args.size()),
            a.span);
      return out;
    }
    out.argsOk = true;
    for (size_t i = 0; i < a.args.size(); ++i) {
      const EntityInstance* inst = w.find_instance(a.args[i]);
      if (inst == nullptr) {
        error("PARSE-4", "unknown instance '" + a.args[i] + "'", a.span);
        out.argsOk = false;
        continue;
      }
      const OrdinaryVariable* ov = home->find_ov(out.resident->ovArgs[i]);
      if (ov != nullptr && inst->type != ov->type) {
        error("WORLD-2",
              "argument " + std::to_string(i + 1) + " of '" + a.name + "' must be " + ov->type +
                  ", got " + inst->type + " '" + inst->id + "'",
              a.span);
        out.argsOk = false;
      }
    }
    return out;
  }

  void parse_fact(WorldModel& w) {
    take();
    ResolvedAtom ra = resolve_atom(w);
    expect(TokKind::Semicolon, "';'");
    if (!ra.resident->deterministic) {
      error("WORLD-1", "facts may only assert deterministic context relations ('" +
                           ra.atom.templateName + "' is stochastic)",
            ra.span);
      return;
    }
    if (ra.atom.templateName == "Predecessor") {
      error("WORLD-4", "time order is derived from declaration order; 'Predecessor' facts cannot "
                       "be asserted",
            ra.span);
      return;
    }
    if (!ra.argsOk) return;
    if (std::find(w.facts.begin(), w.facts.end(), ra.atom) != w.facts.end()) {
      error("PARSE-2", "duplicate fact '" + ra.atom.id() + "'", ra.span);
      return;
    }
    w.facts.push_back(std::move(ra.atom));
  }

  void parse_evidence(WorldModel& w) {
    take();
    ResolvedAtom ra = resolve_atom(w);
    expect(TokKind::Assign, "'='");
    Token state = expect(TokKind::Ident, "a state label");
    expect(TokKind::Semicolon, "';'");
    if (ra.resident->deterministic) {
      error("WORLD-1", "evidence must target a stochastic variable ('" + ra.atom.templateName +
                           "' is a context relation)",
            ra.span);
      return;
    }
    const auto& states = ra.resident->states;
    if (std::find(states.begin(), states.end(), state.text) == states.end()) {
      error("WORLD-3",
            "'" + ra.atom.templateName + "' has no state '" + state.text + "'", state.span);
      return;
    }
    if (!ra.argsOk) return;
    for (const auto& [atom, _] : w.evidence)
      if (atom == ra.atom) {
        error("PARSE-2", "duplicate evidence for '" + ra.atom.id() + "'", ra.span);
        return;
      }
    w.evidence.emplace_back(std::move(ra.atom), state.text);
  }

  void parse_query(WorldModel& w) {
    take();
    ResolvedAtom ra = resolve_atom(w);
    expect(TokKind::Semicolon, "';'");
    if (ra.resident->deterministic) {
      error("WORLD-1", "queries must target a stochastic variable ('" + ra.atom.templateName +
                           "' is a context relation)",
            ra.span);
      return;
    }
    if (!ra.argsOk) return;
    if (std::find(w.queries.begin(), w.queries.end(), ra.atom) != w.queries.end()) {
      error("PARSE-2", "duplicate query '" + ra.atom.id() + "'", ra.span);
      return;
    }
    w.queries.push_back(std::move(ra.atom));
  }

  const MTheory& theory_;
  std::map<std::string, std::pair<const MFrag*, const ResidentNode*>> homes_;
  std::set<std::string> ambiguous_;
  std::map<std::string, int> ordinals_;
};

// ---------------------------------------------------------------------------

class ProfileParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  ConformanceProfile run() {
    ConformanceProfile p;
    expect_word("profile");
    p.name = expect(TokKind::Ident, "a profile name").text;
    expect(TokKind::LBrace, "'{'");
    std::vector<std::pair<Token, Token>> edges;
    while (!accept(TokKind::RBrace)) {
      if (accept_word("kinds")) {
        parse_kinds(p);
      } else if (accept_word("edge")) {
        Token from = expect(TokKind::Ident, "an RV kind");
        expect(TokKind::Arrow, "'->'");
        Token to = expect(TokKind::Ident, "an RV kind");
        expect(TokKind::Semicolon, "';'");
        edges.emplace_back(from, to);
      } else if (accept_word("recursion")) {
        if (accept_word("allow")) {
          p.allowSameKindTemporalRecursion = true;
        } else if (accept_word("deny")) {
          p.allowSameKindTemporalRecursion = false;
        } else {
          fail("expected 'allow' or 'deny', found '" + describe(peek()) + "'", peek().span);
        }
        expect(TokKind::Semicolon, "';'");
      } else if (accept_word("require")) {
        parse_require(p);
      } else {
        fail("expected 'kinds', 'edge', 'recursion', 'require' or '}', found '" +
                 describe(peek()) + "'",
             peek().span);
      }
    }
    if (!at(TokKind::End)) fail("trailing input after profile", peek().span);
    for (const auto& [from, to] : edges) {
      for (const Token& k : {from, to})
        if (!p.has_kind(k.text))
          error("PARSE-4", "edge references undeclared kind '" + k.text + "'", k.span);
      p.allowedEdges.emplace_back(from.text, to.text);
    }
    return p;
  }

 private:
  void parse_kinds(ConformanceProfile& p) {
    do {
      Token k = expect(TokKind::Ident, "an RV kind");
      if (p.has_kind(k.text))
        error("PARSE-2", "duplicate kind '" + k.text + "'", k.span);
      else
        p.kinds.push_back(k.text);
    } while (accept(TokKind::Comma));
    expect(TokKind::Semicolon, "';'");
  }

  std::vector<std::string> kind_list() {
    std::vector<std::string> out;
    do out.push_back(expect(TokKind::Ident, "an RV kind").text);
    while (accept(TokKind::Comma));
    return out;
  }

  void parse_require(ConformanceProfile& p) {
    RequiredContextRule rule;
    if (accept_word("observer")) {
      rule.id = "CONF-OBS";
      rule.contextTemplate = expect(TokKind::Ident, "a context template").text;
      expect_word("for");
      rule.residentKinds = kind_list();
    } else if (accept_word("actual")) {
      rule.id = "CONF-ACT";
      rule.equality = true;
      rule.contextTemplate = expect(TokKind::Ident, "a context template").text;
      expect_word("for");
      rule.residentKinds = kind_list();
      expect_word("from");
      rule.parentKinds = kind_list();
    } else if (accept_word("predecessor")) {
      rule.id = "CONF-PRED";
      rule.contextTemplate = expect(TokKind::Ident, "a context template").text;
    } else {
      fail("expected 'observer', 'actual' or 'predecessor', found '" + describe(peek()) + "'",
           peek().span);
    }
    expect(TokKind::Semicolon, "';'");
    p.requiredContexts.push_back(std::move(rule));
  }
};

}  // namespace

TheoryParseResult parse_theory(std::string_view text, std::string_view filename) {
  TheoryParser p(text, filename);
  TheoryParseResult out;
  try {
    MTheory t = p.run();
    out.diagnostics = p.take_diagnostics();
    if (!has_errors(out.diagnostics)) out.theory = std::move(t);
  } catch (const ParseAbort&) {
    out.diagnostics = p.take_diagnostics();
  }
  return out;
}

WorldParseResult parse_world(std::string_view text, const MTheory& theory,
                             std::string_view filename) {
  WorldParser p(text, theory, filename);
  WorldParseResult out;
  try {
    WorldModel w = p.run();
    out.diagnostics = p.take_diagnostics();
    if (!has_errors(out.diagnostics)) out.world = std::move(w);
  } catch (const ParseAbort&) {
    out.diagnostics = p.take_diagnostics();
  }
  return out;
}

ProfileParseResult parse_profile(std::string_view text, std::string_view filename) {
  ProfileParser p(text, filename);
  ProfileParseResult out;
  try {
    ConformanceProfile prof = p.run();
    out.diagnostics = p.take_diagnostics();
    if (!has_errors(out.diagnostics)) out.profile = std::move(prof);
  } catch (const ParseAbort&) {
    out.diagnostics = p.take_diagnostics();
  }
  return out;
}

}  // namespace mebn
