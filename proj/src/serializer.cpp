#include "mebn/serializer.hpp"

#include <charconv>
#include <string>

namespace mebn {

namespace {

// Shortest decimal form that round-trips the exact double.
std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

void append_atom(std::string& out, const std::string& name, const std::vector<std::string>& args) {
  out += name;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i != 0) out += ", ";
    out += args[i];
  }
  out += ')';
}

void append_dist(std::string& out, const std::vector<double>& d) {
  out += '(';
  for (size_t i = 0; i < d.size(); ++i) {
    if (i != 0) out += ", ";
    out += fmt(d[i]);
  }
  out += ')';
}

void append_states(std::string& out, const std::vector<std::string>& states) {
  if (states == std::vector<std::string>{"true", "false"}) {
    out += "boolean";
    return;
  }
  out += '{';
  for (size_t i = 0; i < states.size(); ++i) {
    if (i != 0) out += ", ";
    out += states[i];
  }
  out += '}';
}

void append_resident(std::string& out, const ResidentNode& r) {
  out += "    resident ";
  append_atom(out, r.templateName, r.ovArgs);
  out += ": ";
  append_states(out, r.states);
  if (!r.kind.empty()) {
    out += " kind ";
    out += r.kind;
  }
  if (r.deterministic) {
    out += " deterministic;\n";
    return;
  }
  out += " {\n";
  for (const auto& rule : r.lpd.rules) {
    out += "      if ";
    out += rule.quant == Quantifier::Any ? "any " : "all ";
    append_atom(out, rule.parentTemplate, rule.parentOvArgs);
    out += " == ";
    out += rule.state;
    out += " -> ";
    append_dist(out, rule.dist);
    out += ";\n";
  }
  out += "      default -> ";
  append_dist(out, r.lpd.defaultDist);
  out += ";\n    }\n";
}

}  // namespace

std::string serialize_theory(const MTheory& t) {
  std::string out = "mtheory " + t.name + " {\n";
  for (const auto& e : t.entityTypes) {
    out += "  entity " + e.name;
    if (e.ordered) out += " ordered";
    out += " kind ";
    out += to_string(e.kind);
    out += ";\n";
  }
  for (const auto& f : t.mfrags) {
    out += "\n  mfrag " + f.name;
    if (f.group != MFragGroup::Unspecified) {
      out += " group ";
      out += to_string(f.group);
    }
    out += " {\n";
    for (const auto& ov : f.ovs) out += "    ov " + ov.name + ": " + ov.type + ";\n";
    for (const auto& c : f.contexts) {
      out += "    context ";
      if (c.equality) out += c.boundOv + " = ";
      append_atom(out, c.templateName, c.ovArgs);
      out += ";\n";
    }
    for (const auto& in : f.inputs) {
      out += "    input ";
      append_atom(out, in.templateName, in.ovArgs);
      out += ";\n";
    }
    for (const auto& r : f.residents) append_resident(out, r);
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

std::string serialize_world(const WorldModel& w) {
  std::string out = "world " + w.name + " {\n";
  // One line per run of consecutive same-type instances, preserving order.
  size_t i = 0;
  while (i < w.instances.size()) {
    size_t j = i;
    while (j < w.instances.size() && w.instances[j].type == w.instances[i].type) ++j;
    out += "  " + w.instances[i].type + " ";
    for (size_t k = i; k < j; ++k) {
      if (k != i) out += ", ";
      out += w.instances[k].id;
    }
    out += ";\n";
    i = j;
  }
  for (const auto& f : w.facts) {
    out += "  fact ";
    append_atom(out, f.templateName, f.args);
    out += ";\n";
  }
  for (const auto& [atom, state] : w.evidence) {
    out += "  evidence ";
    append_atom(out, atom.templateName, atom.args);
    out += " = " + state + ";\n";
  }
  for (const auto& q : w.queries) {
    out += "  query ";
    append_atom(out, q.templateName, q.args);
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace mebn
