#include "schemaind/clause.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace schemaind {

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](Term t) { return t.is_constant(); });
}

std::set<VarId> variables_of(const Atom& atom) {
  std::set<VarId> out;
  for (Term t : atom.args)
    if (t.is_variable()) out.insert(t.id);
  return out;
}

std::set<VarId> variables_of(const OrderedClause& clause) {
  auto out = variables_of(clause.head);
  for (const auto& a : clause.body)
    for (Term t : a.args)
      if (t.is_variable()) out.insert(t.id);
  return out;
}

std::set<VarId> body_variables(const OrderedClause& clause) {
  std::set<VarId> out;
  for (const auto& a : clause.body)
    for (Term t : a.args)
      if (t.is_variable()) out.insert(t.id);
  return out;
}

VarId max_variable(const OrderedClause& clause) {
  VarId m = 0;
  auto visit = [&m](const Atom& a) {
    for (Term t : a.args)
      if (t.is_variable()) m = std::max(m, t.id);
  };
  visit(clause.head);
  for (const auto& a : clause.body) visit(a);
  return m;
}

std::set<SymbolId> constants_of(const Atom& atom) {
  std::set<SymbolId> out;
  for (Term t : atom.args)
    if (t.is_constant()) out.insert(t.id);
  return out;
}

Term apply(const Substitution& theta, Term t) {
  if (!t.is_variable()) return t;
  auto it = theta.find(t.id);
  return it == theta.end() ? t : it->second;
}

Atom apply(const Substitution& theta, const Atom& atom) {
  Atom out = atom;
  for (Term& t : out.args) t = apply(theta, t);
  return out;
}

OrderedClause apply(const Substitution& theta, const OrderedClause& clause) {
  OrderedClause out;
  out.head = apply(theta, clause.head);
  out.body.reserve(clause.body.size());
  for (const auto& a : clause.body) out.body.push_back(apply(theta, a));
  return out;
}

OrderedClause canonical(const OrderedClause& clause) {
  std::unordered_map<VarId, VarId> rename;
  auto visit = [&rename](Atom& a) {
    for (Term& t : a.args) {
      if (!t.is_variable()) continue;
      auto [it, inserted] = rename.emplace(t.id, static_cast<VarId>(rename.size() + 1));
      t.id = it->second;
    }
  };
  OrderedClause out = clause;
  visit(out.head);
  for (auto& a : out.body) visit(a);
  return out;
}

std::string canonical_key(const OrderedClause& clause) { return to_string(canonical(clause)); }

bool range_restricted(const OrderedClause& clause) {
  auto body = body_variables(clause);
  for (Term t : clause.head.args)
    if (t.is_variable() && !body.count(t.id)) return false;
  return true;
}

OrderedClause keep_literals(const OrderedClause& clause, const std::vector<bool>& keep) {
  OrderedClause out;
  out.head = clause.head;
  for (std::size_t i = 0; i < clause.body.size(); ++i)
    if (keep[i]) out.body.push_back(clause.body[i]);
  return out;
}

namespace {

bool plain_constant(const std::string& s) {
  if (s.empty()) return false;
  bool numeric = std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) || c == '.'; });
  if (numeric) return true;
  if (!std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string quoted(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string to_string(Term t) {
  if (t.is_variable()) return "V" + std::to_string(t.id);
  const auto& name = symbol_name(t.id);
  return plain_constant(name) ? name : quoted(name);
}

std::string to_string(const Atom& atom) {
  std::string out = atom.name() + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(atom.args[i]);
  }
  return out + ")";
}

std::string to_string(const OrderedClause& clause) {
  std::string out = to_string(clause.head);
  if (clause.body.empty()) return out + ".";
  out += " :- ";
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(clause.body[i]);
  }
  return out + ".";
}

std::string to_string(const HornDefinition& def) {
  std::string out;
  for (const auto& c : def.clauses) out += to_string(c) + "\n";
  return out;
}

std::string fact_string(const Atom& atom) { return to_string(atom) + "."; }

}  // namespace schemaind
