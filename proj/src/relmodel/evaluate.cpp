#include "schemaind/evaluate.hpp"

#include <algorithm>

#include "schemaind/errors.hpp"
#include "schemaind/solver.hpp"

namespace schemaind {

std::set<Atom> evaluate_clause(const OrderedClause& clause, const TableSource& source) {
  if (!range_restricted(clause))
    throw ConfigError("head variable missing from the body of " + to_string(clause));
  std::vector<VarId> head_vars;
  for (Term t : clause.head.args)
    if (t.is_variable() && std::find(head_vars.begin(), head_vars.end(), t.id) == head_vars.end())
      head_vars.push_back(t.id);
  std::set<Atom> out;
  Solver solver(clause.body, source);
  solver.enumerate(head_vars, [&](const std::vector<Value>& vals) {
    Atom a = clause.head;
    for (Term& t : a.args) {
      if (!t.is_variable()) continue;
      auto pos = std::find(head_vars.begin(), head_vars.end(), t.id) - head_vars.begin();
      t = Term::constant(vals[pos]);
    }
    out.insert(std::move(a));
  });
  return out;
}

std::set<Atom> evaluate_clause(const OrderedClause& clause, const Instance& instance) {
  for (const auto& lit : clause.body) {
    const auto* rel = instance.schema().find(lit.name());
    if (!rel) throw ConfigError("clause uses unknown relation " + lit.name());
    if (rel->arity() != lit.arity()) throw ConfigError("arity mismatch for " + lit.name() + " in clause");
  }
  return evaluate_clause(clause, static_cast<const TableSource&>(instance));
}

bool is_recursive(const HornDefinition& def) {
  for (const auto& c : def.clauses)
    for (const auto& lit : c.body)
      if (lit.predicate == c.head.predicate) return true;
  return false;
}

std::set<Atom> evaluate_definition(const HornDefinition& def, const TableSource& source) {
  std::set<Atom> out;
  if (def.empty()) return out;
  if (!is_recursive(def)) {
    for (const auto& c : def.clauses) {
      auto part = evaluate_clause(c, source);
      out.insert(part.begin(), part.end());
    }
    return out;
  }
  // Naive fixpoint: re-evaluate against the base plus the facts derived so far.
  const Atom& head = def.clauses.front().head;
  TableSet derived;
  Table& table = derived.table(head.predicate, head.arity());
  OverlaySource overlay(source, derived);
  while (true) {
    bool grew = false;
    for (const auto& c : def.clauses) {
      for (const auto& a : evaluate_clause(c, overlay)) {
        Tuple t;
        for (Term x : a.args) t.push_back(x.id);
        if (table.insert(std::move(t))) grew = true;
        out.insert(a);
      }
    }
    if (!grew) break;
  }
  return out;
}

bool entails(const OrderedClause& clause, const TableSource& source, const Atom& example, std::uint64_t node_budget) {
  if (clause.head.predicate != example.predicate || clause.head.arity() != example.arity()) return false;
  Solver solver(clause.body, source, node_budget);
  for (std::size_t i = 0; i < example.arity(); ++i) {
    Term h = clause.head.args[i];
    if (h.is_constant()) {
      if (h.id != example.args[i].id) return false;
      continue;
    }
    solver.pin(h.id, example.args[i].id);
  }
  return solver.solve() == SolveStatus::Satisfied;
}

std::vector<Atom> covers(const TableSource& source, const OrderedClause& clause, const std::vector<Atom>& examples) {
  std::vector<Atom> out;
  for (const auto& e : examples)
    if (entails(clause, source, e)) out.push_back(e);
  return out;
}

std::size_t count_covered(const TableSource& source, const OrderedClause& clause, const std::vector<Atom>& examples) {
  std::size_t n = 0;
  for (const auto& e : examples) n += entails(clause, source, e) ? 1 : 0;
  return n;
}

std::vector<Atom> covers(const TableSource& source, const HornDefinition& def, const std::vector<Atom>& examples) {
  std::vector<Atom> out;
  if (is_recursive(def)) {
    auto all = evaluate_definition(def, source);
    for (const auto& e : examples)
      if (all.count(e)) out.push_back(e);
    return out;
  }
  for (const auto& e : examples)
    for (const auto& c : def.clauses)
      if (entails(c, source, e)) {
        out.push_back(e);
        break;
      }
  return out;
}

}  // namespace schemaind
