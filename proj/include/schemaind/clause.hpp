#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "schemaind/symbols.hpp"

namespace schemaind {

using VarId = std::uint32_t;

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  std::uint32_t id = 0;

  static Term variable(VarId v) { return {Kind::Variable, v}; }
  static Term constant(SymbolId c) { return {Kind::Constant, c}; }
  static Term constant(std::string_view text) { return constant(intern(text)); }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  SymbolId predicate = 0;
  std::vector<Term> args;

  Atom() = default;
  Atom(SymbolId pred, std::vector<Term> a) : predicate(pred), args(std::move(a)) {}
  Atom(std::string_view pred, std::vector<Term> a) : predicate(intern(pred)), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;
  const std::string& name() const { return symbol_name(predicate); }

  auto operator<=>(const Atom&) const = default;
};

// Head plus an ordered body; order and duplicates in the body are significant.
struct OrderedClause {
  Atom head;
  std::vector<Atom> body;

  bool operator==(const OrderedClause&) const = default;
};

using Clause = OrderedClause;

struct HornDefinition {
  std::vector<OrderedClause> clauses;

  bool empty() const { return clauses.empty(); }
  std::size_t size() const { return clauses.size(); }
};

struct ExampleSet {
  SymbolId target = 0;
  std::size_t arity = 0;
  std::vector<Atom> positives;
  std::vector<Atom> negatives;
};

using Substitution = std::map<VarId, Term>;
using AtomSet = std::set<Atom>;

// Variable bookkeeping.
std::set<VarId> variables_of(const Atom& atom);
std::set<VarId> variables_of(const OrderedClause& clause);
std::set<VarId> body_variables(const OrderedClause& clause);
VarId max_variable(const OrderedClause& clause);  // 0 when the clause has no variable
std::set<SymbolId> constants_of(const Atom& atom);

Term apply(const Substitution& theta, Term t);
Atom apply(const Substitution& theta, const Atom& atom);
OrderedClause apply(const Substitution& theta, const OrderedClause& clause);

// Renames variables to 1..n in order of first occurrence (head, then body).
OrderedClause canonical(const OrderedClause& clause);
std::string canonical_key(const OrderedClause& clause);

// True when every head variable occurs in the body.
bool range_restricted(const OrderedClause& clause);

// Body with only the literals whose flag is set.
OrderedClause keep_literals(const OrderedClause& clause, const std::vector<bool>& keep);

// Text rendering. Variables print as V<id>; constants that do not look like
// lowercase identifiers or numbers are single-quoted.
std::string to_string(Term t);
std::string to_string(const Atom& atom);
std::string to_string(const OrderedClause& clause);
std::string to_string(const HornDefinition& def);
std::string fact_string(const Atom& atom);  // ground atom with a trailing period

}  // namespace schemaind
