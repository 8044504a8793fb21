#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"

namespace schemaind {

// Head instantiations of all satisfying valuations of the body (set semantics).
// Throws ConfigError when a head variable does not occur in the body. Body
// predicates without a table simply have no tuples.
std::set<Atom> evaluate_clause(const OrderedClause& clause, const TableSource& source);

// Same, but additionally rejects body predicates unknown to the instance's schema.
std::set<Atom> evaluate_clause(const OrderedClause& clause, const Instance& instance);

// Union over the clauses. Definitions whose head predicate occurs in a body are
// evaluated to a fixpoint (the head relation starts empty).
std::set<Atom> evaluate_definition(const HornDefinition& def, const TableSource& source);

// I ∧ clause ⊨ example, for a non-recursive clause.
bool entails(const OrderedClause& clause, const TableSource& source, const Atom& example,
             std::uint64_t node_budget = 0);

// Examples (in input order) entailed by the hypothesis.
std::vector<Atom> covers(const TableSource& source, const OrderedClause& clause, const std::vector<Atom>& examples);
std::vector<Atom> covers(const TableSource& source, const HornDefinition& def, const std::vector<Atom>& examples);

// Number of examples entailed (no copies).
std::size_t count_covered(const TableSource& source, const OrderedClause& clause, const std::vector<Atom>& examples);

bool is_recursive(const HornDefinition& def);

}  // namespace schemaind
