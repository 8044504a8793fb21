#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"
#include "schemaind/schema.hpp"
#include "schemaind/transform.hpp"

namespace schemaind::chase {

inline constexpr std::uint64_t kDefaultBudget = 2'000'000;

// Adds, for every body literal and every equality IND touching its relation,
// the partner literal (fresh variables outside the IND positions) unless one
// with the same IND-position terms exists. Partners go right after the literal
// that triggered them. Throws InternalError if the round guard trips.
OrderedClause chase_clause(const OrderedClause& clause, const Schema& schema);

struct FullChase {
  OrderedClause clause;
  bool consistent = true;  // false when an FD forces two distinct constants together
};

// chase_clause interleaved with FD steps that merge terms, to a fixpoint.
// Duplicate body literals are dropped. Merges keep constants over variables,
// head variables over body variables, and lower ids over higher ones.
FullChase full_chase(const OrderedClause& clause, const Schema& schema);

enum class Outcome { Yes, No, Unknown };

struct Subsumption {
  Outcome outcome = Outcome::No;
  Substitution theta;  // set when outcome == Yes
  explicit operator bool() const { return outcome == Outcome::Yes; }
};

// θ with head(c)θ = head(d) and body(c)θ ⊆ body(d). Unknown when the search
// exceeds `budget` nodes (0 = unlimited).
Subsumption theta_subsumes(const OrderedClause& c, const OrderedClause& d, std::uint64_t budget = kDefaultBudget);

enum class Verdict { Equivalent, NotEquivalent, Unknown };

struct EquivalenceVerdict {
  Verdict verdict = Verdict::NotEquivalent;
  std::optional<Substitution> forward;   // c into chase(d)
  std::optional<Substitution> backward;  // d into chase(c)
  std::string diagnostics;
  bool equivalent() const { return verdict == Verdict::Equivalent; }
};

// Same-schema equivalence: mutual subsumption after the full chase.
EquivalenceVerdict clause_equivalent(const OrderedClause& c, const OrderedClause& d, const Schema& schema,
                                     std::uint64_t budget = kDefaultBudget);

// c over tau's source schema against d over its target: c is mapped with δ_τ first.
EquivalenceVerdict clause_equivalent(const OrderedClause& c, const OrderedClause& d,
                                     const transform::Transformation& tau, std::uint64_t budget = kDefaultBudget);

// Literal groups: literals linked (transitively) by equal terms on the two
// sides of an equality IND. Groups are listed by first position; members keep
// body order. Without equality INDs every literal is its own group.
std::vector<std::vector<std::size_t>> literal_groups(const OrderedClause& clause, const Schema& schema);

// Flags the units (groups of literal indices) that are head-connected. With
// `ordered`, a unit may only connect through units starting earlier in the body.
std::vector<bool> head_connected(const OrderedClause& clause, const std::vector<std::vector<std::size_t>>& units,
                                 bool ordered);

// Drops every unit that is not head-connected (unordered connectivity).
OrderedClause prune_unconnected(const OrderedClause& clause, const std::vector<std::vector<std::size_t>>& units,
                                bool ordered = false);

// Negative reduction. Visits `units` in the given order and removes a unit,
// together with whatever becomes non-head-connected, whenever the result still
// covers at most `max_negatives` negatives and stays range restricted.
// Throws ConstraintViolation if the input already covers too many negatives.
OrderedClause reduce_negative(const OrderedClause& clause, const TableSource& source, const std::vector<Atom>& negatives,
                              const std::vector<std::vector<std::size_t>>& units, std::size_t max_negatives = 0);

// Literal-level units in body order.
std::vector<std::vector<std::size_t>> singleton_units(const OrderedClause& clause);

struct MinimizedDefinition {
  HornDefinition definition;
  bool complete = true;  // false when a subsumption check ran out of budget
};

// Removes body literals implied by the rest under the schema constraints (last
// literal first), then drops clauses subsumed by another clause.
OrderedClause minimize_clause(const OrderedClause& clause, const Schema& schema, bool* complete = nullptr,
                              std::uint64_t budget = kDefaultBudget);
MinimizedDefinition minimize_definition(const HornDefinition& def, const Schema& schema,
                                        std::uint64_t budget = kDefaultBudget);

// Clause-wise equivalence of two definitions over one schema: every clause of
// each side is subsumed (after chase) by some clause of the other.
Verdict definitions_equivalent(const HornDefinition& a, const HornDefinition& b, const Schema& schema,
                               std::uint64_t budget = kDefaultBudget);

}  // namespace schemaind::chase
