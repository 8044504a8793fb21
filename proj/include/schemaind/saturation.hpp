#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"

namespace schemaind::saturation {

struct BottomClause {
  OrderedClause clause;
  std::vector<std::pair<SymbolId, Tuple>> provenance;  // source tuple of each body literal
  std::map<SymbolId, VarId> varmap;                    // constant -> variable
  std::map<VarId, int> depth;                          // d(X)

  // Ground instance of the clause under the inverse varmap.
  OrderedClause ground() const;
};

struct RankedClass {
  std::vector<std::string> relations;  // declaration order
  std::string key;                     // serialized natural join
};

// For every relation (schema order) and position, the name shared by all
// positions linked to it through equality INDs (the smallest such name).
std::vector<std::vector<std::string>> class_attribute_names(const Schema& schema);

// Inclusion classes ranked by the serialization of their natural join
// (attribute names are resolved through the equality INDs, so corresponding
// classes of I and τ(I) get identical keys). Ties fall back to the set of class
// attribute names, then to relation names.
std::vector<RankedClass> order_inclusion_classes(const Instance& instance);

// Precomputed chase groups (a tuple plus its transitive equality-IND partners)
// for one instance. Construction is O(|I|); queries are read-only, so one
// Saturator may serve several threads.
class Saturator {
 public:
  explicit Saturator(const Instance& instance);

  const Instance& instance() const { return instance_; }
  const std::vector<RankedClass>& classes() const { return classes_; }
  // Rank of the inclusion class containing `relation` (SIZE_MAX if unknown).
  std::size_t class_rank(SymbolId relation) const;

  // Chase-enforced bottom clause; stops at the end of the first iteration after
  // which the clause has at least `maxvars` distinct variables.
  BottomClause bottom_maxvars(const Atom& example, std::size_t maxvars) const;

  // Ground version (body literals keep their constants); `max_constants`
  // plays the role of maxvars.
  OrderedClause ground(const Atom& example, std::size_t max_constants) const;

  // Classic depth-bounded construction: relations in declaration order,
  // tuples in insertion order, no chase.
  BottomClause bottom_depth(const Atom& example, int max_depth) const;

 private:
  struct Member {
    std::size_t relation;  // schema index
    std::size_t row;
  };
  struct Group {
    std::size_t rank;
    std::string key;
    std::vector<Member> members;
  };

  template <class Emit>
  void expand(const Atom& example, std::size_t bound, bool count_constants, Emit&& emit) const;

  const Instance& instance_;
  std::vector<RankedClass> classes_;
  std::vector<std::size_t> relation_rank_;  // by schema index
  std::unordered_map<SymbolId, std::size_t> rank_by_symbol_;
  std::vector<Group> groups_;  // sorted by (rank, key)
  std::unordered_map<Value, std::vector<std::size_t>> groups_by_constant_;
};

BottomClause bottom_clause_depth(const Atom& example, const Instance& instance, int max_depth);
BottomClause bottom_clause_maxvars(const Atom& example, const Instance& instance, std::size_t maxvars);
OrderedClause ground_saturation(const Atom& example, const Instance& instance, std::size_t max_constants);

}  // namespace schemaind::saturation
