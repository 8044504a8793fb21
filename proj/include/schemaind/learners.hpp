#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"
#include "schemaind/saturation.hpp"
#include "schemaind/schema.hpp"

namespace schemaind::learners {

enum class Algorithm { Foil, ModifiedFoil, Golem, ProGolem };
enum class BottomMode { MaxVars, Depth };

Algorithm parse_algorithm(std::string_view name);  // foil | mfoil | golem | progolem
std::string to_string(Algorithm algorithm);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::Golem;
  std::size_t clause_length = 4;          // FOIL: body literals
  std::size_t max_inclusion_classes = 3;  // modified FOIL: class atoms
  std::size_t beam_width = 2;             // ProGolem
  std::size_t maxvars = 10;               // maxvars bottoms and Golem's ground saturations
  int max_depth = 2;                      // depth bottoms
  BottomMode bottom = BottomMode::MaxVars;
  double noise = 0.0;  // fraction of the negatives a clause may cover
  std::size_t sample_size = 10;  // ProGolem: positives tried per round
  std::uint64_t seed = 1;
  std::size_t pair_bound = 12;   // Golem: all pairs up to this many positives,
  std::size_t pair_sample = 40;  // otherwise a seeded sample of this many

  void validate() const;  // ConfigError
  std::size_t allowed_negatives(std::size_t negatives) const;
};

// Refinement graph node. `classes` counts class atoms (modified FOIL) or
// literals (FOIL); `parent` indexes the node list of an enumeration (-1 at the root).
struct RefinementNode {
  OrderedClause clause;
  long score = 0;
  std::size_t classes = 0;
  long parent = -1;
};

// An inclusion class added as one move: every member relation, with all
// positions of one class attribute sharing a variable.
struct ClassAtom {
  std::vector<std::string> relations;           // declaration order
  std::vector<std::string> attributes;          // class attribute names, sorted
  std::vector<std::vector<std::size_t>> slots;  // per relation and position: index into attributes
};

// Class atoms in declaration order of their first relation.
std::vector<ClassAtom> class_atoms(const Schema& schema);
// Class atoms ordered by the content rank of their inclusion class.
std::vector<ClassAtom> class_atoms(const saturation::Saturator& saturator);

OrderedClause most_general_clause(SymbolId target, std::size_t arity);

// FOIL refinements: add one literal (while the body is shorter than
// clause_length), or unify two variables. Deduplicated up to renaming, in
// generation order.
std::vector<OrderedClause> refine(const OrderedClause& clause, const Schema& schema, const LearnerConfig& config);

// Modified FOIL refinements of a clause holding `classes_used` class atoms.
std::vector<RefinementNode> refine_modified(const RefinementNode& node, const std::vector<ClassAtom>& atoms,
                                            const LearnerConfig& config);

// Every clause reachable from the most general clause within the length
// bound (FOIL) or class bound (modified FOIL), one per renaming class.
std::vector<RefinementNode> enumerate_hypotheses(const Schema& schema, SymbolId target, std::size_t arity,
                                                 const LearnerConfig& config, std::size_t limit = 2'000'000);

// Plotkin lgg with one shared table of term pairs. Identical constants stay
// unless they sit in a head pair and `variabilize_head` is set. Body literals
// follow the first clause's order.
std::optional<OrderedClause> lgg(const OrderedClause& c1, const OrderedClause& c2, bool variabilize_head = false);

// lgg of the two ground saturations (bounded by config.maxvars constants).
std::optional<OrderedClause> rlgg(const Atom& e1, const Atom& e2, const saturation::Saturator& saturator,
                                  const LearnerConfig& config);

// Index of the first body literal whose prefix has no valuation with the head
// bound to `example`; nullopt when the whole body is satisfiable.
std::optional<std::size_t> find_blocking_atom(const OrderedClause& clause, const Atom& example,
                                              const TableSource& source);

// Drops blocking atoms and the non-head-connected remainder until `example`
// is covered. With a schema, the unit is the literal group of the blocking atom.
OrderedClause armg(const OrderedClause& bottom, const Atom& example, const TableSource& source,
                   const Schema* group_schema = nullptr);

std::optional<OrderedClause> foil_learn_clause(const Instance& instance, SymbolId target, std::size_t arity,
                                               const std::vector<Atom>& positives, const std::vector<Atom>& negatives,
                                               const LearnerConfig& config);
std::optional<OrderedClause> modified_foil_learn_clause(const saturation::Saturator& saturator, SymbolId target,
                                                        std::size_t arity, const std::vector<Atom>& positives,
                                                        const std::vector<Atom>& negatives,
                                                        const LearnerConfig& config);
std::optional<OrderedClause> golem_learn_clause(const saturation::Saturator& saturator,
                                                const std::vector<Atom>& positives, const std::vector<Atom>& negatives,
                                                const LearnerConfig& config);
std::optional<OrderedClause> progolem_learn_clause(const saturation::Saturator& saturator,
                                                   const std::vector<Atom>& positives,
                                                   const std::vector<Atom>& negatives, const LearnerConfig& config);

struct LearnResult {
  HornDefinition definition;
  bool complete = true;          // false when the loop stopped with positives left
  std::vector<Atom> uncovered;   // positives no clause covers
};

// Covering loop around the configured LearnClause.
LearnResult learn(const Instance& instance, const ExampleSet& examples, const LearnerConfig& config);

}  // namespace schemaind::learners
