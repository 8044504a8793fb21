#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"
#include "schemaind/schema.hpp"

namespace schemaind::transform {

enum class Direction { Forward, Inverse };

struct Component {
  std::string name;
  std::vector<std::string> attributes;
};

// `decompose R into S1(A,B); S2(B,C)`
struct DecomposeStep {
  std::string relation;
  std::vector<Component> components;
};

// `compose S1,S2 into R`
struct ComposeStep {
  std::vector<std::string> relations;
  std::string target;
};

using Step = std::variant<DecomposeStep, ComposeStep>;

struct TransformationSpec {
  std::vector<Step> steps;
};

TransformationSpec parse_spec(std::string_view text);
std::string to_text(const TransformationSpec& spec);

enum class RelationKind { Identity, Decomposed, Composed };

// One (de)composition between two schemas. `forward` holds one clause per
// target relation written over the source schema; `inverse` one clause per
// source relation written over the target schema.
struct Stage {
  std::shared_ptr<const Schema> source;
  std::shared_ptr<const Schema> target;
  std::vector<OrderedClause> forward;
  std::vector<OrderedClause> inverse;
  std::vector<RelationKind> kinds;  // per target relation
  Step step;
};

class Transformation {
 public:
  // Identity over `schema`.
  explicit Transformation(std::shared_ptr<const Schema> schema);
  Transformation(std::shared_ptr<const Schema> source, std::vector<Stage> stages);

  const Schema& source() const { return *source_; }
  const Schema& target() const { return stages_.empty() ? *source_ : *stages_.back().target; }
  std::shared_ptr<const Schema> source_ptr() const { return source_; }
  std::shared_ptr<const Schema> target_ptr() const { return stages_.empty() ? source_ : stages_.back().target; }
  const std::vector<Stage>& stages() const { return stages_; }
  bool is_identity() const { return stages_.empty(); }

  Transformation inverse() const;
  // this followed by `next`; next.source() must equal this->target().
  Transformation then(const Transformation& next) const;
  // The spec steps that rebuild this transformation from its source schema.
  TransformationSpec spec() const;

 private:
  std::shared_ptr<const Schema> source_;
  std::vector<Stage> stages_;
};

// Vertical decomposition of one relation. Throws ConfigError when the spec
// is malformed, when the shared attributes are not a key of every component,
// or when an FD/IND cannot be carried over to a single component.
Stage decompose(std::shared_ptr<const Schema> schema, const DecomposeStep& step);

// Natural join of a whole inclusion class into one relation.
Stage compose(std::shared_ptr<const Schema> schema, const ComposeStep& step);

Transformation build(std::shared_ptr<const Schema> schema, const TransformationSpec& spec);

// Result is validated against the destination schema (ConstraintViolation otherwise).
Instance apply_transformation(const Transformation& tau, const Instance& instance, Direction direction);

// δ_τ: unfolds every body literal through the opposite program. Literals over
// predicates outside the source schema (e.g. a recursive head) are kept.
OrderedClause map_clause(const Transformation& tau, const OrderedClause& clause, Direction direction);
HornDefinition map_definition(const Transformation& tau, const HornDefinition& def, Direction direction);

// Random constraint-satisfying instance: values drawn from per-attribute-name
// pools, then tuples violating an FD or IND are deleted until none remain.
Instance random_instance(std::shared_ptr<const Schema> schema, std::mt19937_64& rng, std::size_t tuples_per_relation,
                         std::size_t pool_size);

struct BijectionReport {
  bool passed = true;
  bool no_evidence = false;
  std::size_t instances_checked = 0;
  std::size_t total_tuples = 0;
  std::string counterexample;  // description of the first failure
};

// Round trip in both directions on the supplied instances plus `random_trials`
// random instances of the source schema (and as many of the target schema).
BijectionReport verify_bijection(const Transformation& tau, const std::vector<Instance>& instances,
                                 std::size_t random_trials, std::uint64_t seed);

}  // namespace schemaind::transform
