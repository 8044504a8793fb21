#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "schemaind/chase.hpp"
#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"
#include "schemaind/learners.hpp"
#include "schemaind/transform.hpp"

namespace schemaind::harness {

// ---- metrics and negatives ------------------------------------------------

struct Metrics {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::optional<double> precision;  // undefined when nothing is predicted
  double recall = 0.0;              // 0 when there are no positives
};

// Predicted atoms outside the example set are ignored.
Metrics metrics(const std::vector<Atom>& predicted, const ExampleSet& examples);
Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct NegativeSample {
  std::vector<Atom> negatives;
  std::size_t pool_size = 0;
  bool exhausted = false;  // fewer candidates than requested
};

// Closed-world negatives: per target position, the constants of the instance
// column holding most of the positives' constants at that position (smaller
// column on ties); candidates are the product minus the positives, sampled
// with a seeded shuffle.
NegativeSample sample_negatives(const Instance& instance, const std::vector<Atom>& positives, double ratio,
                                std::uint64_t seed);

// ---- cross-validation -----------------------------------------------------

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_positives = 0, train_negatives = 0, test_positives = 0, test_negatives = 0;
  bool skipped = false;   // no positives to train on
  bool complete = true;   // covering loop covered every training positive
  Metrics metrics;
  HornDefinition definition;
  double seconds = 0.0;
};

struct ExperimentReport {
  learners::LearnerConfig config;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<FoldResult> fold_results;
  Metrics pooled;  // counts summed over folds
  // Averages over non-skipped folds; folds with undefined precision are left out of that mean.
  std::optional<double> mean_precision;
  std::optional<double> mean_recall;
  HornDefinition full_definition;  // learned on all examples
  double seconds = 0.0;
};

// Stratified k-fold split (seeded), learner per fold in parallel, plus one run
// on all examples. folds == 1 skips cross-validation.
ExperimentReport run_experiment(const Instance& instance, const ExampleSet& examples,
                                const learners::LearnerConfig& config, std::size_t folds, std::uint64_t seed);

// ---- schema independence --------------------------------------------------

enum class Overall { Independent, Dependent, Unknown };
std::string to_string(Overall overall);

struct ClauseCheck {
  std::string source_clause;  // learned over the source schema
  std::string target_clause;  // learned over the target schema
  chase::Verdict forward = chase::Verdict::NotEquivalent;   // source clause mapped forward vs target clause
  chase::Verdict backward = chase::Verdict::NotEquivalent;  // target clause mapped back vs source clause
};

struct IndependenceReport {
  std::string learner;
  std::string transformation;
  HornDefinition source_definition;
  HornDefinition target_definition;
  std::vector<ClauseCheck> clauses;
  bool same_clause_count = true;
  bool covers_equal = true;
  Overall overall = Overall::Independent;
  std::string witness;  // first failing clause pair or coverage difference
};

// Runs the learner over I and tau(I) (in parallel) and compares the outputs.
IndependenceReport check_schema_independence(const learners::LearnerConfig& config, const Instance& instance,
                                             const transform::Transformation& tau, const ExampleSet& examples);

// Compares already learned definitions the same way.
IndependenceReport compare_definitions(const HornDefinition& source_def, const HornDefinition& target_def,
                                       const Instance& instance, const Instance& image,
                                       const transform::Transformation& tau, const ExampleSet& examples);

// ---- hypothesis spaces ----------------------------------------------------

struct SpaceComparison {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::size_t source_unmatched = 0;  // source clauses whose image has no equivalent in the target space
  std::size_t target_unmatched = 0;
  std::size_t unknown = 0;
  std::vector<std::string> examples;  // a few unmatched clauses
  bool bijective() const { return source_unmatched == 0 && target_unmatched == 0 && unknown == 0; }
};

// Enumerates the configured learner's spaces over tau's two schemas and
// matches them through the definition mapping in both directions.
SpaceComparison compare_hypothesis_spaces(const transform::Transformation& tau, SymbolId target, std::size_t arity,
                                          const learners::LearnerConfig& config);

// Index of a clause in `space` equivalent to `clause` (over `schema`), if any.
std::optional<std::size_t> find_equivalent(const std::vector<learners::RefinementNode>& space,
                                           const OrderedClause& clause, const Schema& schema, bool* unknown = nullptr);

// ---- random definitions ---------------------------------------------------

// Function- and constant-free definition of a fresh target predicate
// (`target`) with exactly `n_vars` variables per clause; bodies may use the
// target (recursion).
HornDefinition generate_random_definition(const Schema& schema, std::size_t n_clauses, std::size_t n_vars,
                                          std::mt19937_64& rng, const std::string& target = "target");

struct SuiteRow {
  std::size_t clauses = 0, vars = 0;
  std::string definition;
  bool evaluation_equal = true;     // same answers over I and tau(I) on every trial instance
  chase::Verdict equivalence = chase::Verdict::Equivalent;  // minimized images agree
  std::size_t body_before = 0, body_after = 0;  // total body literals of the mapped definition
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::size_t evaluation_failures = 0;
  std::size_t equivalence_failures = 0;
  std::size_t unknown = 0;
};

struct SuiteParams {
  std::size_t min_clauses = 1, max_clauses = 5;
  std::size_t min_vars = 4, max_vars = 8;
  std::size_t per_setting = 10;
  std::size_t instances = 2;            // random instances per definition
  std::size_t tuples_per_relation = 12;
  std::uint64_t seed = 1;
};

// For every generated definition h over tau's source: evaluate(h, I) against
// evaluate(delta(h), tau(I)) on random instances, then minimize delta(h) and
// check it against the minimized definition generated on the target side.
SuiteReport cross_schema_definition_suite(const transform::Transformation& tau, const SuiteParams& params);

// ---- synthetic UW-CSE -----------------------------------------------------

struct UwcseParams {
  std::size_t professors = 10;
  std::size_t students = 30;
  std::size_t courses = 12;
  std::size_t terms = 4;
  std::size_t extra_papers = 12;  // papers between professors or between students
  std::size_t cross_papers = 3;   // a student with a professor other than the advisor
  std::uint64_t seed = 7;
};

struct UwcseData {
  Instance::RawData facts;       // over the original (fully decomposed) schema
  std::vector<Atom> positives;   // advisedBy(stud,prof)
};

UwcseData synthetic_uwcse(const UwcseParams& params);

// ---- reports --------------------------------------------------------------

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const learners::LearnerConfig& c);
nlohmann::json to_json(const ExperimentReport& r);
nlohmann::json to_json(const IndependenceReport& r);
nlohmann::json to_json(const SuiteReport& r);
std::string experiment_csv(const ExperimentReport& r);
nlohmann::json meta_block();  // timestamp and host, kept apart from results

}  // namespace schemaind::harness
