#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "schemaind/harness.hpp"

using namespace schemaind;
using namespace schemaind::harness;

namespace {

ExampleSet examples_of(const char* target, std::vector<const char*> pos, std::vector<const char*> neg) {
  ExampleSet e;
  e.target = intern(target);
  for (auto p : pos) e.positives.push_back(fixtures::ground(p));
  for (auto n : neg) e.negatives.push_back(fixtures::ground(n));
  e.arity = e.positives.empty() ? 0 : e.positives.front().arity();
  return e;
}

struct Counterexample {
  transform::Transformation tau = fixtures::load_transformation("counterexample/r.schema", "counterexample/r_to_s.spec");
  Instance instance = parse_facts(read_file(fixtures::data_path("counterexample/r.facts")), tau.source_ptr());
  ExampleSet examples = parse_examples(read_file(fixtures::data_path("counterexample/t.examples")));
};

}  // namespace

TEST(Metrics, PerfectPrediction) {
  auto e = examples_of("t", {"t(a)", "t(b)"}, {"t(c)"});
  auto m = metrics(e.positives, e);
  ASSERT_TRUE(m.precision);
  EXPECT_DOUBLE_EQ(*m.precision, 1.0);
  EXPECT_DOUBLE_EQ(m.recall, 1.0);
}

TEST(Metrics, NothingPredictedLeavesPrecisionUndefined) {
  auto e = examples_of("t", {"t(a)"}, {"t(c)"});
  auto m = metrics({}, e);
  EXPECT_FALSE(m.precision);
  EXPECT_DOUBLE_EQ(m.recall, 0.0);
  EXPECT_EQ(to_json(m)["precision"], "undefined");
}

TEST(Metrics, TwoThirds) {
  auto e = examples_of("t", {"t(a)", "t(b)", "t(c)"}, {"t(d)"});
  auto m = metrics({fixtures::ground("t(a)"), fixtures::ground("t(b)"), fixtures::ground("t(d)"),
                    fixtures::ground("t(zz)")},
                   e);
  EXPECT_EQ(m.true_positives, 2u);
  EXPECT_EQ(m.false_positives, 1u);
  EXPECT_EQ(m.false_negatives, 1u);
  EXPECT_DOUBLE_EQ(*m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.recall, 2.0 / 3.0);
}

TEST(Negatives, TwiceThePositives) {
  UwcseParams p;
  p.students = 46;
  auto data = synthetic_uwcse(p);
  Instance inst(fixtures::load_schema("uwcse/original.schema"), data.facts);
  auto s = sample_negatives(inst, data.positives, 2.0, 5);
  EXPECT_EQ(s.negatives.size(), 92u);
  EXPECT_FALSE(s.exhausted);
  std::set<Atom> pos(data.positives.begin(), data.positives.end());
  std::set<Atom> neg(s.negatives.begin(), s.negatives.end());
  EXPECT_EQ(neg.size(), 92u);
  for (const auto& n : s.negatives) {
    EXPECT_FALSE(pos.count(n));
    EXPECT_EQ(symbol_name(n.args[0].id).rfind("stud", 0), 0u);
    EXPECT_EQ(symbol_name(n.args[1].id).rfind("prof", 0), 0u);
  }
  EXPECT_EQ(sample_negatives(inst, data.positives, 2.0, 5).negatives, s.negatives);
  EXPECT_NE(sample_negatives(inst, data.positives, 2.0, 6).negatives, s.negatives);
}

TEST(Negatives, ExhaustedPoolIsFlagged) {
  auto inst = fixtures::university();
  std::vector<Atom> pos{fixtures::ground("advisedBy(Jake,John)"), fixtures::ground("advisedBy(Sara,Mary)")};
  auto s = sample_negatives(inst, pos, 100.0, 1);
  EXPECT_TRUE(s.exhausted);
  EXPECT_EQ(s.pool_size, 2u);  // {Jake,Sara} x {John,Mary} minus the positives
  EXPECT_EQ(s.negatives.size(), 2u);
}

TEST(RandomDefinitions, ConstraintsHoldOverManySeeds) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  std::size_t max_arity = 0;
  for (const auto& r : schema->relations()) max_arity = std::max(max_arity, r.arity());
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(seed);
    std::size_t n_clauses = 1 + seed % 5, n_vars = 4 + seed % 5;
    auto def = generate_random_definition(*schema, n_clauses, n_vars, rng);
    ASSERT_EQ(def.size(), n_clauses);
    for (const auto& c : def.clauses) {
      EXPECT_EQ(variables_of(c).size(), n_vars) << to_string(c);
      EXPECT_GE(c.head.arity(), 1u);
      EXPECT_LE(c.head.arity(), max_arity);
      EXPECT_TRUE(range_restricted(c)) << to_string(c);
      EXPECT_TRUE(constants_of(c.head).empty());
      for (const auto& l : c.body) {
        EXPECT_TRUE(constants_of(l).empty());
        EXPECT_TRUE(l.predicate == c.head.predicate || schema->contains(l.name())) << to_string(c);
      }
    }
  }
}

TEST(RandomDefinitions, SeedIsReproducible) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  std::mt19937_64 a(42), b(42);
  EXPECT_EQ(to_string(generate_random_definition(*schema, 1, 4, a)),
            to_string(generate_random_definition(*schema, 1, 4, b)));
}

TEST(RandomDefinitions, OneVariableIsShared) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto def = generate_random_definition(*schema, 1, 1, rng);
    EXPECT_EQ(variables_of(def.clauses[0]).size(), 1u);
    EXPECT_EQ(def.clauses[0].head.arity(), 1u);
  }
}

TEST(Suite, SmallRunOverUwcse) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  SuiteParams p;
  p.max_clauses = 2;
  p.max_vars = 5;
  p.per_setting = 2;
  auto r = cross_schema_definition_suite(tau, p);
  EXPECT_EQ(r.rows.size(), 8u);
  EXPECT_EQ(r.evaluation_failures, 0u);
  EXPECT_EQ(r.equivalence_failures, 0u);
  EXPECT_EQ(r.unknown, 0u);
}

TEST(Independence, IdentityIsIndependentForEveryLearner) {
  auto inst = fixtures::university();
  transform::Transformation identity(fixtures::university_schema());
  auto e = examples_of("collaborated", {"collaborated(John,Jake)", "collaborated(Mary,Sara)"},
                       {"collaborated(John,Sara)", "collaborated(Mary,Jake)"});
  for (auto alg : {learners::Algorithm::Foil, learners::Algorithm::ModifiedFoil, learners::Algorithm::Golem,
                   learners::Algorithm::ProGolem}) {
    learners::LearnerConfig cfg;
    cfg.algorithm = alg;
    auto r = check_schema_independence(cfg, inst, identity, e);
    EXPECT_EQ(r.overall, Overall::Independent) << learners::to_string(alg) << ' ' << r.witness;
    // Greedy FOIL finds no useful first literal on this database; the others learn something.
    if (alg != learners::Algorithm::Foil) EXPECT_FALSE(r.source_definition.empty()) << learners::to_string(alg);
  }
}

TEST(Independence, FoilCounterexampleIsDependent) {
  Counterexample ce;
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::Foil;
  cfg.clause_length = 2;
  auto r = check_schema_independence(cfg, ce.instance, ce.tau, ce.examples);
  EXPECT_EQ(r.overall, Overall::Dependent);
  EXPECT_FALSE(r.witness.empty());
  ASSERT_EQ(r.source_definition.size(), 1u);
  EXPECT_EQ(to_string(r.source_definition.clauses[0]), "t(V1,V2) :- R1(V1,V3,V4), R2(V2,V5,V4).");
}

TEST(Independence, ModifiedFoilCounterexampleIsIndependent) {
  Counterexample ce;
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::ModifiedFoil;
  cfg.clause_length = 2;
  cfg.max_inclusion_classes = 2;
  auto r = check_schema_independence(cfg, ce.instance, ce.tau, ce.examples);
  EXPECT_EQ(r.overall, Overall::Independent) << r.witness;
  EXPECT_EQ(r.source_definition.size(), 1u);
}

TEST(Spaces, FoilImageIsMissing) {
  Counterexample ce;
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::Foil;
  cfg.clause_length = 2;
  auto target = fixtures::clause("t(X,Y) :- R1(X,Z,W), R2(Y,U,W).");
  auto s_space = learners::enumerate_hypotheses(ce.tau.target(), intern("t"), 2, cfg);
  auto r_space = learners::enumerate_hypotheses(ce.tau.source(), intern("t"), 2, cfg);
  bool unknown = false;
  EXPECT_TRUE(find_equivalent(r_space, target, ce.tau.source(), &unknown));
  auto image = transform::map_clause(ce.tau, target, transform::Direction::Forward);
  EXPECT_FALSE(find_equivalent(s_space, image, ce.tau.target(), &unknown));
  EXPECT_FALSE(unknown);
}

TEST(Spaces, ModifiedFoilOneClassIsBijective) {
  Counterexample ce;
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::ModifiedFoil;
  cfg.max_inclusion_classes = 1;
  auto cmp = compare_hypothesis_spaces(ce.tau, intern("t"), 2, cfg);
  EXPECT_EQ(cmp.source_size, 106u);
  EXPECT_EQ(cmp.target_size, 106u);
  EXPECT_TRUE(cmp.bijective());
}

TEST(Experiment, FiveFoldsOnSyntheticData) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  Instance inst = parse_facts(read_file(fixtures::data_path("uwcse/original.facts")), schema);
  auto examples = parse_examples(read_file(fixtures::data_path("uwcse/advisedBy.examples")));
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::ProGolem;
  auto r = run_experiment(inst, examples, cfg, 5, 1);
  ASSERT_EQ(r.fold_results.size(), 5u);
  std::size_t test_pos = 0;
  for (const auto& f : r.fold_results) {
    test_pos += f.test_positives;
    EXPECT_EQ(f.test_positives + f.train_positives, examples.positives.size());
  }
  EXPECT_EQ(test_pos, examples.positives.size());
  auto again = run_experiment(inst, examples, cfg, 5, 1);
  EXPECT_EQ(to_json(r), to_json(again));
  EXPECT_EQ(experiment_csv(r).substr(0, 5), "fold,");
}

TEST(Experiment, TwoPositivesTwoFolds) {
  auto inst = fixtures::university();
  auto e = examples_of("collaborated", {"collaborated(John,Jake)", "collaborated(Mary,Sara)"},
                       {"collaborated(John,Sara)", "collaborated(Mary,Jake)"});
  learners::LearnerConfig cfg;
  cfg.algorithm = learners::Algorithm::Golem;
  auto r = run_experiment(inst, e, cfg, 2, 3);
  ASSERT_EQ(r.fold_results.size(), 2u);
  for (const auto& f : r.fold_results) {
    EXPECT_EQ(f.test_positives, 1u);
    EXPECT_FALSE(f.skipped);
  }
}
