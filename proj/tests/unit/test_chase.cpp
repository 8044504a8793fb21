#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "schemaind/chase.hpp"
#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"

using namespace schemaind;
using namespace schemaind::chase;
using fixtures::clause;

TEST(ChaseClause, AddsInclusionClassPartners) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  auto got = chase_clause(clause("t(X) :- student(X)."), *schema);
  EXPECT_EQ(canonical_key(got), canonical_key(clause("t(X) :- student(X), inPhase(X,A), yearsInProgram(X,B).")));
}

TEST(ChaseClause, IsIdempotentAndIgnoresSchemasWithoutEqualityInds) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  auto once = chase_clause(clause("t(X,Y) :- ta(C,X,T), hasPosition(Y,P)."), *schema);
  EXPECT_EQ(chase_clause(once, *schema), once);
  auto plain = parse_schema("relation r(a,b)\nrelation s(b)\nind r[b] <= s[b]");
  auto c = clause("t(X) :- r(X,Y).");
  EXPECT_EQ(chase_clause(c, plain), c);
}

TEST(ChaseClause, PreservesEvaluationOnRandomInstances) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  std::mt19937_64 rng(7);
  auto c = clause("t(X,Y) :- inPhase(X,P), taughtBy(C,Y,T), ta(C,X,T).");
  auto chased = chase_clause(c, *schema);
  for (int i = 0; i < 20; ++i) {
    auto inst = transform::random_instance(schema, rng, 25, 12);
    EXPECT_EQ(evaluate_clause(c, inst), evaluate_clause(chased, inst));
  }
}

TEST(ThetaSubsumes, FindsWitness) {
  auto s = theta_subsumes(clause("t(X) :- r(X,Y)."), clause("t(A) :- r(A,B), s(B)."));
  ASSERT_TRUE(s);
  // Variables are numbered by first occurrence: X=1,Y=2 and A=1,B=2.
  EXPECT_EQ(s.theta.at(1), Term::variable(1));
  EXPECT_EQ(s.theta.at(2), Term::variable(2));
}

TEST(ThetaSubsumes, ReflexiveAndFunctional) {
  auto c = clause("t(X) :- r(X,Y), s(Y,Z), r(Z,X).");
  EXPECT_TRUE(theta_subsumes(c, c));
  EXPECT_FALSE(theta_subsumes(clause("t(X) :- r(X,X)."), clause("t(A) :- r(A,B).")));
  EXPECT_FALSE(theta_subsumes(clause("t(X) :- r(X,X)."), clause("u(A) :- r(A,A).")));
}

TEST(ThetaSubsumes, BudgetExhaustionIsUnknown) {
  // A 6-clique pattern against a 5-clique: unsatisfiable and needs search.
  std::string pat = "t(A) :- ", tgt = "t(V1) :- ";
  const char* vs[] = {"A", "B", "C", "D", "E", "F"};
  bool first = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) {
        pat += std::string(first ? "" : ", ") + "e(" + vs[i] + "," + vs[j] + ")";
        first = false;
      }
  first = true;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (i != j) {
        tgt += std::string(first ? "" : ", ") + "e(V" + std::to_string(i) + ",V" + std::to_string(j) + ")";
        first = false;
      }
  auto c = parse_clause(pat + "."), d = parse_clause(tgt + ".");
  EXPECT_EQ(theta_subsumes(c, d, 5).outcome, Outcome::Unknown);
  EXPECT_EQ(theta_subsumes(c, d, 0).outcome, Outcome::No);
}

TEST(ClauseEquivalent, IdentityAndOneWaySubsumption) {
  auto schema = parse_schema("relation publication(title,person)\nrelation R(a,b)");
  auto c = clause("collaborated(X,Y) :- publication(P,X), publication(P,Y).");
  auto v = clause_equivalent(c, c, schema);
  EXPECT_TRUE(v.equivalent());
  EXPECT_TRUE(v.forward && v.backward);
  EXPECT_EQ(clause_equivalent(clause("t(X) :- R(X,X)."), clause("t(X) :- R(X,Y)."), schema).verdict,
            Verdict::NotEquivalent);
}

TEST(ClauseEquivalent, AcrossCompositionWithTransformation) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  auto orig = clause("advisedBy(X,Y) :- student(X), professor(Y), publication(P,X), publication(P,Y).");
  auto alt = clause("advisedBy(X,Y) :- student(X,A,B), professor(Y,C), publication(P,X), publication(P,Y).");
  EXPECT_TRUE(clause_equivalent(orig, alt, tau).equivalent());
  auto weaker = clause("advisedBy(X,Y) :- student(X,A,B), publication(P,X), publication(P,Y).");
  EXPECT_FALSE(clause_equivalent(orig, weaker, tau).equivalent());
}

TEST(ClauseEquivalent, FdMergeNeededForComposedImage) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  // inPhase and yearsInProgram unfold to two student literals sharing the key.
  auto orig = clause("t(X) :- inPhase(X,P), yearsInProgram(X,Y).");
  auto alt = clause("t(X) :- student(X,P,Y).");
  EXPECT_TRUE(clause_equivalent(orig, alt, tau).equivalent());
}

TEST(FullChase, DetectsConstantClash) {
  auto schema = parse_schema("relation r(a,b)\nfd r: a -> b");
  EXPECT_FALSE(full_chase(clause("t(X) :- r(X,c1), r(X,c2)."), schema).consistent);
  auto merged = full_chase(clause("t(X,Y) :- r(X,Y), r(X,Z)."), schema);
  EXPECT_EQ(canonical_key(merged.clause), canonical_key(clause("t(X,Y) :- r(X,Y).")));
}

TEST(Minimize, RemovesHomomorphicDuplicate) {
  auto schema = parse_schema("relation R(a,b)");
  EXPECT_EQ(canonical_key(minimize_clause(clause("t(X) :- R(X,Y), R(X,Z)."), schema)),
            canonical_key(clause("t(X) :- R(X,Y).")));
  auto minimal = clause("t(X) :- R(X,Y), R(Y,X).");
  EXPECT_EQ(canonical_key(minimize_clause(minimal, schema)), canonical_key(minimal));
}

TEST(Minimize, DropsSubsumedClause) {
  auto schema = parse_schema("relation R(a,b)\nrelation S(a)");
  HornDefinition def{{clause("t(X) :- R(X,Y)."), clause("t(X) :- R(X,Y), S(Y).")}};
  auto out = minimize_definition(def, schema);
  ASSERT_EQ(out.definition.size(), 1u);
  EXPECT_EQ(canonical_key(out.definition.clauses[0]), canonical_key(clause("t(X) :- R(X,Y).")));
  EXPECT_TRUE(out.complete);
}

TEST(Minimize, UsesSchemaConstraints) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  auto got = minimize_clause(clause("t(X) :- student(X), inPhase(X,P)."), *schema);
  // Both literals are implied by each other through the class INDs; the chased
  // core keeps one literal of the class.
  EXPECT_EQ(got.body.size(), 1u);
}

TEST(LiteralGroups, FollowEqualityInds) {
  auto schema = fixtures::load_schema("uwcse/original.schema");
  auto c = clause("t(X,Y) :- student(X), professor(Y), inPhase(X,P), hasPosition(Y,Q), inPhase(Y,R).");
  auto groups = literal_groups(c, *schema);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(groups[1], (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(groups[2], (std::vector<std::size_t>{4}));
}

TEST(HeadConnected, OrderedVersusUnordered) {
  auto c = clause("t(X) :- r(Y,Z), s(X,Y).");
  auto units = singleton_units(c);
  EXPECT_EQ(head_connected(c, units, false), (std::vector<bool>{true, true}));
  EXPECT_EQ(head_connected(c, units, true), (std::vector<bool>{false, true}));
}

TEST(ReduceNegative, KeepsNeededLiteralsAndDropsDuplicates) {
  auto inst = fixtures::university();
  auto c = clause("collaborated(X,Y) :- publication(P,X), publication(P,Y), publication(P,Y).");
  std::vector<Atom> negatives{fixtures::ground("collaborated(John,Mary)")};
  auto got = reduce_negative(c, inst, negatives, singleton_units(c));
  EXPECT_EQ(canonical_key(got), canonical_key(clause("collaborated(X,Y) :- publication(P,X), publication(P,Y).")));
  EXPECT_THROW(reduce_negative(clause("collaborated(X,Y) :- professor(X), professor(Y)."), inst, negatives,
                               singleton_units(c)),
               ConstraintViolation);
}
