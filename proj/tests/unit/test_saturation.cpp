#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "schemaind/chase.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/saturation.hpp"

using namespace schemaind;
using namespace schemaind::saturation;
using fixtures::clause;
using fixtures::ground;

TEST(BottomDepth, UniversityIterationOne) {
  auto b = bottom_clause_depth(ground("collaborated(John,Jake)"), fixtures::university(), 1);
  EXPECT_EQ(to_string(b.clause),
            "collaborated(V1,V2) :- professor(V1), student(V2), hasPosition(V1,V3), inPhase(V2,V4), "
            "publication(V5,V1), publication(V5,V2).");
  EXPECT_EQ(b.depth.at(1), 0);
  EXPECT_EQ(b.depth.at(5), 1);
}

TEST(BottomDepth, ZeroDepthAndUnknownSeed) {
  auto inst = fixtures::university();
  EXPECT_TRUE(bottom_clause_depth(ground("collaborated(John,Jake)"), inst, 0).clause.body.empty());
  EXPECT_TRUE(bottom_clause_depth(ground("collaborated(Zed,Quux)"), inst, 3).clause.body.empty());
}

TEST(BottomDepth, GroundsIntoInstanceAndBoundsDepth) {
  auto inst = fixtures::university();
  auto b = bottom_clause_depth(ground("collaborated(John,Jake)"), inst, 3);
  for (const auto& lit : b.ground().body) {
    Tuple t;
    for (Term x : lit.args) t.push_back(x.id);
    EXPECT_TRUE(inst.table(lit.name()).contains(t));
  }
  for (const auto& [v, d] : b.depth) EXPECT_LE(d, 3);
}

TEST(BottomMaxvars, ChasePullsPartner) {
  auto b = bottom_clause_maxvars(ground("collaborated(John,Jake)"), fixtures::university(), 4);
  bool prof = false, pos = false;
  for (const auto& lit : b.clause.body) {
    prof |= lit.name() == "professor" && lit.args[0] == Term::variable(1);
    pos |= lit.name() == "hasPosition" && lit.args[0] == Term::variable(1);
  }
  EXPECT_TRUE(prof && pos);
  // Every literal's class partners on the IND positions are present.
  auto chased = chase::chase_clause(b.clause, fixtures::university().schema());
  EXPECT_EQ(chased.body.size(), b.clause.body.size());
}

TEST(BottomMaxvars, ArityBoundRunsOneIteration) {
  auto inst = fixtures::university();
  auto one = bottom_clause_maxvars(ground("collaborated(John,Jake)"), inst, 2);
  auto wide = bottom_clause_maxvars(ground("collaborated(John,Jake)"), inst, 100);
  EXPECT_EQ(one.clause.body.size(), 6u);
  for (const auto& [v, d] : one.depth) EXPECT_LE(d, 1);
  EXPECT_GE(wide.clause.body.size(), one.clause.body.size());
}

TEST(GroundSaturation, ReachableAtoms) {
  auto g = ground_saturation(ground("collaborated(John,Jake)"), fixtures::university(), 100);
  std::set<Atom> body(g.body.begin(), g.body.end());
  std::set<Atom> want;
  for (const char* s : {"professor(John)", "hasPosition(John,Associate)", "publication(A,John)", "student(Jake)",
                        "inPhase(Jake,PreQuals)", "publication(A,Jake)"})
    want.insert(ground(s));
  EXPECT_EQ(body, want);
  EXPECT_TRUE(ground_saturation(ground("collaborated(Zed,Quux)"), fixtures::university(), 100).body.empty());
}

TEST(ClassOrder, DeterministicAndTieBroken) {
  auto inst = fixtures::university();
  auto ranked = order_inclusion_classes(inst);
  ASSERT_EQ(ranked.size(), 3u);
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_LE(ranked[i - 1].key, ranked[i].key);
  auto empty = order_inclusion_classes(parse_facts("", fixtures::university_schema()));
  ASSERT_EQ(empty.size(), 3u);
  // All keys empty: ordered by class attribute names ({person,title} first).
  EXPECT_EQ(empty[0].relations, (std::vector<std::string>{"publication"}));
}

TEST(ClassOrder, SameAcrossComposition) {
  auto s = fixtures::university_schema();
  transform::Transformation tau(s, {transform::compose(s, {{"professor", "hasPosition"}, "professor"})});
  auto inst = fixtures::university();
  auto a = order_inclusion_classes(inst);
  auto b = order_inclusion_classes(transform::apply_transformation(tau, inst, transform::Direction::Forward));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].key, b[i].key);
}

TEST(BottomMaxvars, EquivalentAcrossSchemas) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_mixed2.spec");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto inst = transform::random_instance(tau.source_ptr(), rng, 20, 8);
    auto img = transform::apply_transformation(tau, inst, transform::Direction::Forward);
    const Table& ta = inst.table("ta");
    for (std::size_t r = 0; r < std::min<std::size_t>(ta.size(), 4); ++r) {
      Atom e("t", {Term::constant(ta.row(r)[1]), Term::constant(ta.row(r)[0])});
      for (std::size_t mv : {2u, 5u, 10u}) {
        auto b1 = bottom_clause_maxvars(e, inst, mv);
        auto b2 = bottom_clause_maxvars(e, img, mv);
        EXPECT_TRUE(chase::clause_equivalent(b1.clause, b2.clause, tau).equivalent()) << to_string(b1.clause);
      }
    }
  }
}
