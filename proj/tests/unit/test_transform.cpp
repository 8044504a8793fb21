#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "schemaind/chase.hpp"
#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"

using namespace schemaind;
using namespace schemaind::transform;
using fixtures::clause;

namespace {

std::shared_ptr<const Schema> student_schema() {
  return std::make_shared<const Schema>(
      parse_schema("relation student(stud,phase,years)\nfd student: stud -> phase\nfd student: stud -> years"));
}

std::set<IND> equality_inds(const Schema& s) {
  std::set<IND> out;
  for (const auto& ind : s.equality_inds()) out.insert(normalized(ind));
  return out;
}

}  // namespace

TEST(Decompose, StudentIntoThreeComponents) {
  Stage st = decompose(student_schema(), {"student", {{"student", {"stud"}}, {"inPhase", {"stud", "phase"}},
                                                      {"yearsInProgram", {"stud", "years"}}}});
  const Schema& t = *st.target;
  ASSERT_EQ(t.relations().size(), 3u);
  EXPECT_EQ(t.relations()[1].name, "inPhase");
  EXPECT_EQ(equality_inds(t).size(), 3u);  // each unordered pair once
  EXPECT_EQ(t.fds().size(), 2u);
  auto orig = fixtures::load_schema("uwcse/original.schema");
  for (const auto& ind : equality_inds(t)) EXPECT_TRUE(equality_inds(*orig).count(ind));
}

TEST(Decompose, SingleComponentIsIdentity) {
  Stage st = decompose(student_schema(), {"student", {{"student", {"stud", "phase", "years"}}}});
  EXPECT_TRUE(st.target->equivalent_to(*st.source));
}

TEST(Decompose, RejectsBadSpecs) {
  auto s = std::make_shared<const Schema>(parse_schema("relation R(A,B,C,D)\nfd R: A -> B,C,D"));
  EXPECT_THROW(decompose(s, {"R", {{"S1", {"A", "B"}}, {"S2", {"C", "D"}}}}), ConfigError);
  // B is not a key of R.
  EXPECT_THROW(decompose(s, {"R", {{"S1", {"A", "B"}}, {"S2", {"B", "C", "D"}}}}), ConfigError);
  EXPECT_THROW(decompose(s, {"R", {{"S1", {"A", "B"}}, {"S2", {"A", "C"}}}}), ConfigError);
  EXPECT_NO_THROW(decompose(s, {"R", {{"S1", {"A", "B"}}, {"S2", {"A", "C", "D"}}}}));
}

TEST(Decompose, RejectsFdThatFitsNoComponent) {
  auto s = std::make_shared<const Schema>(parse_schema("relation R(A,B,C)\nfd R: A -> B,C\nfd R: B -> C"));
  EXPECT_THROW(decompose(s, {"R", {{"S1", {"A", "B"}}, {"S2", {"A", "C"}}}}), ConfigError);
}

TEST(Compose, ProfessorWithPosition) {
  auto s = fixtures::university_schema();
  Stage st = compose(s, {{"professor", "hasPosition"}, "professor"});
  const auto& prof = st.target->relation("professor");
  EXPECT_EQ(prof.attributes, (std::vector<std::string>{"prof", "position"}));
  EXPECT_EQ(st.target->relations().size(), 4u);
  EXPECT_THROW(compose(s, {{"professor", "student"}, "x"}), ConfigError);
  EXPECT_NO_THROW(compose(s, {{"publication"}, "publication"}));
}

TEST(Apply, ComposesProfessorFragment) {
  auto s = fixtures::university_schema();
  Transformation tau(s, {compose(s, {{"professor", "hasPosition"}, "professor"})});
  Instance out = apply_transformation(tau, fixtures::university(), Direction::Forward);
  const Table& prof = out.table("professor");
  ASSERT_EQ(prof.size(), 2u);
  EXPECT_TRUE(prof.contains({intern("John"), intern("Associate")}));
  EXPECT_TRUE(prof.contains({intern("Mary"), intern("Assistant")}));
  Instance back = apply_transformation(tau, out, Direction::Inverse);
  EXPECT_TRUE(back.same_content(fixtures::university()));
  Instance empty = apply_transformation(tau, parse_facts("", s), Direction::Forward);
  EXPECT_EQ(empty.total_tuples(), 0u);
}

TEST(MapDefinition, UnfoldsThroughJoins) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  auto c = clause("advisedBy(X,Y) :- student(X), professor(Y), publication(P,X), publication(P,Y).");
  auto got = map_clause(tau, c, Direction::Forward);
  EXPECT_EQ(canonical_key(got), canonical_key(clause(
                                    "advisedBy(X,Y) :- student(X,A,B), professor(Y,C), publication(P,X), publication(P,Y).")));
  auto back = map_clause(tau, got, Direction::Inverse);
  EXPECT_TRUE(chase::clause_equivalent(c, back, tau.source()).equivalent());
}

TEST(MapDefinition, IdentityAndEmptyBody) {
  auto s = fixtures::university_schema();
  Transformation id(s);
  auto c = clause("t(X) :- student(X), publication(P,X).");
  EXPECT_EQ(map_clause(id, c, Direction::Forward), c);
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  auto top = clause("t(X,Y) :- true.");
  EXPECT_EQ(map_clause(tau, top, Direction::Forward), top);
  EXPECT_THROW(map_clause(tau, clause("t(X) :- nosuch(X)."), Direction::Forward), ConfigError);
}

TEST(MapDefinition, PreservesEvaluation) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_mixed2.spec");
  std::mt19937_64 rng(11);
  auto c = clause("t(X,Y) :- yearsInProgram(X,N), ta(C,X,T), taughtBy(C,Y,T), hasPosition(Y,P).");
  auto mapped = map_clause(tau, c, Direction::Forward);
  for (int i = 0; i < 20; ++i) {
    auto inst = random_instance(tau.source_ptr(), rng, 30, 10);
    EXPECT_EQ(evaluate_clause(c, inst), evaluate_clause(mapped, apply_transformation(tau, inst, Direction::Forward)));
  }
}

TEST(Spec, RoundTripsThroughText) {
  auto spec = parse_spec(read_file(fixtures::data_path("uwcse/original_to_mixed2.spec")));
  ASSERT_EQ(spec.steps.size(), 3u);
  auto again = parse_spec(to_text(spec));
  EXPECT_EQ(to_text(again), to_text(spec));
  EXPECT_THROW(parse_spec("explode R into S"), ParseError);
}

TEST(Transformation, InverseAndChaining) {
  auto to_alt = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_alternative.spec");
  auto to_m1 = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_mixed1.spec");
  auto alt_to_m1 = to_alt.inverse().then(to_m1);
  EXPECT_TRUE(alt_to_m1.source().equivalent_to(to_alt.target()));
  EXPECT_TRUE(alt_to_m1.target().equivalent_to(to_m1.target()));
  EXPECT_TRUE(verify_bijection(alt_to_m1, {}, 20, 3).passed);
}

TEST(VerifyBijection, BundledFamilyPasses) {
  for (const char* spec : {"uwcse/original_to_alternative.spec", "uwcse/original_to_mixed1.spec",
                           "uwcse/original_to_mixed2.spec"}) {
    auto tau = fixtures::load_transformation("uwcse/original.schema", spec);
    auto report = verify_bijection(tau, {}, 100, 1);
    EXPECT_TRUE(report.passed) << spec << "\n" << report.counterexample;
    EXPECT_GT(report.total_tuples, 0u);
  }
}

TEST(VerifyBijection, MissingEqualityIndIsCaught) {
  auto s = student_schema();
  Stage st = decompose(s, {"student", {{"student", {"stud", "phase"}}, {"yearsInProgram", {"stud", "years"}}}});
  std::vector<IND> none;
  st.target = std::make_shared<const Schema>(st.target->relations(), st.target->fds(), none);
  Transformation broken(s, {st});
  auto report = verify_bijection(broken, {}, 50, 5);
  EXPECT_FALSE(report.passed);
  EXPECT_FALSE(report.counterexample.empty());
}

TEST(VerifyBijection, NoEvidenceIsFlagged) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_mixed1.spec");
  auto report = verify_bijection(tau, {}, 0, 0);
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.no_evidence);
}

TEST(FdClosure, PreservedAcrossBundledFamily) {
  auto orig = fixtures::load_schema("uwcse/original.schema");
  for (const char* spec : {"uwcse/original_to_alternative.spec", "uwcse/original_to_mixed2.spec"}) {
    auto tau = fixtures::load_transformation("uwcse/original.schema", spec);
    auto names = [](const Schema& s) {
      std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
      std::vector<std::string> universe;
      std::vector<FD> fds(s.fds().begin(), s.fds().end());
      for (const auto& r : s.relations())
        for (const auto& a : r.attributes)
          if (std::find(universe.begin(), universe.end(), a) == universe.end()) universe.push_back(a);
      for (const auto& fd : closure_over(universe, fds, "")) out.insert({fd.lhs, fd.rhs});
      return out;
    };
    EXPECT_EQ(names(*orig), names(tau.target())) << spec;
  }
}

TEST(InclusionClasses, MapOneToOne) {
  auto tau = fixtures::load_transformation("uwcse/original.schema", "uwcse/original_to_mixed2.spec");
  EXPECT_EQ(inclusion_classes(tau.source()).size(), inclusion_classes(tau.target()).size());
}
