#include <gtest/gtest.h>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/io.hpp"

using namespace schemaind;

namespace {

const char* kUniversitySchema = R"(
relation professor(prof)
relation student(stud)
relation hasPosition(prof,position)
relation inPhase(stud,phase)
relation publication(title,person)
fd hasPosition: prof -> position
fd inPhase: stud -> phase
ind professor[prof] = hasPosition[prof]
ind student[stud] = inPhase[stud]
)";

const char* kUniversityFacts = R"(
student(Jake). student(Sara).
inPhase(Jake,PreQuals). inPhase(Sara,PostGenerals).
professor(John). professor(Mary).
hasPosition(John,Associate). hasPosition(Mary,Assistant).
publication(A,John). publication(A,Jake).
publication(B,Mary). publication(B,Sara).
)";

std::shared_ptr<const Schema> university_schema() { return std::make_shared<Schema>(parse_schema(kUniversitySchema)); }

Instance university() { return parse_facts(kUniversityFacts, university_schema()); }

Atom ground(const char* text) { return parse_ground_atom(text); }

}  // namespace

TEST(Schema, ParsesRelationsAndEqualityInd) {
  Schema s = parse_schema("relation student(stud)\nrelation inPhase(stud,phase)\nind student[stud] = inPhase[stud]");
  EXPECT_EQ(s.relations().size(), 2u);
  ASSERT_EQ(s.inds().size(), 1u);
  EXPECT_TRUE(s.inds()[0].equality);
}

TEST(Schema, RejectsEmptyAndUnknownAttribute) {
  EXPECT_THROW(parse_schema(""), ConfigError);
  EXPECT_THROW(parse_schema("relation r(a)\nfd r: b -> a"), ConfigError);
  EXPECT_THROW(parse_schema("relation r(a)\nrelation r(b)"), ConfigError);
}

TEST(Schema, SyntaxErrorCarriesPosition) {
  try {
    parse_schema("relation r(a\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Schema, FdClosureAddsTransitiveDependency) {
  Schema s = parse_schema("relation R(A,B,C)\nfd R: A -> B\nfd R: B -> C");
  auto closure = fd_closure(s);
  bool found = false;
  for (const auto& fd : closure) found |= fd.lhs == std::vector<std::string>{"A"} && fd.rhs == std::vector<std::string>{"C"};
  EXPECT_TRUE(found);
  EXPECT_TRUE(fd_closure(parse_schema("relation R(A,B)")).empty());
}

TEST(Schema, FdClosureOfTwoKeyFds) {
  Schema s = parse_schema("relation student(stud,phase,years)\nfd student: stud -> phase\nfd student: stud -> years");
  auto closure = fd_closure(s);
  // stud -> phase, stud -> years, plus augmentations with a trivial extra attribute
  std::set<std::pair<std::vector<std::string>, std::string>> got;
  for (const auto& fd : closure) got.insert({fd.lhs, fd.rhs[0]});
  EXPECT_TRUE(got.count({{"stud"}, "phase"}));
  EXPECT_TRUE(got.count({{"stud"}, "years"}));
  for (const auto& [lhs, rhs] : got) EXPECT_NE(std::find(lhs.begin(), lhs.end(), "stud"), lhs.end());
}

TEST(Schema, FdClosureIsIdempotent) {
  Schema s = parse_schema("relation R(A,B,C,D)\nfd R: A -> B\nfd R: B,C -> D");
  auto once = fd_closure(s);
  Schema augmented({s.relations()}, once, {});
  EXPECT_EQ(fd_closure(augmented), once);
}

TEST(Schema, InclusionClassesOfUniversity) {
  auto classes = inclusion_classes(*university_schema());
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0], (std::vector<std::string>{"professor", "hasPosition"}));
  EXPECT_EQ(classes[1], (std::vector<std::string>{"student", "inPhase"}));
  EXPECT_EQ(classes[2], (std::vector<std::string>{"publication"}));
}

TEST(Schema, InclusionClassChainAndSingletons) {
  auto chain = inclusion_classes(parse_schema("relation r1(a)\nrelation r2(a)\nrelation r3(a)\nind r1[a] = r2[a]\nind r2[a] = r3[a]"));
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].size(), 3u);
  EXPECT_EQ(inclusion_classes(parse_schema("relation r1(a)\nrelation r2(a)")).size(), 2u);
}

TEST(Schema, TextRoundTrip) {
  Schema s = *university_schema();
  EXPECT_TRUE(parse_schema(to_text(s)).equivalent_to(s));
}

TEST(Facts, UniversityHasTwelveTuplesOverFiveRelations) {
  Instance inst = university();
  EXPECT_EQ(inst.total_tuples(), 12u);
  EXPECT_EQ(inst.schema().relations().size(), 5u);
  EXPECT_EQ(parse_facts("", university_schema()).total_tuples(), 0u);
}

TEST(Facts, RejectsViolations) {
  EXPECT_THROW(parse_facts("student(Jake). inPhase(Jake,PreQuals). inPhase(Jake,Post).", university_schema()),
               ConstraintViolation);
  EXPECT_THROW(parse_facts("student(Jake).", university_schema()), ConstraintViolation);
  EXPECT_THROW(parse_facts("student(Jake,x).", university_schema()), ConfigError);
  EXPECT_THROW(parse_facts("teacher(Jake).", university_schema()), ConfigError);
}

TEST(Facts, RoundTrip) {
  Instance inst = university();
  EXPECT_TRUE(parse_facts(facts_text(inst), university_schema()).same_content(inst));
}

TEST(Examples, ParsesAndRejectsContradiction) {
  auto ex = parse_examples("+ t(a,b).\n- t(a,c).\n");
  EXPECT_EQ(ex.positives.size(), 1u);
  EXPECT_EQ(ex.negatives.size(), 1u);
  EXPECT_THROW(parse_examples("+ t(a,b).\n- t(a,b).\n"), ConfigError);
}

TEST(Evaluate, CollaboratedOverUniversity) {
  Instance inst = university();
  auto got = evaluate_clause(parse_clause("collaborated(X,Y) :- publication(P,X), publication(P,Y)."), inst);
  std::set<Atom> want;
  for (const char* s : {"collaborated(John,Jake)", "collaborated(Jake,John)", "collaborated(Mary,Sara)",
                        "collaborated(Sara,Mary)", "collaborated(John,John)", "collaborated(Jake,Jake)",
                        "collaborated(Mary,Mary)", "collaborated(Sara,Sara)"})
    want.insert(ground(s));
  EXPECT_EQ(got, want);
}

TEST(Evaluate, ProjectionAndEmptyInstance) {
  Instance inst = university();
  auto got = evaluate_clause(parse_clause("t(X) :- student(X)."), inst);
  EXPECT_EQ(got, (std::set<Atom>{ground("t(Jake)"), ground("t(Sara)")}));
  EXPECT_TRUE(evaluate_clause(parse_clause("t(X) :- student(X)."), parse_facts("", university_schema())).empty());
}

TEST(Evaluate, RejectsUnboundHeadVariable) {
  EXPECT_THROW(evaluate_clause(parse_clause("t(X,Y) :- student(X)."), university()), ConfigError);
}

TEST(Evaluate, RecursiveDefinitionReachesFixpoint) {
  auto schema = std::make_shared<Schema>(parse_schema("relation e(a,b)"));
  Instance inst = parse_facts("e(n1,n2). e(n2,n3). e(n3,n4).", schema);
  auto def = parse_definition("p(X,Y) :- e(X,Y).\np(X,Z) :- e(X,Y), p(Y,Z).");
  EXPECT_EQ(evaluate_definition(def, inst).size(), 6u);
}

TEST(Covers, SubsetOfExamples) {
  Instance inst = university();
  auto clause = parse_clause("collaborated(X,Y) :- publication(P,X), publication(P,Y).");
  std::vector<Atom> ex{ground("collaborated(John,Jake)"), ground("collaborated(John,Sara)")};
  EXPECT_EQ(covers(inst, clause, ex), std::vector<Atom>{ground("collaborated(John,Jake)")});
  EXPECT_TRUE(covers(inst, clause, {}).empty());
  EXPECT_EQ(covers(inst, parse_clause("collaborated(X,Y) :- true."), ex).size(), 2u);
}

TEST(Clause, CanonicalFormIsRenamingInvariant) {
  auto a = parse_clause("t(X) :- r(X,Y), s(Y).");
  auto b = parse_clause("t(A) :- r(A,B), s(B).");
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_EQ(to_string(parse_clause("t(X) :- r(X,'Big Co').")), "t(V1) :- r(V1,'Big Co').");
}
