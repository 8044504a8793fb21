#include <set>

#include "schemaind/harness.hpp"

namespace schemaind::harness {

UwcseData synthetic_uwcse(const UwcseParams& p) {
  std::mt19937_64 rng(p.seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto name = [](const char* prefix, std::size_t i) { return intern(std::string(prefix) + std::to_string(i)); };
  const char* phases[] = {"pre_quals", "post_quals", "post_generals"};
  const char* positions[] = {"faculty", "faculty_adjunct", "faculty_affiliate", "faculty_emeritus"};
  const char* levels[] = {"level_300", "level_400", "level_500"};

  UwcseData out;
  auto& f = out.facts;
  for (const char* r : {"student", "inPhase", "yearsInProgram", "professor", "hasPosition", "course", "courseLevel",
                        "taughtBy", "ta", "publication"})
    f[r];

  for (std::size_t i = 0; i < p.professors; ++i) {
    f["professor"].push_back({name("prof", i)});
    f["hasPosition"].push_back({name("prof", i), intern(positions[pick(4)])});
  }
  for (std::size_t i = 0; i < p.courses; ++i) {
    f["course"].push_back({name("course", i)});
    f["courseLevel"].push_back({name("course", i), intern(levels[pick(3)])});
  }
  // One lecturer per offered (course, term).
  std::vector<std::vector<std::size_t>> teaches(p.professors);
  for (std::size_t c = 0; c < p.courses; ++c)
    for (std::size_t t = 0; t < p.terms; ++t) {
      if (pick(2)) continue;
      auto prof = pick(p.professors);
      f["taughtBy"].push_back({name("course", c), name("prof", prof), name("term", t)});
      teaches[prof].push_back(c * p.terms + t);
    }

  std::size_t paper = 0;
  for (std::size_t s = 0; s < p.students; ++s) {
    Value stud = name("stud", s);
    f["student"].push_back({stud});
    f["inPhase"].push_back({stud, intern(phases[pick(3)])});
    f["yearsInProgram"].push_back({stud, name("year_", 1 + pick(6))});
    auto advisor = pick(p.professors);
    out.positives.emplace_back("advisedBy", std::vector<Term>{Term::constant(stud),
                                                               Term::constant(name("prof", advisor))});
    // Every advising pair co-authors.
    for (std::size_t k = 0, n = 1 + pick(2); k < n; ++k) {
      Value title = name("paper", paper++);
      f["publication"].push_back({title, stud});
      f["publication"].push_back({title, name("prof", advisor)});
    }
    // Some students assist in a course of their advisor.
    if (!teaches[advisor].empty() && pick(2)) {
      auto slot = teaches[advisor][pick(teaches[advisor].size())];
      f["ta"].push_back({name("course", slot / p.terms), stud, name("term", slot % p.terms)});
    } else if (pick(3) == 0) {
      f["ta"].push_back({name("course", pick(p.courses)), stud, name("term", pick(p.terms))});
    }
  }
  // Papers between professors only, or between students only.
  for (std::size_t k = 0; k < p.extra_papers; ++k) {
    Value title = name("paper", paper++);
    bool profs = pick(2) == 0;
    auto a = profs ? pick(p.professors) : pick(p.students);
    auto b = profs ? pick(p.professors) : pick(p.students);
    f["publication"].push_back({title, name(profs ? "prof" : "stud", a)});
    if (b != a) f["publication"].push_back({title, name(profs ? "prof" : "stud", b)});
  }
  // A few students also publish with a professor who does not advise them.
  for (std::size_t k = 0; k < p.cross_papers; ++k) {
    Value title = name("paper", paper++);
    f["publication"].push_back({title, name("stud", pick(p.students))});
    f["publication"].push_back({title, name("prof", pick(p.professors))});
  }
  for (auto& [rel, rows] : f) {
    std::set<Tuple> seen;
    std::vector<Tuple> unique;
    for (auto& r : rows)
      if (seen.insert(r).second) unique.push_back(std::move(r));
    rows = std::move(unique);
  }
  return out;
}

}  // namespace schemaind::harness
