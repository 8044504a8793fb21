#pragma once

#include <memory>
#include <string>

#include "schemaind/io.hpp"
#include "schemaind/transform.hpp"

namespace fixtures {

// A small university database, with relations declared in the order the
// depth-bounded saturation example expects.
inline const char* kUniversitySchema = R"(
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

inline const char* kUniversityFacts = R"(
student(Jake). student(Sara).
inPhase(Jake,PreQuals). inPhase(Sara,PostGenerals).
professor(John). professor(Mary).
hasPosition(John,Associate). hasPosition(Mary,Assistant).
publication(A,John). publication(A,Jake).
publication(B,Mary). publication(B,Sara).
)";

inline std::shared_ptr<const schemaind::Schema> university_schema() {
  return std::make_shared<const schemaind::Schema>(schemaind::parse_schema(kUniversitySchema));
}

inline schemaind::Instance university() { return schemaind::parse_facts(kUniversityFacts, university_schema()); }

inline std::string data_path(const std::string& rel) { return std::string(SCHEMAIND_DATA_DIR) + "/" + rel; }

inline std::shared_ptr<const schemaind::Schema> load_schema(const std::string& rel) {
  return std::make_shared<const schemaind::Schema>(schemaind::parse_schema(schemaind::read_file(data_path(rel))));
}

inline schemaind::transform::Transformation load_transformation(const std::string& schema_rel,
                                                                const std::string& spec_rel) {
  return schemaind::transform::build(load_schema(schema_rel),
                                     schemaind::transform::parse_spec(schemaind::read_file(data_path(spec_rel))));
}

inline schemaind::OrderedClause clause(const char* text) { return schemaind::parse_clause(text); }
inline schemaind::Atom ground(const char* text) { return schemaind::parse_ground_atom(text); }

}  // namespace fixtures
