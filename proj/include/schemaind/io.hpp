#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"
#include "schemaind/schema.hpp"

namespace schemaind {

Schema parse_schema(std::string_view text);
Instance parse_facts(std::string_view text, std::shared_ptr<const Schema> schema);
ExampleSet parse_examples(std::string_view text);

// Clause syntax: `head :- lit, lit.` (`<-` also accepted, `true` for an empty
// body). Identifiers starting with an uppercase letter or '_' are variables;
// anything else, including quoted strings, is a constant. Variables are
// numbered 1.. in order of first occurrence.
OrderedClause parse_clause(std::string_view text);
HornDefinition parse_definition(std::string_view text);
// Ground atom where every identifier is a constant, e.g. "t(a,'B')".
Atom parse_ground_atom(std::string_view text);

std::string facts_text(const Instance& instance);
std::string examples_text(const ExampleSet& examples);

std::string read_file(const std::string& path);  // ConfigError when unreadable
void write_file(const std::string& path, std::string_view content);

}  // namespace schemaind
