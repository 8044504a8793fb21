#include <cmath>
#include <set>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/learners.hpp"

namespace schemaind::learners {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "foil") return Algorithm::Foil;
  if (name == "mfoil") return Algorithm::ModifiedFoil;
  if (name == "golem") return Algorithm::Golem;
  if (name == "progolem") return Algorithm::ProGolem;
  throw ConfigError("unknown learner '" + std::string(name) + "' (expected foil, mfoil, golem or progolem)");
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Foil: return "foil";
    case Algorithm::ModifiedFoil: return "mfoil";
    case Algorithm::Golem: return "golem";
    case Algorithm::ProGolem: return "progolem";
  }
  return "?";
}

void LearnerConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be at least 1");
  };
  positive(clause_length, "clause length");
  positive(max_inclusion_classes, "max inclusion classes");
  positive(beam_width, "beam width");
  positive(maxvars, "maxvars");
  positive(sample_size, "sample size");
  positive(pair_bound, "pair bound");
  positive(pair_sample, "pair sample");
  if (max_depth < 1) throw ConfigError("depth must be at least 1");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("noise must lie in [0,1]");
}

std::size_t LearnerConfig::allowed_negatives(std::size_t negatives) const {
  return static_cast<std::size_t>(std::floor(noise * static_cast<double>(negatives) + 1e-9));
}

LearnResult learn(const Instance& instance, const ExampleSet& examples, const LearnerConfig& config) {
  config.validate();
  LearnResult result;
  std::vector<Atom> uncovered = examples.positives;
  if (uncovered.empty()) return result;
  const SymbolId target = examples.target ? examples.target : uncovered.front().predicate;
  const std::size_t arity = uncovered.front().arity();
  const saturation::Saturator saturator(instance);

  while (!uncovered.empty()) {
    std::optional<OrderedClause> clause;
    switch (config.algorithm) {
      case Algorithm::Foil:
        clause = foil_learn_clause(instance, target, arity, uncovered, examples.negatives, config);
        break;
      case Algorithm::ModifiedFoil:
        clause = modified_foil_learn_clause(saturator, target, arity, uncovered, examples.negatives, config);
        break;
      case Algorithm::Golem:
        clause = golem_learn_clause(saturator, uncovered, examples.negatives, config);
        break;
      case Algorithm::ProGolem:
        clause = progolem_learn_clause(saturator, uncovered, examples.negatives, config);
        break;
    }
    if (!clause) break;
    auto covered = covers(instance, *clause, uncovered);
    if (covered.empty()) break;
    result.definition.clauses.push_back(std::move(*clause));
    std::set<Atom> drop(covered.begin(), covered.end());
    std::vector<Atom> rest;
    for (auto& e : uncovered)
      if (!drop.count(e)) rest.push_back(std::move(e));
    uncovered = std::move(rest);
  }
  result.complete = uncovered.empty();
  result.uncovered = std::move(uncovered);
  return result;
}

}  // namespace schemaind::learners
