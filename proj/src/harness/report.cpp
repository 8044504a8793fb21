#include <unistd.h>

#include <chrono>
#include <ctime>
#include <sstream>

#include "schemaind/harness.hpp"

namespace schemaind::harness {
namespace {

const char* verdict_name(chase::Verdict v) {
  switch (v) {
    case chase::Verdict::Equivalent: return "equivalent";
    case chase::Verdict::NotEquivalent: return "not_equivalent";
    case chase::Verdict::Unknown: return "unknown";
  }
  return "?";
}

nlohmann::json clauses_json(const HornDefinition& def) {
  auto out = nlohmann::json::array();
  for (const auto& c : def.clauses) out.push_back(to_string(c));
  return out;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream s;
  s.precision(4);
  s << std::fixed << *v;
  return s.str();
}

}  // namespace

nlohmann::json to_json(const Metrics& m) {
  nlohmann::json j;
  j["true_positives"] = m.true_positives;
  j["false_positives"] = m.false_positives;
  j["false_negatives"] = m.false_negatives;
  j["precision"] = m.precision ? nlohmann::json(*m.precision) : nlohmann::json("undefined");
  j["recall"] = m.recall;
  return j;
}

nlohmann::json to_json(const learners::LearnerConfig& c) {
  return {{"learner", learners::to_string(c.algorithm)},
          {"clause_length", c.clause_length},
          {"max_inclusion_classes", c.max_inclusion_classes},
          {"beam_width", c.beam_width},
          {"maxvars", c.maxvars},
          {"max_depth", c.max_depth},
          {"bottom", c.bottom == learners::BottomMode::MaxVars ? "maxvars" : "depth"},
          {"noise", c.noise},
          {"sample_size", c.sample_size},
          {"seed", c.seed}};
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["config"] = to_json(r.config);
  j["folds"] = r.folds;
  j["seed"] = r.seed;
  j["pooled"] = to_json(r.pooled);
  j["mean_precision"] = r.mean_precision ? nlohmann::json(*r.mean_precision) : nlohmann::json("undefined");
  j["mean_recall"] = r.mean_recall ? nlohmann::json(*r.mean_recall) : nlohmann::json("undefined");
  j["definition"] = clauses_json(r.full_definition);
  auto folds = nlohmann::json::array();
  for (const auto& f : r.fold_results) {
    nlohmann::json fj;
    fj["fold"] = f.fold;
    fj["train_positives"] = f.train_positives;
    fj["train_negatives"] = f.train_negatives;
    fj["test_positives"] = f.test_positives;
    fj["test_negatives"] = f.test_negatives;
    fj["skipped"] = f.skipped;
    fj["complete"] = f.complete;
    fj["metrics"] = to_json(f.metrics);
    fj["definition"] = clauses_json(f.definition);
    folds.push_back(std::move(fj));
  }
  j["fold_results"] = std::move(folds);
  return j;
}

nlohmann::json to_json(const IndependenceReport& r) {
  nlohmann::json j;
  j["learner"] = r.learner;
  j["transformation"] = r.transformation;
  j["verdict"] = to_string(r.overall);
  j["same_clause_count"] = r.same_clause_count;
  j["covers_equal"] = r.covers_equal;
  j["witness"] = r.witness;
  j["source_definition"] = clauses_json(r.source_definition);
  j["target_definition"] = clauses_json(r.target_definition);
  auto cs = nlohmann::json::array();
  for (const auto& c : r.clauses)
    cs.push_back({{"source", c.source_clause},
                  {"target", c.target_clause},
                  {"forward", verdict_name(c.forward)},
                  {"backward", verdict_name(c.backward)}});
  j["clauses"] = std::move(cs);
  return j;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json j;
  j["definitions"] = r.rows.size();
  j["evaluation_failures"] = r.evaluation_failures;
  j["equivalence_failures"] = r.equivalence_failures;
  j["unknown"] = r.unknown;
  auto rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"clauses", row.clauses},
                    {"vars", row.vars},
                    {"definition", row.definition},
                    {"evaluation_equal", row.evaluation_equal},
                    {"equivalence", verdict_name(row.equivalence)},
                    {"body_before", row.body_before},
                    {"body_after", row.body_after}});
  j["rows"] = std::move(rows);
  return j;
}

std::string experiment_csv(const ExperimentReport& r) {
  std::ostringstream s;
  s << "fold,train_pos,train_neg,test_pos,test_neg,tp,fp,fn,precision,recall,clauses\n";
  for (const auto& f : r.fold_results)
    s << f.fold << ',' << f.train_positives << ',' << f.train_negatives << ',' << f.test_positives << ','
      << f.test_negatives << ',' << f.metrics.true_positives << ',' << f.metrics.false_positives << ','
      << f.metrics.false_negatives << ',' << fmt(f.metrics.precision) << ',' << fmt(f.metrics.recall) << ','
      << f.definition.size() << '\n';
  s << "pooled,,,,," << r.pooled.true_positives << ',' << r.pooled.false_positives << ','
    << r.pooled.false_negatives << ',' << fmt(r.pooled.precision) << ',' << fmt(r.pooled.recall) << ','
    << r.full_definition.size() << '\n';
  s << "mean,,,,,,,," << fmt(r.mean_precision) << ',' << fmt(r.mean_recall) << ",\n";
  return s.str();
}

nlohmann::json meta_block() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  char host[256] = {0};
  gethostname(host, sizeof host - 1);
  return {{"timestamp", stamp}, {"host", host}};
}

}  // namespace schemaind::harness
