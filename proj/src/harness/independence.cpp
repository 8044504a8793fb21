#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <unordered_map>

#include "schemaind/evaluate.hpp"
#include "schemaind/harness.hpp"

namespace schemaind::harness {
namespace {

using transform::Direction;

std::vector<Atom> all_examples(const ExampleSet& examples) {
  std::vector<Atom> all = examples.positives;
  all.insert(all.end(), examples.negatives.begin(), examples.negatives.end());
  return all;
}

// Equivalence-class invariant: relations of the full chase plus the equality
// pattern of the head.
std::string signature(const OrderedClause& clause, const Schema& schema) {
  auto chased = chase::full_chase(clause, schema);
  std::set<std::string> preds;
  for (const auto& l : chased.clause.body) preds.insert(l.name());
  std::string sig = chased.consistent ? "" : "!";
  for (Term t : chased.clause.head.args) sig += to_string(t) + ",";
  sig += "|";
  for (const auto& p : preds) sig += p + ",";
  return sig;
}

// Head terms after the chase may be merged; keep only the pattern so renamings agree.
std::string head_pattern_signature(const OrderedClause& clause, const Schema& schema) {
  return signature(canonical(clause), schema);
}

// Chased and minimized form; equivalent clauses usually share it exactly.
OrderedClause normal_form(const OrderedClause& clause, const Schema& schema) {
  auto chased = chase::full_chase(clause, schema);
  return canonical(chase::minimize_clause(chased.clause, schema));
}

// Finer invariant of the normal form: head pattern, predicate multiset, variable count.
std::string fine_signature(const OrderedClause& nf) {
  std::vector<std::string> preds;
  for (const auto& l : nf.body) preds.push_back(l.name());
  std::sort(preds.begin(), preds.end());
  std::string sig;
  for (Term t : nf.head.args) sig += to_string(t) + ",";
  sig += "|" + std::to_string(variables_of(nf).size()) + "|";
  for (const auto& p : preds) sig += p + ",";
  return sig;
}

struct SpaceIndex {
  const std::vector<learners::RefinementNode>& space;
  const Schema& schema;
  std::unordered_map<std::string, std::size_t> by_key;
  std::unordered_map<std::string, std::vector<std::size_t>> by_fine;
  std::unordered_map<std::string, std::vector<std::size_t>> by_signature;

  SpaceIndex(const std::vector<learners::RefinementNode>& s, const Schema& sc) : space(s), schema(sc) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      auto nf = normal_form(space[i].clause, schema);
      by_key.emplace(canonical_key(nf), i);
      by_fine[fine_signature(nf)].push_back(i);
      by_signature[head_pattern_signature(space[i].clause, schema)].push_back(i);
    }
  }

  std::optional<std::size_t> search(const OrderedClause& clause, const std::vector<std::size_t>& bucket,
                                    bool& saw_unknown) const {
    for (auto i : bucket) {
      auto v = chase::clause_equivalent(clause, space[i].clause, schema).verdict;
      if (v == chase::Verdict::Equivalent) return i;
      if (v == chase::Verdict::Unknown) saw_unknown = true;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> find(const OrderedClause& clause, bool* unknown) const {
    auto nf = normal_form(clause, schema);
    if (auto it = by_key.find(canonical_key(nf)); it != by_key.end()) return it->second;
    bool saw_unknown = false;
    if (auto it = by_fine.find(fine_signature(nf)); it != by_fine.end())
      if (auto hit = search(clause, it->second, saw_unknown)) return hit;
    auto bucket = by_signature.find(head_pattern_signature(clause, schema));
    if (bucket != by_signature.end())
      if (auto hit = search(clause, bucket->second, saw_unknown)) return hit;
    if (unknown) *unknown = saw_unknown;
    return std::nullopt;
  }
};

}  // namespace

std::string to_string(Overall overall) {
  switch (overall) {
    case Overall::Independent: return "independent";
    case Overall::Dependent: return "dependent";
    case Overall::Unknown: return "unknown";
  }
  return "?";
}

IndependenceReport compare_definitions(const HornDefinition& source_def, const HornDefinition& target_def,
                                       const Instance& instance, const Instance& image,
                                       const transform::Transformation& tau, const ExampleSet& examples) {
  IndependenceReport r;
  r.transformation = transform::to_text(tau.spec());
  r.source_definition = source_def;
  r.target_definition = target_def;
  r.same_clause_count = source_def.size() == target_def.size();
  bool unknown = false, dependent = !r.same_clause_count;
  if (!r.same_clause_count)
    r.witness = "clause counts differ: " + std::to_string(source_def.size()) + " vs " +
                std::to_string(target_def.size());
  const auto inverse = tau.inverse();
  for (std::size_t i = 0; i < std::min(source_def.size(), target_def.size()); ++i) {
    ClauseCheck check;
    const auto& c = source_def.clauses[i];
    const auto& d = target_def.clauses[i];
    check.source_clause = to_string(c);
    check.target_clause = to_string(d);
    check.forward = chase::clause_equivalent(c, d, tau).verdict;
    check.backward = chase::clause_equivalent(d, c, inverse).verdict;
    for (auto v : {check.forward, check.backward}) {
      if (v == chase::Verdict::Unknown) unknown = true;
      if (v == chase::Verdict::NotEquivalent && r.witness.empty())
        r.witness = "clause " + std::to_string(i + 1) + ": " + check.source_clause + "  vs  " + check.target_clause;
      if (v == chase::Verdict::NotEquivalent) dependent = true;
    }
    r.clauses.push_back(std::move(check));
  }
  const auto all = all_examples(examples);
  auto a = covers(instance, source_def, all);
  auto b = covers(image, target_def, all);
  r.covers_equal = a == b;
  if (!r.covers_equal) {
    dependent = true;
    if (r.witness.empty())
      r.witness = "covered examples differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
  }
  r.overall = dependent ? Overall::Dependent : unknown ? Overall::Unknown : Overall::Independent;
  return r;
}

IndependenceReport check_schema_independence(const learners::LearnerConfig& config, const Instance& instance,
                                             const transform::Transformation& tau, const ExampleSet& examples) {
  config.validate();
  Instance image = transform::apply_transformation(tau, instance, Direction::Forward);
  auto left = std::async(std::launch::async, [&] { return learners::learn(instance, examples, config); });
  auto right = learners::learn(image, examples, config);
  auto report = compare_definitions(left.get().definition, right.definition, instance, image, tau, examples);
  report.learner = learners::to_string(config.algorithm);
  return report;
}

std::optional<std::size_t> find_equivalent(const std::vector<learners::RefinementNode>& space,
                                           const OrderedClause& clause, const Schema& schema, bool* unknown) {
  bool saw_unknown = false;
  const auto sig = head_pattern_signature(clause, schema);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (head_pattern_signature(space[i].clause, schema) != sig) continue;
    auto v = chase::clause_equivalent(clause, space[i].clause, schema).verdict;
    if (v == chase::Verdict::Equivalent) return i;
    if (v == chase::Verdict::Unknown) saw_unknown = true;
  }
  if (unknown) *unknown = saw_unknown;
  return std::nullopt;
}

SpaceComparison compare_hypothesis_spaces(const transform::Transformation& tau, SymbolId target, std::size_t arity,
                                          const learners::LearnerConfig& config) {
  auto src_future = std::async(std::launch::async,
                               [&] { return learners::enumerate_hypotheses(tau.source(), target, arity, config); });
  auto tgt = learners::enumerate_hypotheses(tau.target(), target, arity, config);
  auto src = src_future.get();
  struct Pass {
    std::size_t unmatched = 0, unknown = 0;
    std::vector<std::string> examples;
  };
  auto match = [&](const std::vector<learners::RefinementNode>& from, const SpaceIndex& into, Direction dir) {
    Pass pass;
    for (const auto& node : from) {
      bool unknown = false;
      auto image = transform::map_clause(tau, node.clause, dir);
      if (into.find(image, &unknown)) continue;
      ++(unknown ? pass.unknown : pass.unmatched);
      if (pass.examples.size() < 5) pass.examples.push_back(to_string(node.clause));
    }
    return pass;
  };
  auto tgt_index = std::async(std::launch::async, [&] { return SpaceIndex(tgt, tau.target()); });
  SpaceIndex src_index(src, tau.source());
  SpaceIndex tgt_ready = tgt_index.get();
  auto forward = std::async(std::launch::async, [&] { return match(src, tgt_ready, Direction::Forward); });
  Pass backward = match(tgt, src_index, Direction::Inverse);
  Pass fwd = forward.get();

  SpaceComparison out;
  out.source_size = src.size();
  out.target_size = tgt.size();
  out.source_unmatched = fwd.unmatched;
  out.target_unmatched = backward.unmatched;
  out.unknown = fwd.unknown + backward.unknown;
  out.examples = fwd.examples;
  for (auto& e : backward.examples)
    if (out.examples.size() < 5) out.examples.push_back(std::move(e));
  return out;
}

}  // namespace schemaind::harness
