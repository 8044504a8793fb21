#include <chrono>
#include <future>
#include <map>
#include <set>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/harness.hpp"

namespace schemaind::harness {
namespace {

template <class T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng() % i]);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Fold of every example: a seeded shuffle dealt round robin.
std::vector<std::size_t> assign_folds(std::size_t n, std::size_t folds, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  seeded_shuffle(order, seed);
  std::vector<std::size_t> fold(n);
  for (std::size_t k = 0; k < n; ++k) fold[order[k]] = k % folds;
  return fold;
}

}  // namespace

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Metrics m;
  m.true_positives = tp;
  m.false_positives = fp;
  m.false_negatives = fn;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  return m;
}

Metrics metrics(const std::vector<Atom>& predicted, const ExampleSet& examples) {
  std::set<Atom> p(predicted.begin(), predicted.end());
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& e : examples.positives) (p.count(e) ? tp : fn) += 1;
  for (const auto& e : examples.negatives) fp += p.count(e);
  return metrics_from_counts(tp, fp, fn);
}

NegativeSample sample_negatives(const Instance& instance, const std::vector<Atom>& positives, double ratio,
                                std::uint64_t seed) {
  if (!(ratio > 0)) throw ConfigError("negative ratio must be positive");
  NegativeSample out;
  if (positives.empty()) return out;
  const std::size_t arity = positives.front().arity();
  const auto& rels = instance.schema().relations();
  std::vector<std::vector<SymbolId>> domains(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    std::set<Value> wanted;
    for (const auto& e : positives) wanted.insert(e.args[i].id);
    std::size_t best_hits = 0, best_size = 0;
    std::set<Value> best;
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (std::size_t c = 0; c < rels[r].arity(); ++c) {
        std::set<Value> column;
        for (const auto& row : instance.table_at(r).rows()) column.insert(row[c]);
        std::size_t hits = 0;
        for (Value v : wanted) hits += column.count(v);
        if (hits > best_hits || (hits == best_hits && hits > 0 && column.size() < best_size)) {
          best_hits = hits;
          best_size = column.size();
          best = std::move(column);
        }
      }
    for (Value v : wanted) best.insert(v);
    domains[i].assign(best.begin(), best.end());
    std::sort(domains[i].begin(), domains[i].end(),
              [](SymbolId a, SymbolId b) { return symbol_name(a) < symbol_name(b); });
  }
  std::set<Atom> pos(positives.begin(), positives.end());
  std::vector<Atom> pool;
  std::vector<std::size_t> idx(arity, 0);
  bool any = std::all_of(domains.begin(), domains.end(), [](const auto& d) { return !d.empty(); });
  while (any) {
    Atom a;
    a.predicate = positives.front().predicate;
    for (std::size_t i = 0; i < arity; ++i) a.args.push_back(Term::constant(domains[i][idx[i]]));
    if (!pos.count(a)) pool.push_back(std::move(a));
    std::size_t k = arity;
    while (k > 0 && ++idx[k - 1] == domains[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  out.pool_size = pool.size();
  auto want = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(positives.size())));
  if (want >= pool.size()) {
    out.exhausted = want > pool.size();
    out.negatives = std::move(pool);
    return out;
  }
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  seeded_shuffle(order, seed);
  order.resize(want);
  std::sort(order.begin(), order.end());
  for (auto i : order) out.negatives.push_back(pool[i]);
  return out;
}

ExperimentReport run_experiment(const Instance& instance, const ExampleSet& examples,
                                const learners::LearnerConfig& config, std::size_t folds, std::uint64_t seed) {
  config.validate();
  if (folds < 1) throw ConfigError("folds must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  report.folds = folds;
  report.seed = seed;

  auto run_fold = [&](std::size_t k, const std::vector<std::size_t>& pos_fold,
                      const std::vector<std::size_t>& neg_fold) {
    FoldResult fr;
    fr.fold = k;
    ExampleSet train, test;
    train.target = test.target = examples.target;
    train.arity = test.arity = examples.arity;
    for (std::size_t i = 0; i < examples.positives.size(); ++i)
      (pos_fold[i] == k ? test.positives : train.positives).push_back(examples.positives[i]);
    for (std::size_t i = 0; i < examples.negatives.size(); ++i)
      (neg_fold[i] == k ? test.negatives : train.negatives).push_back(examples.negatives[i]);
    fr.train_positives = train.positives.size();
    fr.train_negatives = train.negatives.size();
    fr.test_positives = test.positives.size();
    fr.test_negatives = test.negatives.size();
    if (train.positives.empty() || test.positives.empty()) {
      fr.skipped = true;
      return fr;
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto result = learners::learn(instance, train, config);
    fr.complete = result.complete;
    fr.definition = std::move(result.definition);
    std::vector<Atom> all = test.positives;
    all.insert(all.end(), test.negatives.begin(), test.negatives.end());
    fr.metrics = metrics(covers(instance, fr.definition, all), test);
    fr.seconds = seconds_since(t0);
    return fr;
  };

  std::vector<std::future<FoldResult>> jobs;
  if (folds >= 2) {
    auto pos_fold = assign_folds(examples.positives.size(), folds, seed);
    auto neg_fold = assign_folds(examples.negatives.size(), folds, seed + 1);
    for (std::size_t k = 0; k < folds; ++k)
      jobs.push_back(std::async(std::launch::async, run_fold, k, pos_fold, neg_fold));
  }
  auto full = std::async(std::launch::async, [&] { return learners::learn(instance, examples, config); });
  std::size_t tp = 0, fp = 0, fn = 0;
  for (auto& j : jobs) {
    report.fold_results.push_back(j.get());
    const auto& m = report.fold_results.back().metrics;
    tp += m.true_positives;
    fp += m.false_positives;
    fn += m.false_negatives;
  }
  report.full_definition = full.get().definition;
  if (folds < 2) {
    std::vector<Atom> all = examples.positives;
    all.insert(all.end(), examples.negatives.begin(), examples.negatives.end());
    report.pooled = metrics(covers(instance, report.full_definition, all), examples);
  } else {
    report.pooled = metrics_from_counts(tp, fp, fn);
    double p_sum = 0, r_sum = 0;
    std::size_t p_n = 0, r_n = 0;
    for (const auto& f : report.fold_results) {
      if (f.skipped) continue;
      if (f.metrics.precision) p_sum += *f.metrics.precision, ++p_n;
      r_sum += f.metrics.recall, ++r_n;
    }
    if (p_n) report.mean_precision = p_sum / p_n;
    if (r_n) report.mean_recall = r_sum / r_n;
  }
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace schemaind::harness
