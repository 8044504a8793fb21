#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "schemaind/chase.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/learners.hpp"

namespace schemaind::learners {
namespace {

bool consistent(const OrderedClause& clause, const TableSource& source, const std::vector<Atom>& negatives,
                std::size_t allowed) {
  std::size_t n = 0;
  for (const auto& e : negatives)
    if (entails(clause, source, e) && ++n > allowed) return false;
  return true;
}

OrderedClause prefix(const OrderedClause& clause, std::size_t length) {
  OrderedClause out;
  out.head = clause.head;
  out.body.assign(clause.body.begin(), clause.body.begin() + static_cast<long>(length));
  return out;
}

// Literal groups ordered by inclusion-class rank, then first body position.
std::vector<std::vector<std::size_t>> ranked_units(const OrderedClause& clause,
                                                   const saturation::Saturator& saturator) {
  auto units = chase::literal_groups(clause, saturator.instance().schema());
  std::stable_sort(units.begin(), units.end(), [&](const auto& a, const auto& b) {
    return saturator.class_rank(clause.body[a.front()].predicate) <
           saturator.class_rank(clause.body[b.front()].predicate);
  });
  return units;
}

template <class T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng() % i]);
}

class GroundCache {
 public:
  GroundCache(const saturation::Saturator& saturator, std::size_t bound) : saturator_(saturator), bound_(bound) {}
  const OrderedClause& get(const Atom& e) {
    auto it = cache_.find(e);
    if (it == cache_.end()) it = cache_.emplace(e, saturator_.ground(e, bound_)).first;
    return it->second;
  }

 private:
  const saturation::Saturator& saturator_;
  std::size_t bound_;
  std::map<Atom, OrderedClause> cache_;
};

// lgg with a variable head, minus the components that cannot reach the head.
std::optional<OrderedClause> generalize(const OrderedClause& a, const OrderedClause& b, const Schema& schema) {
  auto g = lgg(a, b, true);
  if (!g) return std::nullopt;
  return chase::prune_unconnected(*g, chase::literal_groups(*g, schema), false);
}

// The saturation with the example's constants replaced by head variables.
OrderedClause lift_head(const OrderedClause& ground) {
  std::map<SymbolId, VarId> vars;
  auto lift = [&](Term t) {
    if (t.is_constant())
      if (auto it = vars.find(t.id); it != vars.end()) return Term::variable(it->second);
    return t;
  };
  for (Term t : ground.head.args)
    if (t.is_constant()) vars.emplace(t.id, static_cast<VarId>(vars.size() + 1));
  OrderedClause out = ground;
  for (auto& t : out.head.args) t = lift(t);
  for (auto& l : out.body)
    for (auto& t : l.args) t = lift(t);
  return out;
}

std::vector<Atom> minus(const std::vector<Atom>& from, const std::vector<Atom>& remove) {
  std::set<Atom> drop(remove.begin(), remove.end());
  std::vector<Atom> out;
  for (const auto& e : from)
    if (!drop.count(e)) out.push_back(e);
  return out;
}

}  // namespace

std::optional<OrderedClause> lgg(const OrderedClause& c1, const OrderedClause& c2, bool variabilize_head) {
  if (c1.head.predicate != c2.head.predicate || c1.head.arity() != c2.head.arity()) return std::nullopt;
  std::map<std::pair<Term, Term>, VarId> table;
  VarId next = 1;
  auto var_for = [&](Term a, Term b) {
    auto [it, inserted] = table.emplace(std::pair{a, b}, next);
    if (inserted) ++next;
    return Term::variable(it->second);
  };
  auto gen = [&](Term a, Term b) {
    if (auto it = table.find({a, b}); it != table.end()) return Term::variable(it->second);
    if (a == b && a.is_constant()) return a;
    return var_for(a, b);
  };
  OrderedClause out;
  out.head.predicate = c1.head.predicate;
  for (std::size_t i = 0; i < c1.head.arity(); ++i) {
    Term a = c1.head.args[i], b = c2.head.args[i];
    out.head.args.push_back(variabilize_head ? var_for(a, b) : gen(a, b));
  }
  std::set<Atom> seen;
  for (const auto& l1 : c1.body)
    for (const auto& l2 : c2.body) {
      if (l1.predicate != l2.predicate || l1.arity() != l2.arity()) continue;
      Atom g;
      g.predicate = l1.predicate;
      for (std::size_t i = 0; i < l1.arity(); ++i) g.args.push_back(gen(l1.args[i], l2.args[i]));
      if (seen.insert(g).second) out.body.push_back(std::move(g));
    }
  return out;
}

std::optional<OrderedClause> rlgg(const Atom& e1, const Atom& e2, const saturation::Saturator& saturator,
                                  const LearnerConfig& config) {
  return lgg(saturator.ground(e1, config.maxvars), saturator.ground(e2, config.maxvars));
}

std::optional<std::size_t> find_blocking_atom(const OrderedClause& clause, const Atom& example,
                                              const TableSource& source) {
  if (entails(clause, source, example)) return std::nullopt;
  // Prefix satisfiability is monotone: once a prefix fails, longer ones fail too.
  std::size_t lo = 0, hi = clause.body.size();  // prefix(hi) fails
  if (!entails(prefix(clause, 0), source, example)) return 0;
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (entails(prefix(clause, mid), source, example))
      lo = mid;
    else
      hi = mid;
  }
  return hi - 1;
}

OrderedClause armg(const OrderedClause& bottom, const Atom& example, const TableSource& source,
                   const Schema* group_schema) {
  OrderedClause c = bottom;
  while (!c.body.empty()) {
    auto blocking = find_blocking_atom(c, example, source);
    if (!blocking) break;
    auto units = group_schema ? chase::literal_groups(c, *group_schema) : chase::singleton_units(c);
    std::vector<bool> keep(c.body.size(), true);
    for (const auto& u : units)
      if (std::find(u.begin(), u.end(), *blocking) != u.end())
        for (auto i : u) keep[i] = false;
    if (*blocking >= c.body.size()) keep.assign(c.body.size(), false);
    c = keep_literals(c, keep);
    auto rest = group_schema ? chase::literal_groups(c, *group_schema) : chase::singleton_units(c);
    c = chase::prune_unconnected(c, rest, true);
  }
  return c;
}

std::optional<OrderedClause> golem_learn_clause(const saturation::Saturator& saturator,
                                                const std::vector<Atom>& positives, const std::vector<Atom>& negatives,
                                                const LearnerConfig& config) {
  const Instance& instance = saturator.instance();
  const Schema& schema = instance.schema();
  const std::size_t allowed = config.allowed_negatives(negatives.size());
  GroundCache sat(saturator, config.maxvars);
  auto reduce = [&](const OrderedClause& c) {
    return chase::reduce_negative(c, instance, negatives, ranked_units(c, saturator), allowed);
  };

  std::vector<Atom> uncovered = positives;
  if (uncovered.size() >= 2) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < uncovered.size(); ++i)
      for (std::size_t j = i + 1; j < uncovered.size(); ++j) pairs.emplace_back(i, j);
    if (uncovered.size() > config.pair_bound && pairs.size() > config.pair_sample) {
      seeded_shuffle(pairs, config.seed);
      pairs.resize(config.pair_sample);
      std::sort(pairs.begin(), pairs.end());
    }
    std::vector<OrderedClause> candidates;
    for (auto [i, j] : pairs) {
      auto g = generalize(sat.get(uncovered[i]), sat.get(uncovered[j]), schema);
      if (g && consistent(*g, instance, negatives, allowed)) candidates.push_back(std::move(*g));
    }
    std::optional<OrderedClause> best;
    while (!candidates.empty()) {
      std::size_t top = 0, top_cover = 0;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto n = count_covered(instance, candidates[k], uncovered);
        if (k == 0 || n > top_cover) top = k, top_cover = n;
      }
      best = reduce(candidates[top]);
      uncovered = minus(uncovered, covers(instance, *best, uncovered));
      candidates.clear();
      for (const auto& e : uncovered) {
        auto g = generalize(*best, sat.get(e), schema);
        if (g && consistent(*g, instance, negatives, allowed)) candidates.push_back(std::move(*g));
      }
    }
    if (best) return best;
  }
  for (const auto& e : positives) {
    auto g = chase::prune_unconnected(lift_head(sat.get(e)), chase::literal_groups(lift_head(sat.get(e)), schema));
    if (consistent(g, instance, negatives, allowed)) return reduce(g);
  }
  return std::nullopt;
}

std::optional<OrderedClause> progolem_learn_clause(const saturation::Saturator& saturator,
                                                   const std::vector<Atom>& positives,
                                                   const std::vector<Atom>& negatives, const LearnerConfig& config) {
  const Instance& instance = saturator.instance();
  const Schema& schema = instance.schema();
  const bool grouped = config.bottom == BottomMode::MaxVars;
  const std::size_t allowed = config.allowed_negatives(negatives.size());
  struct Scored {
    OrderedClause clause;
    std::size_t pos = 0, neg = 0;
    long score() const { return static_cast<long>(pos) - static_cast<long>(neg); }
  };
  auto score = [&](OrderedClause c) {
    Scored s{std::move(c)};
    s.pos = count_covered(instance, s.clause, positives);
    s.neg = count_covered(instance, s.clause, negatives);
    return s;
  };

  for (std::size_t seed_index = 0; seed_index < positives.size(); ++seed_index) {
    const Atom& seed = positives[seed_index];
    OrderedClause bottom = grouped ? saturator.bottom_maxvars(seed, config.maxvars).clause
                                   : saturator.bottom_depth(seed, config.max_depth).clause;
    std::vector<Atom> others;
    for (std::size_t i = 0; i < positives.size(); ++i)
      if (i != seed_index) others.push_back(positives[i]);

    std::vector<Scored> beam{score(bottom)};
    std::optional<Scored> winner;
    auto consider = [&](const Scored& s) {
      if (s.neg <= allowed && (!winner || s.score() > winner->score())) winner = s;
    };
    consider(beam.front());
    long beam_best = beam.front().score();
    for (std::uint64_t round = 0; !others.empty(); ++round) {
      auto sample = others;
      seeded_shuffle(sample, config.seed * 1000003ULL + round);
      if (sample.size() > config.sample_size) sample.resize(config.sample_size);
      std::vector<Scored> candidates;
      std::unordered_set<std::string> seen;
      for (const auto& b : beam)
        for (const auto& e : sample) {
          OrderedClause a = armg(b.clause, e, instance, grouped ? &schema : nullptr);
          if (!seen.insert(canonical_key(a)).second) continue;
          candidates.push_back(score(std::move(a)));
          consider(candidates.back());
        }
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const Scored& a, const Scored& b) { return a.score() > b.score(); });
      if (candidates.empty() || candidates.front().score() <= beam_best) break;
      if (candidates.size() > config.beam_width) candidates.resize(config.beam_width);
      beam_best = candidates.front().score();
      beam = std::move(candidates);
    }
    if (!winner) continue;
    auto units = grouped ? chase::literal_groups(winner->clause, schema) : chase::singleton_units(winner->clause);
    return chase::reduce_negative(winner->clause, instance, negatives, units, allowed);
  }
  return std::nullopt;
}

}  // namespace schemaind::learners
