#include "schemaind/chase.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "schemaind/errors.hpp"
#include "schemaind/evaluate.hpp"
#include "schemaind/solver.hpp"

namespace schemaind::chase {
namespace {

struct PartnerRule {
  std::vector<std::size_t> mine;
  SymbolId partner;
  std::size_t partner_arity;
  std::vector<std::size_t> theirs;
};

struct FdRule {
  std::vector<std::size_t> lhs;
  std::size_t rhs;
};

std::vector<std::size_t> positions_of(const RelationDecl& rel, const std::vector<std::string>& attrs) {
  std::vector<std::size_t> out;
  for (const auto& a : attrs) out.push_back(*rel.position(a));
  return out;
}

// Equality-IND and FD rules indexed by predicate.
struct Rules {
  std::unordered_map<SymbolId, std::vector<PartnerRule>> partners;
  std::unordered_map<SymbolId, std::vector<FdRule>> fds;

  explicit Rules(const Schema& schema) {
    for (const auto& ind : schema.inds()) {
      if (!ind.equality) continue;
      const auto& l = schema.relation(ind.lhs_relation);
      const auto& r = schema.relation(ind.rhs_relation);
      auto lp = positions_of(l, ind.lhs_attributes), rp = positions_of(r, ind.rhs_attributes);
      partners[intern(l.name)].push_back({lp, intern(r.name), r.arity(), rp});
      partners[intern(r.name)].push_back({rp, intern(l.name), l.arity(), lp});
    }
    for (const auto& fd : schema.fds()) {
      const auto& rel = schema.relation(fd.relation);
      auto lhs = positions_of(rel, fd.lhs);
      for (const auto& a : fd.rhs) {
        auto p = *rel.position(a);
        if (std::find(lhs.begin(), lhs.end(), p) == lhs.end()) fds[intern(rel.name)].push_back({lhs, p});
      }
    }
  }

  const std::vector<PartnerRule>& partners_of(SymbolId pred) const {
    static const std::vector<PartnerRule> none;
    auto it = partners.find(pred);
    return it == partners.end() ? none : it->second;
  }
};

bool matches(const Atom& a, const std::vector<std::size_t>& apos, const Atom& b, const std::vector<std::size_t>& bpos) {
  for (std::size_t k = 0; k < apos.size(); ++k)
    if (a.args[apos[k]] != b.args[bpos[k]]) return false;
  return true;
}

OrderedClause chase_with(const OrderedClause& clause, const Rules& rules, std::size_t guard) {
  OrderedClause out = clause;
  VarId next = max_variable(clause) + 1;
  std::size_t added = 0;
  for (std::size_t i = 0; i < out.body.size(); ++i) {
    std::size_t insert_at = i + 1;
    for (const auto& rule : rules.partners_of(out.body[i].predicate)) {
      if (out.body[i].arity() <= *std::max_element(rule.mine.begin(), rule.mine.end())) continue;
      bool present = std::any_of(out.body.begin(), out.body.end(), [&](const Atom& other) {
        return other.predicate == rule.partner && other.arity() == rule.partner_arity &&
               matches(out.body[i], rule.mine, other, rule.theirs);
      });
      if (present) continue;
      std::vector<Term> args(rule.partner_arity);
      std::vector<bool> set(rule.partner_arity, false);
      for (std::size_t k = 0; k < rule.theirs.size(); ++k) {
        args[rule.theirs[k]] = out.body[i].args[rule.mine[k]];
        set[rule.theirs[k]] = true;
      }
      for (std::size_t k = 0; k < args.size(); ++k)
        if (!set[k]) args[k] = Term::variable(next++);
      out.body.insert(out.body.begin() + static_cast<std::ptrdiff_t>(insert_at++), Atom(rule.partner, std::move(args)));
      if (++added > guard) throw InternalError("chase did not terminate within its round guard");
    }
  }
  return out;
}

std::size_t guard_for(const Schema& schema, const OrderedClause& clause) {
  return std::max<std::size_t>(1, schema.relations().size()) * std::max<std::size_t>(1, schema.inds().size()) *
         std::max<std::size_t>(1, clause.body.size());
}

void dedupe(OrderedClause& c) {
  std::vector<Atom> out;
  AtomSet seen;
  for (auto& a : c.body)
    if (seen.insert(a).second) out.push_back(std::move(a));
  c.body = std::move(out);
}

constexpr Value kFrozen = 0x80000000u;

Value freeze(Term t) { return t.is_constant() ? t.id : (t.id | kFrozen); }
Term thaw(Value v) { return (v & kFrozen) ? Term::variable(v & ~kFrozen) : Term::constant(v); }

bool covers_at_most(const OrderedClause& clause, const TableSource& source, const std::vector<Atom>& examples,
                    std::size_t limit) {
  std::size_t n = 0;
  for (const auto& e : examples)
    if (entails(clause, source, e) && ++n > limit) return false;
  return true;
}

}  // namespace

OrderedClause chase_clause(const OrderedClause& clause, const Schema& schema) {
  Rules rules(schema);
  return chase_with(clause, rules, guard_for(schema, clause));
}

FullChase full_chase(const OrderedClause& clause, const Schema& schema) {
  Rules rules(schema);
  FullChase result{clause, true};
  std::set<VarId> head_vars = variables_of(clause.head);
  const std::size_t max_rounds = 4 * guard_for(schema, clause) + 8;
  for (std::size_t round = 0;; ++round) {
    if (round > max_rounds) throw InternalError("full chase did not terminate");
    OrderedClause& c = result.clause;
    c = chase_with(c, rules, guard_for(schema, c));
    bool merged = false;
    for (std::size_t i = 0; i < c.body.size() && !merged; ++i) {
      auto it = rules.fds.find(c.body[i].predicate);
      if (it == rules.fds.end()) continue;
      for (std::size_t j = i + 1; j < c.body.size() && !merged; ++j) {
        if (c.body[j].predicate != c.body[i].predicate || c.body[j].arity() != c.body[i].arity()) continue;
        for (const auto& fd : it->second) {
          if (!matches(c.body[i], fd.lhs, c.body[j], fd.lhs)) continue;
          Term a = c.body[i].args[fd.rhs], b = c.body[j].args[fd.rhs];
          if (a == b) continue;
          if (a.is_constant() && b.is_constant()) {
            result.consistent = false;
            return result;
          }
          // keep `a`, replace `b`
          auto rank = [&](Term t) { return t.is_constant() ? 0 : head_vars.count(t.id) ? 1 : 2; };
          if (rank(b) < rank(a) || (rank(a) == rank(b) && b.id < a.id)) std::swap(a, b);
          c = schemaind::apply(Substitution{{b.id, a}}, c);
          merged = true;
          break;
        }
      }
    }
    dedupe(c);
    if (!merged) break;
  }
  return result;
}

Subsumption theta_subsumes(const OrderedClause& c, const OrderedClause& d, std::uint64_t budget) {
  Subsumption out;
  if (c.head.predicate != d.head.predicate || c.head.arity() != d.head.arity()) return out;
  TableSet frozen;
  for (const auto& lit : d.body) {
    Tuple t;
    for (Term x : lit.args) t.push_back(freeze(x));
    frozen.table(lit.predicate, lit.arity()).insert(std::move(t));
  }
  Solver solver(c.body, frozen, budget);
  for (std::size_t i = 0; i < c.head.arity(); ++i) {
    Term ct = c.head.args[i];
    Value dv = freeze(d.head.args[i]);
    if (ct.is_constant()) {
      if (dv != ct.id) return out;
      continue;
    }
    solver.pin(ct.id, dv);
  }
  SolveStatus st = solver.solve();
  if (st == SolveStatus::BudgetExceeded) {
    out.outcome = Outcome::Unknown;
    return out;
  }
  if (st == SolveStatus::Unsatisfied) return out;
  out.outcome = Outcome::Yes;
  for (VarId v : variables_of(c)) {
    Value val = solver.value_of(v);
    if (val != Solver::kUnbound) out.theta.emplace(v, thaw(val));
  }
  return out;
}

EquivalenceVerdict clause_equivalent(const OrderedClause& c, const OrderedClause& d, const Schema& schema,
                                     std::uint64_t budget) {
  EquivalenceVerdict v;
  FullChase fc = full_chase(c, schema), fd = full_chase(d, schema);
  if (!fc.consistent || !fd.consistent) {
    v.verdict = fc.consistent == fd.consistent ? Verdict::Equivalent : Verdict::NotEquivalent;
    v.diagnostics = fc.consistent == fd.consistent ? "both clauses contradict the FDs"
                                                   : "exactly one clause contradicts the FDs";
    return v;
  }
  Subsumption f = theta_subsumes(c, fd.clause, budget);
  Subsumption b = theta_subsumes(d, fc.clause, budget);
  if (f) v.forward = f.theta;
  if (b) v.backward = b.theta;
  if (f.outcome == Outcome::No || b.outcome == Outcome::No) {
    v.verdict = Verdict::NotEquivalent;
    v.diagnostics = f.outcome == Outcome::No ? "first clause does not map into the chase of the second"
                                             : "second clause does not map into the chase of the first";
  } else if (f.outcome == Outcome::Unknown || b.outcome == Outcome::Unknown) {
    v.verdict = Verdict::Unknown;
    v.diagnostics = "subsumption search exceeded its node budget";
  } else {
    v.verdict = Verdict::Equivalent;
  }
  return v;
}

EquivalenceVerdict clause_equivalent(const OrderedClause& c, const OrderedClause& d,
                                     const transform::Transformation& tau, std::uint64_t budget) {
  OrderedClause mapped = transform::map_clause(tau, c, transform::Direction::Forward);
  return clause_equivalent(mapped, d, tau.target(), budget);
}

std::vector<std::vector<std::size_t>> literal_groups(const OrderedClause& clause, const Schema& schema) {
  Rules rules(schema);
  const std::size_t n = clause.body.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& rule : rules.partners_of(clause.body[i].predicate))
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || clause.body[j].predicate != rule.partner || clause.body[j].arity() != rule.partner_arity) continue;
        if (!matches(clause.body[i], rule.mine, clause.body[j], rule.theirs)) continue;
        auto a = root(i), b = root(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> index(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = root(i);
    if (index[r] < 0) {
      index[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[index[r]].push_back(i);
  }
  return groups;
}

std::vector<std::vector<std::size_t>> singleton_units(const OrderedClause& clause) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < clause.body.size(); ++i) out.push_back({i});
  return out;
}

std::vector<bool> head_connected(const OrderedClause& clause, const std::vector<std::vector<std::size_t>>& units,
                                 bool ordered) {
  std::set<VarId> reached = variables_of(clause.head);
  std::vector<std::set<VarId>> unit_vars;
  for (const auto& u : units) {
    std::set<VarId> vs;
    for (auto i : u) {
      auto lv = variables_of(clause.body[i]);
      vs.insert(lv.begin(), lv.end());
    }
    unit_vars.push_back(std::move(vs));
  }
  auto touches = [&](const std::set<VarId>& vs) {
    return std::any_of(vs.begin(), vs.end(), [&](VarId v) { return reached.count(v) > 0; });
  };
  std::vector<bool> connected(units.size(), false);
  if (ordered) {
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    auto first = [&](std::size_t u) { return units[u].empty() ? SIZE_MAX : *std::min_element(units[u].begin(), units[u].end()); };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return first(a) < first(b); });
    for (auto u : order)
      if (touches(unit_vars[u])) {
        connected[u] = true;
        reached.insert(unit_vars[u].begin(), unit_vars[u].end());
      }
    return connected;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t u = 0; u < units.size(); ++u)
      if (!connected[u] && touches(unit_vars[u])) {
        connected[u] = true;
        reached.insert(unit_vars[u].begin(), unit_vars[u].end());
        grew = true;
      }
  }
  return connected;
}

OrderedClause prune_unconnected(const OrderedClause& clause, const std::vector<std::vector<std::size_t>>& units,
                                bool ordered) {
  auto connected = head_connected(clause, units, ordered);
  std::vector<bool> keep(clause.body.size(), false);
  for (std::size_t u = 0; u < units.size(); ++u)
    if (connected[u])
      for (auto i : units[u]) keep[i] = true;
  return keep_literals(clause, keep);
}

namespace {

// Connectivity over the literals still present, with units restricted to them.
std::vector<bool> prune_mask(const OrderedClause& clause, const std::vector<std::vector<std::size_t>>& units,
                             std::vector<bool> present) {
  std::vector<std::vector<std::size_t>> live;
  for (const auto& u : units) {
    std::vector<std::size_t> l;
    for (auto i : u)
      if (present[i]) l.push_back(i);
    if (!l.empty()) live.push_back(std::move(l));
  }
  auto connected = head_connected(clause, live, false);
  for (std::size_t u = 0; u < live.size(); ++u)
    if (!connected[u])
      for (auto i : live[u]) present[i] = false;
  return present;
}

}  // namespace

OrderedClause reduce_negative(const OrderedClause& clause, const TableSource& source, const std::vector<Atom>& negatives,
                              const std::vector<std::vector<std::size_t>>& units, std::size_t max_negatives) {
  if (!covers_at_most(clause, source, negatives, max_negatives))
    throw ConstraintViolation("negative reduction needs a consistent clause: " + to_string(clause));
  std::vector<bool> present(clause.body.size(), true);
  auto acceptable = [&](const std::vector<bool>& mask) {
    OrderedClause cand = keep_literals(clause, mask);
    return range_restricted(cand) && covers_at_most(cand, source, negatives, max_negatives);
  };
  {
    auto pruned = prune_mask(clause, units, present);
    if (pruned != present && acceptable(pruned)) present = pruned;
  }
  for (const auto& u : units) {
    if (std::none_of(u.begin(), u.end(), [&](std::size_t i) { return present[i]; })) continue;
    auto trial = present;
    for (auto i : u) trial[i] = false;
    trial = prune_mask(clause, units, trial);
    if (acceptable(trial)) present = std::move(trial);
  }
  return keep_literals(clause, present);
}

OrderedClause minimize_clause(const OrderedClause& clause, const Schema& schema, bool* complete, std::uint64_t budget) {
  FullChase chased = full_chase(clause, schema);
  if (!chased.consistent) return canonical(clause);
  OrderedClause current = chased.clause;
  for (std::size_t k = current.body.size(); k-- > 0;) {
    OrderedClause cand = current;
    cand.body.erase(cand.body.begin() + static_cast<std::ptrdiff_t>(k));
    if (!range_restricted(cand)) continue;
    FullChase cc = full_chase(cand, schema);
    if (!cc.consistent) continue;
    Subsumption s = theta_subsumes(current, cc.clause, budget);
    if (s.outcome == Outcome::Unknown && complete) *complete = false;
    if (s) current = std::move(cand);
  }
  return canonical(current);
}

MinimizedDefinition minimize_definition(const HornDefinition& def, const Schema& schema, std::uint64_t budget) {
  MinimizedDefinition out;
  std::vector<OrderedClause> clauses;
  for (const auto& c : def.clauses) clauses.push_back(minimize_clause(c, schema, &out.complete, budget));
  std::vector<bool> kept(clauses.size(), true);
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    FullChase cj = full_chase(clauses[j], schema);
    if (!cj.consistent) {
      kept[j] = false;
      continue;
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      if (i == j || !kept[i]) continue;
      Subsumption s = theta_subsumes(clauses[i], cj.clause, budget);
      if (s.outcome == Outcome::Unknown) out.complete = false;
      if (s) {
        kept[j] = false;
        break;
      }
    }
  }
  for (std::size_t j = 0; j < clauses.size(); ++j)
    if (kept[j]) out.definition.clauses.push_back(std::move(clauses[j]));
  return out;
}

Verdict definitions_equivalent(const HornDefinition& a, const HornDefinition& b, const Schema& schema,
                               std::uint64_t budget) {
  bool unknown = false;
  auto covered = [&](const HornDefinition& from, const HornDefinition& into) {
    for (const auto& x : from.clauses) {
      FullChase cx = full_chase(x, schema);
      if (!cx.consistent) continue;
      bool found = false;
      for (const auto& y : into.clauses) {
        Subsumption s = theta_subsumes(y, cx.clause, budget);
        if (s.outcome == Outcome::Unknown) unknown = true;
        if (s) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  bool ok = covered(a, b) && covered(b, a);
  if (ok) return Verdict::Equivalent;
  return unknown ? Verdict::Unknown : Verdict::NotEquivalent;
}

}  // namespace schemaind::chase
