#include "schemaind/solver.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace schemaind {

Solver::Solver(const std::vector<Atom>& body, const TableSource& source, std::uint64_t node_budget)
    : budget_(node_budget) {
  lits_.reserve(body.size());
  for (const auto& atom : body) {
    Lit lit;
    lit.table = source.find(atom.predicate);
    if (lit.table && lit.table->arity() != atom.arity()) lit.table = nullptr;
    for (Term t : atom.args) {
      if (t.is_constant()) {
        lit.args.push_back({false, t.id});
        continue;
      }
      int s = slot(t.id);
      if (s < 0) {
        s = static_cast<int>(slot_vars_.size());
        slot_vars_.push_back(t.id);
      }
      lit.args.push_back({true, static_cast<std::uint32_t>(s)});
    }
    lits_.push_back(std::move(lit));
  }
  vals_.assign(slot_vars_.size(), kUnbound);
}

int Solver::slot(VarId var) const {
  auto it = std::find(slot_vars_.begin(), slot_vars_.end(), var);
  return it == slot_vars_.end() ? -1 : static_cast<int>(it - slot_vars_.begin());
}

bool Solver::bind(VarId var, Value value) {
  int s = slot(var);
  if (s < 0) return true;
  if (vals_[s] != kUnbound) return vals_[s] == value;
  vals_[s] = value;
  return true;
}

void Solver::pin(VarId var, Value value) {
  for (std::size_t i = 0; i < pinned_vars_.size(); ++i)
    if (pinned_vars_[i] == var && pinned_values_[i] != value) conflict_ = true;
  pinned_vars_.push_back(var);
  pinned_values_.push_back(value);
  if (!bind(var, value)) conflict_ = true;
}

Value Solver::value_of(VarId var) const {
  int s = slot(var);
  if (s >= 0) return vals_[s];
  for (std::size_t i = 0; i < pinned_vars_.size(); ++i)
    if (pinned_vars_[i] == var) return pinned_values_[i];
  return kUnbound;
}

std::size_t Solver::estimate(const Lit& lit) const {
  if (!lit.table) return 0;
  std::size_t best = lit.table->size();
  bool all_bound = true;
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    Value v = current(lit.args[i]);
    if (v == kUnbound) {
      all_bound = false;
      continue;
    }
    best = std::min(best, lit.table->lookup(i, v).size());
    if (best == 0) return 0;
  }
  if (all_bound) {
    Tuple t(lit.args.size());
    for (std::size_t i = 0; i < lit.args.size(); ++i) t[i] = current(lit.args[i]);
    return lit.table->contains(t) ? 1 : 0;
  }
  // Unbound literals rank after any bound literal with the same count.
  return best;
}

bool Solver::unify(const Lit& lit, const Tuple& row) {
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    const Arg& a = lit.args[i];
    if (!a.is_slot) {
      if (a.v != row[i]) return false;
      continue;
    }
    Value& cur = vals_[a.v];
    if (cur == kUnbound) {
      cur = row[i];
      trail_.push_back(static_cast<int>(a.v));
    } else if (cur != row[i]) {
      return false;
    }
  }
  return true;
}

void Solver::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    vals_[trail_.back()] = kUnbound;
    trail_.pop_back();
  }
}

std::vector<std::vector<int>> Solver::components(const std::vector<int>& lits) const {
  std::vector<int> parent(lits.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> owner(slot_vars_.size(), -1);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (const Arg& a : lits_[lits[i]].args) {
      if (!a.is_slot || vals_[a.v] != kUnbound) continue;
      if (owner[a.v] < 0) {
        owner[a.v] = static_cast<int>(i);
      } else {
        int x = root(owner[a.v]), y = root(static_cast<int>(i));
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> index(lits.size(), -1);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    int r = root(static_cast<int>(i));
    if (index[r] < 0) {
      index[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[index[r]].push_back(lits[i]);
  }
  return groups;
}

template <class F>
SolveStatus Solver::for_candidates(int chosen, F&& body) {
  const Lit& lit = lits_[chosen];
  const Table& table = *lit.table;
  std::span<const std::uint32_t> best;
  bool have_index = false;
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    Value v = current(lit.args[i]);
    if (v == kUnbound) continue;
    auto rows = table.lookup(i, v);
    if (!have_index || rows.size() < best.size()) {
      best = rows;
      have_index = true;
    }
  }
  std::size_t mark = trail_.size();
  auto attempt = [&](const Tuple& row) -> std::optional<SolveStatus> {
    if (!unify(lit, row)) {
      undo(mark);
      return std::nullopt;
    }
    SolveStatus st = body();
    if (st == SolveStatus::Satisfied) return st;
    undo(mark);
    if (st == SolveStatus::BudgetExceeded) return st;
    return std::nullopt;
  };
  if (have_index) {
    for (auto r : best)
      if (auto st = attempt(table.row(r))) return *st;
  } else {
    for (const auto& row : table.rows())
      if (auto st = attempt(row)) return *st;
  }
  return SolveStatus::Unsatisfied;
}

SolveStatus Solver::solve(std::vector<int>& lits) {
  if (lits.empty()) return SolveStatus::Satisfied;
  if (budget_ && ++nodes_ > budget_) return SolveStatus::BudgetExceeded;
  if (lits.size() > 1) {
    auto comps = components(lits);
    if (comps.size() > 1) {
      std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
      std::size_t mark = trail_.size();
      for (auto& comp : comps) {
        SolveStatus st = solve_connected(comp);
        if (st != SolveStatus::Satisfied) {
          undo(mark);
          return st;
        }
      }
      return SolveStatus::Satisfied;
    }
  }
  return solve_connected(lits);
}

SolveStatus Solver::solve_connected(std::vector<int>& lits) {
  std::size_t best_pos = 0;
  std::size_t best_est = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    std::size_t e = estimate(lits_[lits[i]]);
    if (e == 0) return SolveStatus::Unsatisfied;
    if (e < best_est) {
      best_est = e;
      best_pos = i;
    }
  }
  int chosen = lits[best_pos];
  std::vector<int> rest;
  rest.reserve(lits.size() - 1);
  for (std::size_t i = 0; i < lits.size(); ++i)
    if (i != best_pos) rest.push_back(lits[i]);
  return for_candidates(chosen, [&] { return solve(rest); });
}

SolveStatus Solver::solve() {
  if (conflict_) return SolveStatus::Unsatisfied;
  std::vector<int> all(lits_.size());
  std::iota(all.begin(), all.end(), 0);
  return solve(all);
}

SolveStatus Solver::enumerate_rec(std::vector<int>& lits, const std::vector<int>& targets,
                                  const std::function<void(const std::vector<Value>&)>& emit) {
  if (budget_ && ++nodes_ > budget_) return SolveStatus::BudgetExceeded;
  bool all_bound = std::all_of(targets.begin(), targets.end(), [this](int s) { return s < 0 || vals_[s] != kUnbound; });
  if (all_bound) {
    std::size_t mark = trail_.size();
    SolveStatus st = solve(lits);
    if (st == SolveStatus::Satisfied) {
      std::vector<Value> out;
      out.reserve(targets.size());
      for (int s : targets) out.push_back(s < 0 ? kUnbound : vals_[s]);
      emit(out);
    }
    undo(mark);
    return st == SolveStatus::BudgetExceeded ? st : SolveStatus::Unsatisfied;
  }
  std::size_t best_pos = lits.size();
  std::size_t best_est = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Lit& lit = lits_[lits[i]];
    std::size_t e = estimate(lit);
    if (e == 0) return SolveStatus::Unsatisfied;
    bool has_target = std::any_of(lit.args.begin(), lit.args.end(), [&](const Arg& a) {
      return a.is_slot && vals_[a.v] == kUnbound && std::find(targets.begin(), targets.end(), a.v) != targets.end();
    });
    if (has_target && e < best_est) {
      best_est = e;
      best_pos = i;
    }
  }
  if (best_pos == lits.size()) return SolveStatus::Unsatisfied;
  int chosen = lits[best_pos];
  std::vector<int> rest;
  for (std::size_t i = 0; i < lits.size(); ++i)
    if (i != best_pos) rest.push_back(lits[i]);
  SolveStatus outcome = SolveStatus::Unsatisfied;
  // Returning anything but Satisfied keeps for_candidates iterating.
  for_candidates(chosen, [&] {
    SolveStatus st = enumerate_rec(rest, targets, emit);
    if (st == SolveStatus::BudgetExceeded) {
      outcome = st;
      return SolveStatus::BudgetExceeded;
    }
    return SolveStatus::Unsatisfied;
  });
  return outcome;
}

SolveStatus Solver::enumerate(const std::vector<VarId>& vars,
                              const std::function<void(const std::vector<Value>&)>& emit) {
  if (conflict_) return SolveStatus::Unsatisfied;
  std::vector<int> targets;
  for (VarId v : vars) targets.push_back(slot(v));
  std::vector<int> all(lits_.size());
  std::iota(all.begin(), all.end(), 0);
  return enumerate_rec(all, targets, emit);
}

}  // namespace schemaind
