#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/instance.hpp"

namespace schemaind {

enum class SolveStatus { Satisfied, Unsatisfied, BudgetExceeded };

// Backtracking matcher for a conjunction of atoms against a TableSource.
// Picks the most constrained literal next and solves variable-disjoint parts
// of the remaining conjunction independently. A budget of 0 means unlimited.
class Solver {
 public:
  static constexpr Value kUnbound = std::numeric_limits<Value>::max();

  Solver(const std::vector<Atom>& body, const TableSource& source, std::uint64_t node_budget = 0);

  // Pre-binds a variable (no-op if it does not occur in the body). Returns
  // false when it clashes with an earlier binding.
  bool bind(VarId var, Value value);
  void pin(VarId var, Value value);  // like bind, but also usable for head-only variables

  SolveStatus solve();  // bindings of a satisfying valuation are kept on success
  Value value_of(VarId var) const;  // kUnbound if unknown

  // Enumerates valuations of `vars` that extend to the whole body (a valuation
  // may be reported more than once).
  SolveStatus enumerate(const std::vector<VarId>& vars, const std::function<void(const std::vector<Value>&)>& emit);

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Arg {
    bool is_slot;
    std::uint32_t v;
  };
  struct Lit {
    const Table* table;
    std::vector<Arg> args;
  };

  int slot(VarId var) const;
  Value current(const Arg& a) const { return a.is_slot ? vals_[a.v] : a.v; }
  std::size_t estimate(const Lit& lit) const;
  bool unify(const Lit& lit, const Tuple& row);
  void undo(std::size_t mark);
  SolveStatus solve(std::vector<int>& lits);
  SolveStatus solve_connected(std::vector<int>& lits);
  SolveStatus enumerate_rec(std::vector<int>& lits, const std::vector<int>& targets,
                            const std::function<void(const std::vector<Value>&)>& emit);
  template <class F>
  SolveStatus for_candidates(int chosen, F&& body);
  std::vector<std::vector<int>> components(const std::vector<int>& lits) const;

  std::vector<Lit> lits_;
  std::vector<VarId> slot_vars_;
  std::vector<Value> vals_;
  std::vector<int> trail_;
  std::vector<Value> pinned_values_;
  std::vector<VarId> pinned_vars_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool conflict_ = false;
};

}  // namespace schemaind
