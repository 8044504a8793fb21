#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "schemaind/evaluate.hpp"
#include "schemaind/learners.hpp"

namespace schemaind::learners {
namespace {

std::vector<VarId> sorted_variables(const OrderedClause& clause) {
  auto vs = variables_of(clause);
  return {vs.begin(), vs.end()};
}

// Calls `emit` with every assignment of `slots` slots to existing variables
// or a fresh one (fresh ids distinct per slot, counted from `next`).
template <class Emit>
void for_each_assignment(const std::vector<VarId>& existing, std::size_t slots, VarId next, Emit&& emit) {
  std::vector<std::size_t> choice(slots, 0);
  std::vector<Term> terms(slots);
  while (true) {
    VarId fresh = next;
    for (std::size_t i = 0; i < slots; ++i)
      terms[i] = choice[i] < existing.size() ? Term::variable(existing[choice[i]]) : Term::variable(fresh++);
    emit(terms);
    std::size_t k = slots;
    while (k > 0) {
      if (++choice[k - 1] <= existing.size()) break;
      choice[k - 1] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

std::vector<OrderedClause> unifications(const OrderedClause& clause) {
  std::vector<OrderedClause> out;
  auto vars = sorted_variables(clause);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      Substitution theta{{vars[j], Term::variable(vars[i])}};
      out.push_back(schemaind::apply(theta, clause));
    }
  return out;
}

std::vector<ClassAtom> build_class_atoms(const Schema& schema) {
  const auto names = saturation::class_attribute_names(schema);
  std::vector<ClassAtom> out;
  for (const auto& members : inclusion_classes(schema)) {
    ClassAtom atom;
    atom.relations = members;
    std::set<std::string> attrs;
    for (const auto& r : members)
      for (const auto& a : names[*schema.index_of(r)]) attrs.insert(a);
    atom.attributes.assign(attrs.begin(), attrs.end());
    for (const auto& r : members) {
      std::vector<std::size_t> slot;
      for (const auto& a : names[*schema.index_of(r)])
        slot.push_back(std::lower_bound(atom.attributes.begin(), atom.attributes.end(), a) - atom.attributes.begin());
      atom.slots.push_back(std::move(slot));
    }
    out.push_back(std::move(atom));
  }
  return out;
}

struct Coverage {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  long score() const { return static_cast<long>(positives) - static_cast<long>(negatives); }
};

Coverage coverage(const TableSource& source, const OrderedClause& clause, const std::vector<Atom>& positives,
                  const std::vector<Atom>& negatives) {
  return {count_covered(source, clause, positives), count_covered(source, clause, negatives)};
}

// Greedy descent shared by both FOIL variants. Moves on equal scores while the
// clause is still inconsistent; returns nothing when it gets stuck.
template <class Children>
std::optional<OrderedClause> descend(const TableSource& source, RefinementNode node,
                                     const std::vector<Atom>& positives, const std::vector<Atom>& negatives,
                                     const LearnerConfig& config, Children&& children) {
  const std::size_t allowed = config.allowed_negatives(negatives.size());
  Coverage cur = coverage(source, node.clause, positives, negatives);
  while (true) {
    if (cur.positives == 0) return std::nullopt;
    if (cur.negatives <= allowed) return node.clause;
    std::optional<RefinementNode> best;
    Coverage best_cov;
    for (auto& child : children(node)) {
      Coverage c = coverage(source, child.clause, positives, negatives);
      if (c.positives == 0) continue;
      if (!best || c.score() > best_cov.score()) {
        best = std::move(child);
        best_cov = c;
      }
    }
    if (!best || best_cov.score() < cur.score()) return std::nullopt;
    node = std::move(*best);
    cur = best_cov;
  }
}

}  // namespace

std::vector<ClassAtom> class_atoms(const Schema& schema) { return build_class_atoms(schema); }

std::vector<ClassAtom> class_atoms(const saturation::Saturator& saturator) {
  auto atoms = build_class_atoms(saturator.instance().schema());
  std::stable_sort(atoms.begin(), atoms.end(), [&](const ClassAtom& a, const ClassAtom& b) {
    return saturator.class_rank(intern(a.relations.front())) < saturator.class_rank(intern(b.relations.front()));
  });
  return atoms;
}

OrderedClause most_general_clause(SymbolId target, std::size_t arity) {
  OrderedClause c;
  c.head.predicate = target;
  for (std::size_t i = 0; i < arity; ++i) c.head.args.push_back(Term::variable(static_cast<VarId>(i + 1)));
  return c;
}

std::vector<OrderedClause> refine(const OrderedClause& clause, const Schema& schema, const LearnerConfig& config) {
  std::vector<OrderedClause> out;
  std::unordered_set<std::string> seen;
  auto push = [&](OrderedClause c) {
    if (seen.insert(canonical_key(c)).second) out.push_back(std::move(c));
  };
  if (clause.body.size() < config.clause_length) {
    auto vars = sorted_variables(clause);
    VarId next = max_variable(clause) + 1;
    for (const auto& rel : schema.relations())
      for_each_assignment(vars, rel.arity(), next, [&](const std::vector<Term>& args) {
        OrderedClause c = clause;
        c.body.emplace_back(rel.name, args);
        push(std::move(c));
      });
  }
  for (auto& c : unifications(clause)) push(std::move(c));
  return out;
}

std::vector<RefinementNode> refine_modified(const RefinementNode& node, const std::vector<ClassAtom>& atoms,
                                            const LearnerConfig& config) {
  std::vector<RefinementNode> out;
  std::unordered_set<std::string> seen;
  auto push = [&](OrderedClause c, std::size_t classes) {
    if (seen.insert(canonical_key(c)).second) out.push_back({std::move(c), 0, classes, -1});
  };
  if (node.classes < config.max_inclusion_classes) {
    auto vars = sorted_variables(node.clause);
    VarId next = max_variable(node.clause) + 1;
    for (const auto& atom : atoms)
      for_each_assignment(vars, atom.attributes.size(), next, [&](const std::vector<Term>& terms) {
        OrderedClause c = node.clause;
        for (std::size_t r = 0; r < atom.relations.size(); ++r) {
          std::vector<Term> args;
          for (auto s : atom.slots[r]) args.push_back(terms[s]);
          c.body.emplace_back(atom.relations[r], std::move(args));
        }
        push(std::move(c), node.classes + 1);
      });
  }
  for (auto& c : unifications(node.clause)) push(std::move(c), node.classes);
  return out;
}

std::vector<RefinementNode> enumerate_hypotheses(const Schema& schema, SymbolId target, std::size_t arity,
                                                 const LearnerConfig& config, std::size_t limit) {
  const bool modified = config.algorithm == Algorithm::ModifiedFoil;
  const auto atoms = modified ? class_atoms(schema) : std::vector<ClassAtom>{};
  std::vector<RefinementNode> nodes;
  std::unordered_set<std::string> seen;
  RefinementNode root{canonical(most_general_clause(target, arity)), 0, 0, -1};
  seen.insert(canonical_key(root.clause));
  nodes.push_back(root);
  for (std::size_t i = 0; i < nodes.size() && nodes.size() < limit; ++i) {
    std::vector<RefinementNode> children;
    if (modified) {
      children = refine_modified(nodes[i], atoms, config);
    } else {
      for (auto& c : refine(nodes[i].clause, schema, config)) {
        std::size_t len = c.body.size();
        children.push_back({std::move(c), 0, len, -1});
      }
    }
    for (auto& child : children) {
      child.clause = canonical(child.clause);
      if (!seen.insert(canonical_key(child.clause)).second) continue;
      child.parent = static_cast<long>(i);
      nodes.push_back(std::move(child));
    }
  }
  return nodes;
}

std::optional<OrderedClause> foil_learn_clause(const Instance& instance, SymbolId target, std::size_t arity,
                                               const std::vector<Atom>& positives, const std::vector<Atom>& negatives,
                                               const LearnerConfig& config) {
  RefinementNode root{most_general_clause(target, arity), 0, 0, -1};
  return descend(instance, root, positives, negatives, config, [&](const RefinementNode& n) {
    std::vector<RefinementNode> out;
    for (auto& c : refine(n.clause, instance.schema(), config)) out.push_back({std::move(c), 0, 0, -1});
    return out;
  });
}

std::optional<OrderedClause> modified_foil_learn_clause(const saturation::Saturator& saturator, SymbolId target,
                                                        std::size_t arity, const std::vector<Atom>& positives,
                                                        const std::vector<Atom>& negatives,
                                                        const LearnerConfig& config) {
  const auto atoms = class_atoms(saturator);
  RefinementNode root{most_general_clause(target, arity), 0, 0, -1};
  return descend(saturator.instance(), root, positives, negatives, config,
                 [&](const RefinementNode& n) { return refine_modified(n, atoms, config); });
}

}  // namespace schemaind::learners
