#include "schemaind/saturation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace schemaind::saturation {
namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool tuple_name_less(const Tuple& a, const Tuple& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Value x, Value y) { return symbol_name(x) < symbol_name(y); });
}

}  // namespace

std::vector<std::vector<std::string>> class_attribute_names(const Schema& schema) {
  const auto& rels = schema.relations();
  std::vector<std::size_t> offset(rels.size() + 1, 0);
  for (std::size_t r = 0; r < rels.size(); ++r) offset[r + 1] = offset[r] + rels[r].arity();
  UnionFind attrs(offset.back());
  for (const auto& ind : schema.inds()) {
    if (!ind.equality) continue;
    auto l = *schema.index_of(ind.lhs_relation), r = *schema.index_of(ind.rhs_relation);
    for (std::size_t k = 0; k < ind.lhs_attributes.size(); ++k)
      attrs.unite(offset[l] + *rels[l].position(ind.lhs_attributes[k]),
                  offset[r] + *rels[r].position(ind.rhs_attributes[k]));
  }
  std::vector<std::string> root_name(offset.back());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t p = 0; p < rels[r].arity(); ++p) {
      auto root = attrs.find(offset[r] + p);
      const auto& n = rels[r].attributes[p];
      if (root_name[root].empty() || n < root_name[root]) root_name[root] = n;
    }
  std::vector<std::vector<std::string>> out(rels.size());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t p = 0; p < rels[r].arity(); ++p) out[r].push_back(root_name[attrs.find(offset[r] + p)]);
  return out;
}

OrderedClause BottomClause::ground() const {
  Substitution inverse;
  for (const auto& [c, v] : varmap) inverse.emplace(v, Term::constant(c));
  return schemaind::apply(inverse, clause);
}

Saturator::Saturator(const Instance& instance) : instance_(instance) {
  const Schema& schema = instance.schema();
  const auto& rels = schema.relations();

  const auto names = class_attribute_names(schema);
  auto class_attr = [&](std::size_t r, std::size_t p) -> const std::string& { return names[r][p]; };

  struct Pending {
    RankedClass cls;
    std::set<std::string> attribute_names;
    std::vector<Group> groups;
  };
  std::vector<Pending> pending;
  for (const auto& names : inclusion_classes(schema)) {
    Pending pc;
    pc.cls.relations = names;
    std::vector<std::size_t> members;
    for (const auto& n : names) members.push_back(*schema.index_of(n));
    for (auto r : members)
      for (std::size_t p = 0; p < rels[r].arity(); ++p) pc.attribute_names.insert(class_attr(r, p));

    // Tuples of the class, linked through equality-IND value matches.
    std::vector<Member> tuples;
    std::vector<std::size_t> first(rels.size(), 0);
    for (auto r : members) {
      first[r] = tuples.size();
      for (std::size_t i = 0; i < instance.table_at(r).size(); ++i) tuples.push_back({r, i});
    }
    UnionFind uf(tuples.size());
    for (const auto& ind : schema.inds()) {
      if (!ind.equality) continue;
      auto l = *schema.index_of(ind.lhs_relation), r = *schema.index_of(ind.rhs_relation);
      if (std::find(members.begin(), members.end(), l) == members.end()) continue;
      std::vector<std::size_t> lp, rp;
      for (std::size_t k = 0; k < ind.lhs_attributes.size(); ++k) {
        lp.push_back(*rels[l].position(ind.lhs_attributes[k]));
        rp.push_back(*rels[r].position(ind.rhs_attributes[k]));
      }
      std::map<Tuple, std::size_t> by_key;
      const auto& rt = instance.table_at(r);
      for (std::size_t i = 0; i < rt.size(); ++i) {
        Tuple key;
        for (auto p : rp) key.push_back(rt.row(i)[p]);
        auto [it, inserted] = by_key.emplace(std::move(key), first[r] + i);
        if (!inserted) uf.unite(it->second, first[r] + i);
      }
      const auto& lt = instance.table_at(l);
      for (std::size_t i = 0; i < lt.size(); ++i) {
        Tuple key;
        for (auto p : lp) key.push_back(lt.row(i)[p]);
        auto it = by_key.find(key);
        if (it != by_key.end()) uf.unite(it->second, first[l] + i);
      }
    }
    std::map<std::size_t, std::vector<Member>> components;
    for (std::size_t t = 0; t < tuples.size(); ++t) components[uf.find(t)].push_back(tuples[t]);
    for (auto& [root, list] : components) {
      std::set<std::string> pairs;
      for (const auto& m : list) {
        const Tuple& row = instance.table_at(m.relation).row(m.row);
        for (std::size_t p = 0; p < row.size(); ++p) pairs.insert(class_attr(m.relation, p) + "=" + symbol_name(row[p]));
      }
      Group g;
      for (const auto& s : pairs) g.key += s + ";";
      std::sort(list.begin(), list.end(), [&](const Member& a, const Member& b) {
        if (rels[a.relation].name != rels[b.relation].name) return rels[a.relation].name < rels[b.relation].name;
        return tuple_name_less(instance.table_at(a.relation).row(a.row), instance.table_at(b.relation).row(b.row));
      });
      g.members = std::move(list);
      pc.groups.push_back(std::move(g));
    }
    std::stable_sort(pc.groups.begin(), pc.groups.end(), [](const Group& a, const Group& b) { return a.key < b.key; });
    for (const auto& g : pc.groups) pc.cls.key += g.key + "\n";
    pending.push_back(std::move(pc));
  }
  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.cls.key != b.cls.key) return a.cls.key < b.cls.key;
    if (a.attribute_names != b.attribute_names) return a.attribute_names < b.attribute_names;
    return a.cls.relations < b.cls.relations;
  });

  relation_rank_.assign(rels.size(), SIZE_MAX);
  for (std::size_t rank = 0; rank < pending.size(); ++rank) {
    for (const auto& n : pending[rank].cls.relations) {
      relation_rank_[*schema.index_of(n)] = rank;
      rank_by_symbol_[intern(n)] = rank;
    }
    for (auto& g : pending[rank].groups) {
      g.rank = rank;
      groups_.push_back(std::move(g));
    }
    classes_.push_back(std::move(pending[rank].cls));
  }
  for (std::size_t gid = 0; gid < groups_.size(); ++gid) {
    std::set<Value> seen;
    for (const auto& m : groups_[gid].members)
      for (Value v : instance.table_at(m.relation).row(m.row))
        if (seen.insert(v).second) groups_by_constant_[v].push_back(gid);
  }
}

std::size_t Saturator::class_rank(SymbolId relation) const {
  auto it = rank_by_symbol_.find(relation);
  return it == rank_by_symbol_.end() ? SIZE_MAX : it->second;
}

template <class Emit>
void Saturator::expand(const Atom& example, std::size_t bound, bool, Emit&& emit) const {
  std::unordered_set<Value> known;
  std::vector<Value> frontier;
  for (Term t : example.args)
    if (known.insert(t.id).second) frontier.push_back(t.id);
  std::vector<bool> added(groups_.size(), false);
  int iteration = 0;
  while (true) {
    ++iteration;
    std::vector<std::size_t> todo;
    for (Value c : frontier) {
      auto it = groups_by_constant_.find(c);
      if (it == groups_by_constant_.end()) continue;
      for (auto gid : it->second)
        if (!added[gid]) {
          added[gid] = true;
          todo.push_back(gid);
        }
    }
    std::sort(todo.begin(), todo.end());
    std::vector<Value> next;
    for (auto gid : todo)
      for (const auto& m : groups_[gid].members) {
        const Tuple& row = instance_.table_at(m.relation).row(m.row);
        for (Value v : row)
          if (known.insert(v).second) next.push_back(v);
        emit(m.relation, row, iteration);
      }
    frontier = std::move(next);
    if (todo.empty() || known.size() >= bound) break;
  }
}

BottomClause Saturator::bottom_maxvars(const Atom& example, std::size_t maxvars) const {
  BottomClause out;
  auto var_for = [&](Value c, int depth) {
    auto [it, inserted] = out.varmap.emplace(c, static_cast<VarId>(out.varmap.size() + 1));
    if (inserted) out.depth[it->second] = depth;
    return Term::variable(it->second);
  };
  out.clause.head.predicate = example.predicate;
  for (Term t : example.args) out.clause.head.args.push_back(var_for(t.id, 0));
  const auto& rels = instance_.schema().relations();
  expand(example, maxvars, false, [&](std::size_t rel, const Tuple& row, int iteration) {
    std::vector<Term> args;
    for (Value v : row) args.push_back(var_for(v, iteration));
    out.clause.body.emplace_back(rels[rel].name, std::move(args));
    out.provenance.emplace_back(intern(rels[rel].name), row);
  });
  return out;
}

OrderedClause Saturator::ground(const Atom& example, std::size_t max_constants) const {
  OrderedClause out;
  out.head = example;
  const auto& rels = instance_.schema().relations();
  expand(example, max_constants, true, [&](std::size_t rel, const Tuple& row, int) {
    std::vector<Term> args;
    for (Value v : row) args.push_back(Term::constant(v));
    out.body.emplace_back(rels[rel].name, std::move(args));
  });
  return out;
}

BottomClause Saturator::bottom_depth(const Atom& example, int max_depth) const {
  BottomClause out;
  auto var_for = [&](Value c, int depth) {
    auto [it, inserted] = out.varmap.emplace(c, static_cast<VarId>(out.varmap.size() + 1));
    if (inserted) out.depth[it->second] = depth;
    return Term::variable(it->second);
  };
  out.clause.head.predicate = example.predicate;
  for (Term t : example.args) out.clause.head.args.push_back(var_for(t.id, 0));
  const auto& rels = instance_.schema().relations();
  std::vector<std::vector<bool>> added(rels.size());
  for (std::size_t r = 0; r < rels.size(); ++r) added[r].assign(instance_.table_at(r).size(), false);
  for (int i = 1; i <= max_depth; ++i) {
    std::unordered_set<Value> known;
    for (const auto& [c, v] : out.varmap) known.insert(c);
    bool any = false;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const Table& table = instance_.table_at(r);
      for (std::size_t row = 0; row < table.size(); ++row) {
        if (added[r][row]) continue;
        const Tuple& t = table.row(row);
        if (std::none_of(t.begin(), t.end(), [&](Value v) { return known.count(v) > 0; })) continue;
        added[r][row] = true;
        any = true;
        std::vector<Term> args;
        for (Value v : t) args.push_back(var_for(v, i));
        out.clause.body.emplace_back(rels[r].name, std::move(args));
        out.provenance.emplace_back(intern(rels[r].name), t);
      }
    }
    if (!any) break;
  }
  return out;
}

std::vector<RankedClass> order_inclusion_classes(const Instance& instance) { return Saturator(instance).classes(); }

BottomClause bottom_clause_depth(const Atom& example, const Instance& instance, int max_depth) {
  return Saturator(instance).bottom_depth(example, max_depth);
}

BottomClause bottom_clause_maxvars(const Atom& example, const Instance& instance, std::size_t maxvars) {
  return Saturator(instance).bottom_maxvars(example, maxvars);
}

OrderedClause ground_saturation(const Atom& example, const Instance& instance, std::size_t max_constants) {
  return Saturator(instance).ground(example, max_constants);
}

}  // namespace schemaind::saturation
