#include "schemaind/schema.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "schemaind/errors.hpp"

namespace schemaind {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_attributes(const RelationDecl& rel, const std::vector<std::string>& attrs, const std::string& what) {
  for (const auto& a : attrs)
    if (!rel.position(a)) throw ConfigError(what + ": unknown attribute " + a + " in relation " + rel.name);
}

}  // namespace

std::optional<std::size_t> RelationDecl::position(const std::string& attribute) const {
  auto it = std::find(attributes.begin(), attributes.end(), attribute);
  if (it == attributes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - attributes.begin());
}

FD normalized(FD fd) {
  fd.lhs = sorted_unique(std::move(fd.lhs));
  fd.rhs = sorted_unique(std::move(fd.rhs));
  return fd;
}

IND normalized(IND ind) {
  if (ind.equality &&
      std::tie(ind.rhs_relation, ind.rhs_attributes) < std::tie(ind.lhs_relation, ind.lhs_attributes)) {
    std::swap(ind.lhs_relation, ind.rhs_relation);
    std::swap(ind.lhs_attributes, ind.rhs_attributes);
  }
  return ind;
}

Schema::Schema(std::vector<RelationDecl> relations, std::vector<FD> fds, std::vector<IND> inds)
    : relations_(std::move(relations)), inds_(std::move(inds)) {
  if (relations_.empty()) throw ConfigError("empty schema");
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const auto& r = relations_[i];
    if (r.name.empty()) throw ConfigError("relation with empty name");
    if (r.attributes.empty()) throw ConfigError("relation " + r.name + " has no attributes");
    auto uniq = sorted_unique(r.attributes);
    if (uniq.size() != r.attributes.size()) throw ConfigError("relation " + r.name + " repeats an attribute");
    if (!by_name_.emplace(r.name, i).second) throw ConfigError("duplicate relation " + r.name);
    by_symbol_.emplace(intern(r.name), i);
  }
  for (auto& fd : fds) {
    const auto* rel = find(fd.relation);
    if (!rel) throw ConfigError("fd references unknown relation " + fd.relation);
    if (fd.lhs.empty() || fd.rhs.empty()) throw ConfigError("fd on " + fd.relation + " has an empty side");
    check_attributes(*rel, fd.lhs, "fd");
    check_attributes(*rel, fd.rhs, "fd");
    fds_.push_back(normalized(std::move(fd)));
  }
  for (const auto& ind : inds_) {
    const auto* l = find(ind.lhs_relation);
    const auto* r = find(ind.rhs_relation);
    if (!l) throw ConfigError("ind references unknown relation " + ind.lhs_relation);
    if (!r) throw ConfigError("ind references unknown relation " + ind.rhs_relation);
    if (ind.lhs_attributes.empty() || ind.lhs_attributes.size() != ind.rhs_attributes.size())
      throw ConfigError("ind between " + ind.lhs_relation + " and " + ind.rhs_relation +
                        " has attribute lists of different length");
    check_attributes(*l, ind.lhs_attributes, "ind");
    check_attributes(*r, ind.rhs_attributes, "ind");
  }
}

const RelationDecl* Schema::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &relations_[it->second];
}

const RelationDecl& Schema::relation(std::string_view name) const {
  const auto* r = find(name);
  if (!r) throw ConfigError("unknown relation " + std::string(name));
  return *r;
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Schema::index_of(SymbolId predicate) const {
  auto it = by_symbol_.find(predicate);
  if (it == by_symbol_.end()) return std::nullopt;
  return it->second;
}

std::size_t Schema::max_arity() const {
  std::size_t m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity());
  return m;
}

std::vector<const FD*> Schema::fds_of(const std::string& relation) const {
  std::vector<const FD*> out;
  for (const auto& fd : fds_)
    if (fd.relation == relation) out.push_back(&fd);
  return out;
}

std::vector<IND> Schema::equality_inds() const {
  std::vector<IND> out;
  for (const auto& ind : inds_)
    if (ind.equality) out.push_back(ind);
  return out;
}

bool Schema::equivalent_to(const Schema& other) const {
  auto rels = [](const Schema& s) {
    std::set<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& r : s.relations_) out.emplace(r.name, r.attributes);
    return out;
  };
  auto fdset = [](const Schema& s) {
    std::set<FD> out;
    for (const auto& f : s.fds_) out.insert(normalized(f));
    return out;
  };
  auto indset = [](const Schema& s) {
    std::set<IND> out;
    for (const auto& i : s.inds_) out.insert(normalized(i));
    return out;
  };
  return rels(*this) == rels(other) && fdset(*this) == fdset(other) && indset(*this) == indset(other);
}

std::vector<std::string> attribute_closure(const std::vector<std::string>& attributes, const std::vector<FD>& fds) {
  std::set<std::string> closed(attributes.begin(), attributes.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& fd : fds) {
      bool applies = std::all_of(fd.lhs.begin(), fd.lhs.end(), [&](const auto& a) { return closed.count(a) > 0; });
      if (!applies) continue;
      for (const auto& a : fd.rhs) changed |= closed.insert(a).second;
    }
  }
  return {closed.begin(), closed.end()};
}

std::vector<FD> closure_over(const std::vector<std::string>& universe_in, const std::vector<FD>& fds,
                             const std::string& relation_label) {
  auto universe = sorted_unique(universe_in);
  if (universe.size() > 20) throw ConfigError("fd closure: relation " + relation_label + " has too many attributes");
  std::vector<FD> out;
  const std::size_t n = universe.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> lhs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) lhs.push_back(universe[i]);
    for (const auto& a : attribute_closure(lhs, fds)) {
      if (std::binary_search(lhs.begin(), lhs.end(), a)) continue;
      if (!std::binary_search(universe.begin(), universe.end(), a)) continue;
      out.push_back(FD{relation_label, lhs, {a}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FD> fd_closure(const Schema& schema) {
  std::vector<FD> out;
  for (const auto& rel : schema.relations()) {
    std::vector<FD> local;
    for (const auto* fd : schema.fds_of(rel.name)) local.push_back(*fd);
    auto part = closure_over(rel.attributes, local, rel.name);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> inclusion_classes(const Schema& schema) {
  const auto& rels = schema.relations();
  std::vector<std::size_t> parent(rels.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& ind : schema.inds()) {
    if (!ind.equality) continue;
    auto a = root(*schema.index_of(ind.lhs_relation));
    auto b = root(*schema.index_of(ind.rhs_relation));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::string>> classes;
  std::vector<long> slot(rels.size(), -1);
  for (std::size_t i = 0; i < rels.size(); ++i) {
    auto r = root(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(slot[r])].push_back(rels[i].name);
  }
  return classes;
}

namespace {
std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}
}  // namespace

std::string to_text(const Schema& schema) {
  std::string out;
  for (const auto& r : schema.relations()) out += "relation " + r.name + "(" + join(r.attributes) + ")\n";
  for (const auto& fd : schema.fds()) out += "fd " + fd.relation + ": " + join(fd.lhs) + " -> " + join(fd.rhs) + "\n";
  for (const auto& ind : schema.inds())
    out += "ind " + ind.lhs_relation + "[" + join(ind.lhs_attributes) + "] " + (ind.equality ? "=" : "<=") + " " +
           ind.rhs_relation + "[" + join(ind.rhs_attributes) + "]\n";
  return out;
}

}  // namespace schemaind
