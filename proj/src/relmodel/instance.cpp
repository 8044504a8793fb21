#include "schemaind/instance.hpp"

#include <algorithm>
#include <set>

#include "schemaind/errors.hpp"

namespace schemaind {

std::size_t TupleHash::operator()(const Tuple& t) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Value v : t) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool Table::insert(Tuple t) {
  if (t.size() != arity_) throw InternalError("table insert with wrong arity");
  if (set_.count(t)) return false;
  auto index = static_cast<std::uint32_t>(rows_.size());
  for (std::size_t c = 0; c < arity_; ++c) columns_[c][t[c]].push_back(index);
  set_.insert(t);
  rows_.push_back(std::move(t));
  return true;
}

std::span<const std::uint32_t> Table::lookup(std::size_t col, Value v) const {
  const auto& idx = columns_[col];
  auto it = idx.find(v);
  if (it == idx.end()) return {};
  return it->second;
}

const Table* TableSet::find(SymbolId predicate) const {
  auto it = tables_.find(predicate);
  return it == tables_.end() ? nullptr : &it->second;
}

Table& TableSet::table(SymbolId predicate, std::size_t arity) {
  auto it = tables_.find(predicate);
  if (it == tables_.end()) it = tables_.emplace(predicate, Table(arity)).first;
  if (it->second.arity() != arity) throw InternalError("table arity clash for " + symbol_name(predicate));
  return it->second;
}

const Table* OverlaySource::find(SymbolId predicate) const {
  if (const Table* t = extra_.find(predicate)) return t;
  return base_.find(predicate);
}

namespace {

std::string tuple_text(const std::string& rel, const Tuple& t) {
  std::vector<Term> args;
  for (Value v : t) args.push_back(Term::constant(v));
  return to_string(Atom(rel, args));
}

std::vector<std::size_t> positions(const RelationDecl& rel, const std::vector<std::string>& attrs) {
  std::vector<std::size_t> out;
  for (const auto& a : attrs) out.push_back(*rel.position(a));
  return out;
}

Tuple project(const Tuple& t, const std::vector<std::size_t>& pos) {
  Tuple out;
  out.reserve(pos.size());
  for (auto p : pos) out.push_back(t[p]);
  return out;
}

const std::vector<Tuple>& rows_of(const Instance::RawData& data, const std::string& rel) {
  static const std::vector<Tuple> empty;
  auto it = data.find(rel);
  return it == data.end() ? empty : it->second;
}

void check_inclusion(const Schema& schema, const Instance::RawData& data, const std::string& lrel,
                     const std::vector<std::string>& lattrs, const std::string& rrel,
                     const std::vector<std::string>& rattrs) {
  auto lpos = positions(schema.relation(lrel), lattrs);
  auto rpos = positions(schema.relation(rrel), rattrs);
  std::unordered_set<Tuple, TupleHash> targets;
  for (const auto& t : rows_of(data, rrel)) targets.insert(project(t, rpos));
  for (const auto& t : rows_of(data, lrel))
    if (!targets.count(project(t, lpos)))
      throw ConstraintViolation("IND violation " + lrel + "[...] <= " + rrel + "[...]: " + tuple_text(lrel, t) +
                                " has no partner in " + rrel);
}

}  // namespace

void validate_constraints(const Schema& schema, const Instance::RawData& data) {
  for (const auto& fd : schema.fds()) {
    const auto& rel = schema.relation(fd.relation);
    auto lpos = positions(rel, fd.lhs);
    auto rpos = positions(rel, fd.rhs);
    std::unordered_map<Tuple, const Tuple*, TupleHash> seen;
    for (const auto& t : rows_of(data, fd.relation)) {
      auto key = project(t, lpos);
      auto [it, inserted] = seen.emplace(key, &t);
      if (!inserted && project(*it->second, rpos) != project(t, rpos))
        throw ConstraintViolation("FD violation on " + fd.relation + ": " + tuple_text(fd.relation, *it->second) +
                                  " and " + tuple_text(fd.relation, t));
    }
  }
  for (const auto& ind : schema.inds()) {
    check_inclusion(schema, data, ind.lhs_relation, ind.lhs_attributes, ind.rhs_relation, ind.rhs_attributes);
    if (ind.equality)
      check_inclusion(schema, data, ind.rhs_relation, ind.rhs_attributes, ind.lhs_relation, ind.lhs_attributes);
  }
}

Instance::Instance(std::shared_ptr<const Schema> schema, const RawData& data, bool validate)
    : schema_(std::move(schema)) {
  const auto& rels = schema_->relations();
  for (const auto& [name, rows] : data) {
    const auto* rel = schema_->find(name);
    if (!rel) throw ConfigError("facts reference unknown relation " + name);
    for (const auto& t : rows)
      if (t.size() != rel->arity())
        throw ConfigError("arity mismatch for " + name + ": expected " + std::to_string(rel->arity()) + ", got " +
                          std::to_string(t.size()));
  }
  if (validate) validate_constraints(*schema_, data);
  tables_.reserve(rels.size());
  for (std::size_t i = 0; i < rels.size(); ++i) {
    Table table(rels[i].arity());
    for (const auto& t : rows_of(data, rels[i].name)) table.insert(t);
    tables_.push_back(std::move(table));
    by_symbol_.emplace(intern(rels[i].name), i);
  }
}

const Table* Instance::find(SymbolId predicate) const {
  auto it = by_symbol_.find(predicate);
  return it == by_symbol_.end() ? nullptr : &tables_[it->second];
}

const Table& Instance::table(std::string_view relation) const {
  auto idx = schema_->index_of(relation);
  if (!idx) throw ConfigError("unknown relation " + std::string(relation));
  return tables_[*idx];
}

std::size_t Instance::total_tuples() const {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.size();
  return n;
}

Instance::RawData Instance::raw() const {
  RawData out;
  const auto& rels = schema_->relations();
  for (std::size_t i = 0; i < rels.size(); ++i) out[rels[i].name] = tables_[i].rows();
  return out;
}

std::vector<Atom> Instance::facts() const {
  std::vector<Atom> out;
  const auto& rels = schema_->relations();
  for (std::size_t i = 0; i < rels.size(); ++i) {
    SymbolId pred = intern(rels[i].name);
    for (const auto& row : tables_[i].rows()) {
      std::vector<Term> args;
      for (Value v : row) args.push_back(Term::constant(v));
      out.emplace_back(pred, std::move(args));
    }
  }
  return out;
}

bool Instance::same_content(const Instance& other) const {
  auto normalize = [](const Instance& inst) {
    std::map<std::string, std::set<Tuple>> out;
    const auto& rels = inst.schema_->relations();
    for (std::size_t i = 0; i < rels.size(); ++i) {
      auto& rows = out[rels[i].name];
      rows.insert(inst.tables_[i].rows().begin(), inst.tables_[i].rows().end());
    }
    return out;
  };
  return normalize(*this) == normalize(other);
}

}  // namespace schemaind
