#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "schemaind/clause.hpp"
#include "schemaind/schema.hpp"

namespace schemaind {

// Values in tables are constant symbols; subsumption checks also store frozen
// clause variables here, encoded with the high bit set.
using Value = std::uint32_t;
using Tuple = std::vector<Value>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept;
};

// Rows kept in insertion order, duplicates dropped, with one hash index per column.
class Table {
 public:
  explicit Table(std::size_t arity = 0) : arity_(arity), columns_(arity) {}

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const Tuple& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Tuple>& rows() const { return rows_; }

  bool insert(Tuple t);  // false if already present
  bool contains(const Tuple& t) const { return set_.count(t) > 0; }
  // Row indices whose column `col` equals `v` (empty span when none).
  std::span<const std::uint32_t> lookup(std::size_t col, Value v) const;

 private:
  std::size_t arity_;
  std::vector<Tuple> rows_;
  std::unordered_set<Tuple, TupleHash> set_;
  std::vector<std::unordered_map<Value, std::vector<std::uint32_t>>> columns_;
};

class TableSource {
 public:
  virtual ~TableSource() = default;
  virtual const Table* find(SymbolId predicate) const = 0;
};

class TableSet : public TableSource {
 public:
  const Table* find(SymbolId predicate) const override;
  Table& table(SymbolId predicate, std::size_t arity);
  const std::unordered_map<SymbolId, Table>& tables() const { return tables_; }

 private:
  std::unordered_map<SymbolId, Table> tables_;
};

// Looks in `extra` first, then in `base`.
class OverlaySource : public TableSource {
 public:
  OverlaySource(const TableSource& base, const TableSource& extra) : base_(base), extra_(extra) {}
  const Table* find(SymbolId predicate) const override;

 private:
  const TableSource& base_;
  const TableSource& extra_;
};

// Immutable, constraint-checked database instance over a schema.
class Instance : public TableSource {
 public:
  using RawData = std::map<std::string, std::vector<Tuple>>;

  // Throws ConfigError for unknown relations / arity mismatches and
  // ConstraintViolation when an FD or IND does not hold (unless validate=false).
  Instance(std::shared_ptr<const Schema> schema, const RawData& data, bool validate = true);

  const Schema& schema() const { return *schema_; }
  std::shared_ptr<const Schema> schema_ptr() const { return schema_; }

  const Table* find(SymbolId predicate) const override;
  const Table& table(std::string_view relation) const;
  const Table& table_at(std::size_t relation_index) const { return tables_[relation_index]; }

  std::size_t total_tuples() const;
  RawData raw() const;
  std::vector<Atom> facts() const;  // schema order, then row order

  // Same relation names with the same tuple sets (order ignored).
  bool same_content(const Instance& other) const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<Table> tables_;
  std::unordered_map<SymbolId, std::size_t> by_symbol_;
};

// Throws ConstraintViolation with the offending tuples.
void validate_constraints(const Schema& schema, const Instance::RawData& data);

}  // namespace schemaind
