#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "schemaind/symbols.hpp"

namespace schemaind {

struct RelationDecl {
  std::string name;
  std::vector<std::string> attributes;

  std::size_t arity() const { return attributes.size(); }
  std::optional<std::size_t> position(const std::string& attribute) const;
  bool operator==(const RelationDecl&) const = default;
};

// lhs and rhs are kept sorted and duplicate-free.
struct FD {
  std::string relation;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  auto operator<=>(const FD&) const = default;
};

struct IND {
  std::string lhs_relation;
  std::vector<std::string> lhs_attributes;
  std::string rhs_relation;
  std::vector<std::string> rhs_attributes;
  bool equality = false;

  auto operator<=>(const IND&) const = default;
};

class Schema {
 public:
  Schema() = default;

  // Validates cross references and throws ConfigError on failure.
  Schema(std::vector<RelationDecl> relations, std::vector<FD> fds, std::vector<IND> inds);

  const std::vector<RelationDecl>& relations() const { return relations_; }
  const std::vector<FD>& fds() const { return fds_; }
  const std::vector<IND>& inds() const { return inds_; }

  const RelationDecl* find(std::string_view name) const;
  const RelationDecl& relation(std::string_view name) const;  // throws ConfigError
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<std::size_t> index_of(SymbolId predicate) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::size_t max_arity() const;

  std::vector<const FD*> fds_of(const std::string& relation) const;
  std::vector<IND> equality_inds() const;

  // Set-based equality: relation declarations, FDs and INDs compared as sets.
  bool equivalent_to(const Schema& other) const;

 private:
  std::vector<RelationDecl> relations_;
  std::vector<FD> fds_;
  std::vector<IND> inds_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<SymbolId, std::size_t> by_symbol_;
};

// Canonical form of an FD/IND: sorted attribute sets, equality INDs oriented
// so the lexicographically smaller side comes first.
FD normalized(FD fd);
IND normalized(IND ind);

// Nontrivial FDs X -> a (singleton rhs) implied by the schema, per relation.
std::vector<FD> fd_closure(const Schema& schema);

// Closure of an attribute set under name-level FDs (relation names ignored).
std::vector<std::string> attribute_closure(const std::vector<std::string>& attributes, const std::vector<FD>& fds);

// All nontrivial X -> a with X, a drawn from `universe`, implied by `fds`.
std::vector<FD> closure_over(const std::vector<std::string>& universe, const std::vector<FD>& fds,
                             const std::string& relation_label);

// Connected components over equality INDs; order follows schema declaration.
std::vector<std::vector<std::string>> inclusion_classes(const Schema& schema);

std::string to_text(const Schema& schema);

}  // namespace schemaind
