#include "schemaind/symbols.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace schemaind {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, SymbolId> ids;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

SymbolId intern(std::string_view text) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(text); it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(text); it != t.ids.end()) return it->second;
  auto id = static_cast<SymbolId>(t.names.size());
  const std::string& stored = t.names.emplace_back(text);
  t.ids.emplace(stored, id);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names.at(id);
}

}  // namespace schemaind
