#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace schemaind {

using SymbolId = std::uint32_t;

// Process-wide interning of constants and predicate names. Thread safe;
// returned references stay valid for the lifetime of the process.
SymbolId intern(std::string_view text);
const std::string& symbol_name(SymbolId id);

}  // namespace schemaind
