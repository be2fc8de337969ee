#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace kha {

/// Handle into the process-wide symbol table. Interning is append-only,
/// so a handle stays valid (and keeps its name) for the whole run.
using Symbol = std::uint32_t;

Symbol intern(std::string_view name);
const std::string& symbol_name(Symbol s);

}  // namespace kha
