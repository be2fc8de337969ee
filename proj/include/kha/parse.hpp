#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kha/ratfun.hpp"

namespace kha {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

/// Coefficient grammar: integers, q, t<label>, + - * / ^ (integer exponent),
/// parentheses. With allow_any_symbol, any identifier [A-Za-z_][A-Za-z0-9_]*
/// is accepted as a symbol.
RatFun parse_ratfun(std::string_view text, bool allow_any_symbol = false);

}  // namespace kha
