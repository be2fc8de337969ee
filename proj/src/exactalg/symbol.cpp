#include "kha/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace kha {

namespace {

struct Table {
  std::shared_mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, Symbol> ids;
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

Symbol intern(std::string_view name) {
  Table& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mu);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mu);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  Symbol id = static_cast<Symbol>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(key, id);
  return id;
}

const std::string& symbol_name(Symbol s) {
  Table& t = table();
  std::shared_lock lock(t.mu);
  return t.names.at(s);
}

}  // namespace kha
