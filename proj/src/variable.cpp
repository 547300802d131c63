#include "dunify/variable.hpp"

#include <stdexcept>

namespace dunify {

VariableId VariablePool::intern(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  VariableId id(static_cast<std::uint32_t>(names_.size()));
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<VariableId> VariablePool::lookup(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& VariablePool::name(VariableId id) const {
  return names_.at(id.raw());
}

VariableId VariablePool::fresh(std::string_view stem) {
  for (;;) {
    std::string candidate = std::string(stem) + std::to_string(fresh_counter_++);
    if (!lookup(candidate)) return intern(candidate);
  }
}

}  // namespace dunify
