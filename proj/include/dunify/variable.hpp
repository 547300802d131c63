#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dunify {

// Identifier of an interned variable. Only meaningful together with the
// VariablePool that produced it.
class VariableId {
 public:
  constexpr VariableId() = default;
  constexpr explicit VariableId(std::uint32_t raw) : raw_(raw) {}

  constexpr std::uint32_t raw() const { return raw_; }
  constexpr bool valid() const { return raw_ != kInvalid; }

  friend constexpr bool operator==(VariableId, VariableId) = default;
  friend constexpr auto operator<=>(VariableId, VariableId) = default;

 private:
  static constexpr std::uint32_t kInvalid =
      std::numeric_limits<std::uint32_t>::max();
  std::uint32_t raw_ = kInvalid;
};

// Interns variable names and hands out fresh ones. Interning is injective:
// equal names map to equal ids. A pool belongs to one solver context; ids
// from different pools must not be mixed.
class VariablePool {
 public:
  VariableId intern(std::string_view name);
  std::optional<VariableId> lookup(std::string_view name) const;
  const std::string& name(VariableId id) const;
  std::size_t size() const { return names_.size(); }

  // Fresh variable named <stem><counter>; skips names already taken so a
  // fresh id never collides with an existing one.
  VariableId fresh(std::string_view stem = "_w");

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VariableId, std::hash<std::string>,
                     std::equal_to<>>
      ids_;
  std::uint64_t fresh_counter_ = 0;
};

}  // namespace dunify

template <>
struct std::hash<dunify::VariableId> {
  std::size_t operator()(dunify::VariableId v) const noexcept {
    return std::hash<std::uint32_t>{}(v.raw());
  }
};
