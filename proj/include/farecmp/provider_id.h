#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace farecmp {

// Enumerators are ordered by wire name so that std::less on provider_id
// matches the lexicographic tie-break used throughout comparison.
enum class provider_id { ola, rapido, uber };

inline constexpr std::array<provider_id, 3> kAllProviders{provider_id::ola, provider_id::rapido,
                                                         provider_id::uber};

constexpr std::string_view to_string(provider_id p) {
  switch (p) {
    case provider_id::ola: return "ola";
    case provider_id::rapido: return "rapido";
    case provider_id::uber: return "uber";
  }
  return "?";
}

constexpr std::optional<provider_id> parse_provider_id(std::string_view s) {
  for (auto const p : kAllProviders) {
    if (to_string(p) == s) {
      return p;
    }
  }
  return std::nullopt;
}

constexpr std::size_t index_of(provider_id p) { return static_cast<std::size_t>(p); }

}  // namespace farecmp
