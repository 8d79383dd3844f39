#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>

namespace lampi {

// Two disjoint namespaces: term variables and special channel names.
// Special names only ever occur in processes; they print with an '@' sigil.
enum class NameKind : uint8_t { Variable, Special };

struct Name {
  NameKind kind = NameKind::Variable;
  std::string id;

  bool operator==(const Name&) const = default;
  auto operator<=>(const Name&) const = default;
};

using NameSet = std::set<Name>;

Name var_name(std::string id);
Name special_name(std::string id);

// "x" for variables, "@a" for special names.
std::string show_name(const Name& n);

// Deterministic fresh-name source. Draws advance an internal counter, so two
// supplies in the same state produce the same names; candidates already in
// `avoid` are skipped (the counter still advances past them).
class NameSupply {
 public:
  Name fresh_var(const NameSet& avoid);
  Name fresh_special(const NameSet& avoid);
  Name fresh_like(const Name& n, const NameSet& avoid);

 private:
  uint64_t next_var_ = 1;
  uint64_t next_special_ = 1;
};

}  // namespace lampi
