#include "lampi/names.hpp"

namespace lampi {

Name var_name(std::string id) { return Name{NameKind::Variable, std::move(id)}; }
Name special_name(std::string id) { return Name{NameKind::Special, std::move(id)}; }

std::string show_name(const Name& n) {
  return n.kind == NameKind::Special ? "@" + n.id : n.id;
}

Name NameSupply::fresh_var(const NameSet& avoid) {
  for (;;) {
    Name candidate = var_name("z" + std::to_string(next_var_++));
    if (!avoid.count(candidate)) return candidate;
  }
}

Name NameSupply::fresh_special(const NameSet& avoid) {
  for (;;) {
    Name candidate = special_name("b" + std::to_string(next_special_++));
    if (!avoid.count(candidate)) return candidate;
  }
}

Name NameSupply::fresh_like(const Name& n, const NameSet& avoid) {
  return n.kind == NameKind::Special ? fresh_special(avoid) : fresh_var(avoid);
}

}  // namespace lampi
