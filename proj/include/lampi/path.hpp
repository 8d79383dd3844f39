#pragma once

#include <cstdint>
#include <vector>

namespace lampi {

// One step of a one-hole position descriptor, for terms and processes alike.
enum class Step : uint8_t {
  // term frames
  AppFun,
  AppArg,
  LamBody,
  SubBody,
  SubArg,
  // process frames
  ParLeft,
  ParRight,
  NuBody,
  InBCont,
  RepInCont,
};

struct ContextPath {
  std::vector<Step> steps;

  bool operator==(const ContextPath&) const = default;
  bool empty() const { return steps.empty(); }
  size_t size() const { return steps.size(); }
  ContextPath then(Step s) const {
    ContextPath r = *this;
    r.steps.push_back(s);
    return r;
  }
};

// Non-blocking process paths cross only parallel compositions and restrictions.
inline bool non_blocking(const ContextPath& p) {
  for (Step s : p.steps)
    if (s != Step::ParLeft && s != Step::ParRight && s != Step::NuBody) return false;
  return true;
}

}  // namespace lampi
