#pragma once

#include <utility>
#include <vector>

#include "lampi/congruence.hpp"
#include "lampi/process.hpp"

namespace lampi {

enum class PiKind : uint8_t { Tensor, Bang };

const char* pi_kind_name(PiKind k);

// A communication redex matched through non-blocking contexts: some Par node
// (the anchor) has an output at a non-blocking position in one child and a
// matching input at a non-blocking position in the other, with the channel
// not restricted strictly below the anchor on either side.
struct PiRedex {
  PiKind kind;
  Name channel;
  ContextPath anchor;    // root -> anchor Par node
  bool out_left;         // orientation: output in the left child
  ContextPath out_path;  // within the output-side child
  ContextPath in_path;   // within the input-side child
};

// With strict_out_left only the displayed orientation (output left of '|')
// is matched; the default admits both.
std::vector<PiRedex> enumerate_pi_redexes(const ProcPtr& p, bool strict_out_left = false);

// Applies one distance step. Restriction binders along both paths are
// alpha-renamed fresh first, which discharges the side conditions on the
// context variable sets.
ProcPtr apply_pi_redex(const ProcPtr& p, const PiRedex& r, NameSupply& supply);

std::vector<std::pair<PiKind, ProcPtr>> pi_successors(const ProcPtr& p,
                                                      bool strict_out_left = false);

// The classic rules: literally adjacent redexes, closed by non-blocking
// contexts only (no structural congruence).
std::vector<std::pair<PiKind, ProcPtr>> classic_raw_steps(const ProcPtr& p);

// Successor set of the classic reduction-modulo-congruence semantics, bounded:
// raw steps over every congruence-class member reachable within `depth` rule
// applications, deduplicated by congruence. Canonical representatives.
std::vector<ProcPtr> classic_step_oracle(const ProcPtr& p, int depth, PiKind kind);

struct HarmonyReport {
  bool tensor_ok = false;
  bool bang_ok = false;
  // canonical keys of the two successor sets, per kind
  std::vector<std::string> distance_tensor, classic_tensor;
  std::vector<std::string> distance_bang, classic_bang;
  bool ok() const { return tensor_ok && bang_ok; }
};

// Compares distance successors with the classic oracle, kind for kind.
HarmonyReport harmony_check(const ProcPtr& p, int depth);

}  // namespace lampi
