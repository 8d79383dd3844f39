#pragma once

#include <string>
#include <vector>

#include "lampi/process.hpp"

namespace lampi {

// Canonical representative of the structural-congruence class of p:
// parallel compositions flattened, nil components and useless restrictions
// removed, restriction scopes maximized, binders and components reordered
// deterministically. alpha_eq_process(canonicalize(p), canonicalize(q))
// holds exactly when p and q are structurally congruent. Congruence is
// generated under non-blocking contexts only, so nothing is restructured
// beneath an input prefix.
ProcPtr canonicalize(const ProcPtr& p);

// Key with canonical_key(p) == canonical_key(q) iff p ≡ q.
std::string canonical_key(const ProcPtr& p);

bool congruent(const ProcPtr& p, const ProcPtr& q);

// Every single application of one of the six generated rules, in either
// direction, inside a non-blocking context. Results are plain processes
// (alpha-renaming is applied where a side condition needs it). With
// include_insertions false the two growing instances (P -> P|0 and
// 0 -> nu x 0) are skipped; they pad the class with junk that can never
// expose a communication redex.
std::vector<ProcPtr> congruence_rewrites(const ProcPtr& p, bool include_insertions = true);

// Independent bounded check: breadth-first closure of {p} under single rule
// applications, true iff an alpha-match of q is reached within `depth`
// rewrites. Sound; complete only up to depth.
bool congruence_oracle(const ProcPtr& p, const ProcPtr& q, int depth);

struct DerivedRuleReport {
  bool ok = false;
  bool precondition_ok = false;
  std::string detail;
};

// Checks the three derived congruence facts for the non-blocking context
// obtained by punching a hole into `host` at `hole`:
//   1. N[Q] | partner  ≡  N[Q | partner]        (fn(partner) disjoint from captured)
//   2. nu x. partner   ≡  partner               (x not free in partner)
//   3. nu x. N[partner] ≡ N[nu x. partner]      (x not free in N, x not captured)
DerivedRuleReport derived_rule_checks(const ProcPtr& host, const ContextPath& hole,
                                      const ProcPtr& partner, const Name& x);

}  // namespace lampi
