#pragma once

#include <cstdint>
#include <vector>

#include "lampi/process.hpp"
#include "lampi/term.hpp"

namespace lampi {

enum class TermMode : uint8_t { Lsub, Vker };

// Exhaustive enumeration of terms with exactly `size` nodes, duplicate-free
// up to alpha, in a fixed deterministic order. Open terms draw free variables
// from a canonical pool named by first occurrence (u1, u2, ...), i.e. one
// representative per renaming of the free variables.
std::vector<TermPtr> enumerate_terms(int size, TermMode mode, bool closed);

// All sizes from 1 to max_size.
std::vector<TermPtr> enumerate_terms_up_to(int max_size, TermMode mode, bool closed);

// Deterministic in (size, seed); vker mode is shape-valid by construction.
TermPtr random_term(int size, uint64_t seed, TermMode mode, bool closed);

// Well-formed random process over small name pools; size is the node budget.
ProcPtr random_process(int size, uint64_t seed);

// Applies up to max_steps random generated-rule rewrites; the result is
// structurally congruent to p by construction. Returns the mutant and the
// number of rewrites applied.
std::pair<ProcPtr, int> random_congruent_mutation(const ProcPtr& p, uint64_t seed, int max_steps);

}  // namespace lampi
