#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lampi/term.hpp"

namespace lampi {

enum class CbnLabel : uint8_t { Db, Ls };

const char* cbn_label_name(CbnLabel l);

// The unique redex of linear weak head reduction, when one exists.
//   Db: pos addresses the application S[\x.t] s  (inner unused)
//   Ls: pos addresses the substitution E[x][x/s]; inner is the path from its
//       body to the substituted variable occurrence
struct CbnRedex {
  CbnLabel kind;
  ContextPath pos;
  ContextPath inner;
};

std::optional<CbnRedex> decompose_cbn(const TermPtr& t);

// One step of linear weak head reduction. The copy substituted at the head by
// an ls step gets entirely fresh bound names.
std::optional<std::pair<CbnLabel, TermPtr>> cbn_step(const TermPtr& t, NameSupply& supply);

struct CbnTrace {
  TermPtr initial;
  std::vector<std::pair<CbnLabel, TermPtr>> steps;
  bool reached_normal = false;
  int count(CbnLabel l) const {
    int n = 0;
    for (auto& [label, state] : steps) n += label == l;
    return n;
  }
};

CbnTrace cbn_trace(const TermPtr& t, int fuel);

// Number of redexes found by exhaustive search over all evaluation-context
// decompositions, independent of decompose_cbn. Used to test determinism.
int cbn_redex_count(const TermPtr& t);

// Plain weak head beta on pure terms (the call-by-name oracle).
std::optional<PureTerm> whr_oracle_step(const PureTerm& p);
// Steps to normal form within fuel; terminated reports whether it got there.
int whr_step_count(const PureTerm& p, int fuel, bool* terminated = nullptr);

// Along the trace of t, every ls-substituted copy matches a subterm of the
// original t (comparison abstracts names bound above the occurrence).
bool check_subterm_property(const TermPtr& t, int fuel);

// Key for "subterm up to renaming of externally bound variables": binders
// canonicalized, free variables in `flexible` abstracted by first occurrence,
// all other free variables kept verbatim.
std::string flex_subterm_key(const TermPtr& t, const NameSet& flexible);
// Keys of all subterms of t (each keyed with the binders in scope flexible).
std::vector<std::string> subterm_keys(const TermPtr& t);

}  // namespace lampi
