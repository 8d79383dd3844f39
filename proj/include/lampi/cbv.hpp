#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lampi/term.hpp"

namespace lampi {

enum class CbvLabel : uint8_t { VDb, VLs };

const char* cbv_label_name(CbvLabel l);

// A redex of linear weak applicative reduction.
//   VDb: pos addresses an application (\x.t) s in evaluation position
//   VLs: pos addresses the substitution A[x][x/S[v]]; inner is the path from
//        its body to the application whose function is the occurrence of x
struct CbvRedex {
  CbvLabel kind;
  ContextPath pos;
  ContextPath inner;
};

std::vector<CbvRedex> enumerate_cbv_redexes(const VTerm& t);

VTerm cbv_step(const VTerm& t, const CbvRedex& r, NameSupply& supply);

enum class CbvPolicy : uint8_t { Leftmost, AllPaths };

struct CbvTrace {
  TermPtr initial;
  std::vector<std::pair<CbvLabel, TermPtr>> steps;  // leftmost policy
  bool reached_normal = false;
  int count(CbvLabel l) const {
    int n = 0;
    for (auto& [label, state] : steps) n += label == l;
    return n;
  }
};

// Leftmost: first redex in the enumeration order at every step.
CbvTrace cbv_trace(const VTerm& t, int fuel);

// Bounded exploration of every reduction choice; the set of states seen.
std::vector<TermPtr> cbv_reachable(const VTerm& t, int fuel);

// Any two distinct one-step reducts rejoin in exactly one step, everywhere
// within fuel.
bool check_diamond(const VTerm& t, int fuel);

// Every value occurring in any reachable reduct matches a value subterm of
// the original term (comparison abstracts externally bound variables).
bool check_v_subterm(const VTerm& t, int fuel);

}  // namespace lampi
