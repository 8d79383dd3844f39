#pragma once

#include <functional>
#include <string>

#include "lampi/cbn.hpp"
#include "lampi/cbv.hpp"
#include "lampi/encode.hpp"
#include "lampi/pi_reduction.hpp"

namespace lampi {

struct BisimReport {
  bool ok = false;
  bool vacuous = false;  // no step on either side
  std::string detail;    // on failure: both canonical forms and the oracle verdict
};

// One term step is matched by one process step of the corresponding kind
// (db-tensor, ls-bang), landing congruent to the encoding of the reduct.
BisimReport forward_cbn(const TermPtr& t, const Name& a, NameSupply& supply);
// Every distance step of the encoding is matched by the (unique) term step;
// all process successors must be congruent among themselves.
BisimReport backward_cbn(const TermPtr& t, const Name& a, NameSupply& supply);

// Same for the kernel: vdb-tensor, vls-bang, over all redexes.
BisimReport forward_cbv(const VTerm& t, const Name& x, NameSupply& supply);
BisimReport backward_cbv(const VTerm& t, const Name& x, NameSupply& supply);

enum class BisimMode : uint8_t { Cbn, Cbv };

struct GameReport {
  bool ok = false;
  bool fuel_exhausted = false;
  int rounds = 0;  // longest matched path explored
  int term_db = 0, term_ls = 0;      // db/ls or vdb/vls
  int proc_tensor = 0, proc_bang = 0;
  int states = 0;  // distinct (term, process) pairs visited (cbv)
  std::string failure;
};

// Runs the bisimulation game: at every reachable pair (term, process) checks
// that redexes match kind for kind with congruent landings, then advances
// both sides together. Cbn follows the deterministic strategy; Cbv explores
// every branch with memoization. Optionally reports every process visited.
GameReport bisim_game(const TermPtr& t, BisimMode mode, int fuel,
                      const std::function<void(const ProcPtr&)>& on_process = nullptr);

}  // namespace lampi
