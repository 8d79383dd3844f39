#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lampi/bisim.hpp"
#include "lampi/generate.hpp"
#include "lampi/term.hpp"

namespace lampi {

struct SuiteBounds {
  int max_size = 8;
  int fuel = 50;
  int depth = 4;        // congruence-oracle depth
  int samples = 10000;  // seeded random inputs
  uint64_t seed = 1;
  int threads = 0;      // 0 = hardware concurrency
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  long checked = 0;
  std::string counterexample;  // minimized; empty when passing
  std::string detail;
  double seconds = 0;

  std::string to_json() const;
};

// Suites: determinism, diamond, subterm, v-subterm, free-names, harmony,
// congr-oracle, bisim-cbn, bisim-cbv, quadratic.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteBounds& bounds);

// Building blocks shared with the acceptance suite.
struct BisimCorpusResult {
  SuiteResult result;
  std::vector<ProcPtr> reachable;  // when collect: every process the games visited
};
BisimCorpusResult run_bisim_corpus(BisimMode mode, int max_size, int fuel, bool collect,
                                   int threads);
SuiteResult run_harmony_over(const std::vector<ProcPtr>& processes, int depth, int threads);
// Congruent pairs (built by random rule applications) have matching
// distance-successor sets, kind for kind.
SuiteResult run_equiv_bisim(const SuiteBounds& bounds);

// --- quadratic experiment ---------------------------------------------------

struct QuadRow {
  std::string term;
  int n = 0;  // weak head oracle steps on the unfolding
  int m = 0;  // linear weak head steps
  int d = 0;  // db steps among m
  bool terminated = false;
};

struct OmegaRow {
  int n = 0;
  int m = 0;
  double ratio = 0;
};

struct QuadReport {
  std::vector<QuadRow> rows;
  std::vector<OmegaRow> omega;  // prefix growth of m against n on Omega
  bool d_equals_n = true;
  bool n_le_m = true;
  bool quadratic_bound = true;  // m <= (n+1)^2 on terminating rows
  bool ratio_increasing = true;

  bool pass() const { return d_equals_n && n_le_m && quadratic_bound && ratio_increasing; }
  std::string csv() const;
  std::string to_json() const;
};

std::vector<TermPtr> default_quadratic_corpus();
QuadReport quadratic_experiment(const std::vector<TermPtr>& corpus, int fuel);

// Greedy structural shrinking: smallest subterm (or simplification) that
// still fails the predicate.
TermPtr shrink_term(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails);

}  // namespace lampi
