#include "lampi/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lampi/bisim.hpp"
#include "lampi/cbn.hpp"
#include "lampi/cbv.hpp"
#include "lampi/congruence.hpp"
#include "lampi/encode.hpp"
#include "lampi/pi_reduction.hpp"

namespace lampi {

namespace {

using nlohmann::json;

int thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Shard [0, n) across threads; results keyed by index so reports merge
// deterministically regardless of scheduling.
template <typename F>
void parallel_for(size_t n, int threads, F&& body) {
  int nthreads = thread_count(threads);
  if (nthreads <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  for (std::thread& t : pool) t.join();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Runs `check` over the corpus, recording the first failing input (by index).
SuiteResult check_terms(const std::string& name, const std::vector<TermPtr>& corpus,
                        int threads, const std::function<bool(const TermPtr&)>& check) {
  Timer timer;
  SuiteResult result;
  result.name = name;
  result.checked = static_cast<long>(corpus.size());
  std::vector<char> failed(corpus.size(), 0);
  parallel_for(corpus.size(), threads, [&](size_t i) { failed[i] = check(corpus[i]) ? 0 : 1; });
  result.pass = true;
  for (size_t i = 0; i < corpus.size(); ++i)
    if (failed[i]) {
      result.pass = false;
      TermPtr small = shrink_term(corpus[i], [&](const TermPtr& t) { return !check(t); });
      result.counterexample = print_term(small);
      break;
    }
  result.seconds = timer.seconds();
  return result;
}

}  // namespace

std::string SuiteResult::to_json() const {
  json j;
  j["schema"] = 1;
  j["suite"] = name;
  j["pass"] = pass;
  j["checked"] = checked;
  j["seconds"] = seconds;
  if (!counterexample.empty()) j["counterexample"] = counterexample;
  if (!detail.empty()) j["detail"] = detail;
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "determinism", "diamond",      "subterm",   "v-subterm", "free-names",
      "harmony",     "congr-oracle", "bisim-cbn", "bisim-cbv", "quadratic"};
  return names;
}

// --- corpus-style suites ------------------------------------------------------

namespace {

SuiteResult suite_determinism(const SuiteBounds& b) {
  auto corpus = enumerate_terms_up_to(b.max_size, TermMode::Lsub, true);
  return check_terms("determinism", corpus, b.threads, [](const TermPtr& t) {
    int count = cbn_redex_count(t);
    if (count > 1) return false;
    return (count == 1) == decompose_cbn(t).has_value();
  });
}

SuiteResult suite_diamond(const SuiteBounds& b) {
  auto corpus = enumerate_terms_up_to(b.max_size, TermMode::Vker, true);
  int fuel = b.fuel;
  return check_terms("diamond", corpus, b.threads,
                     [fuel](const TermPtr& t) { return check_diamond(VTerm(t), fuel); });
}

SuiteResult suite_subterm(const SuiteBounds& b) {
  auto corpus = enumerate_terms_up_to(b.max_size, TermMode::Lsub, true);
  int fuel = b.fuel;
  return check_terms("subterm", corpus, b.threads,
                     [fuel](const TermPtr& t) { return check_subterm_property(t, fuel); });
}

SuiteResult suite_v_subterm(const SuiteBounds& b) {
  auto corpus = enumerate_terms_up_to(b.max_size, TermMode::Vker, true);
  int fuel = b.fuel;
  return check_terms("v-subterm", corpus, b.threads,
                     [fuel](const TermPtr& t) { return check_v_subterm(VTerm(t), fuel); });
}

SuiteResult suite_free_names(const SuiteBounds& b) {
  auto lsub = enumerate_terms_up_to(b.max_size, TermMode::Lsub, false);
  auto vker = enumerate_terms_up_to(b.max_size, TermMode::Vker, false);
  SuiteResult r1 = check_terms("free-names", lsub, b.threads, check_free_name_lemma_cbn);
  SuiteResult r2 = check_terms("free-names", vker, b.threads, [](const TermPtr& t) {
    return check_free_name_lemma_cbv(VTerm(t));
  });
  SuiteResult result = r1;
  result.checked += r2.checked;
  result.seconds += r2.seconds;
  if (r1.pass && !r2.pass) {
    result.pass = false;
    result.counterexample = r2.counterexample;
  }
  return result;
}

}  // namespace

BisimCorpusResult run_bisim_corpus(BisimMode mode, int max_size, int fuel, bool collect,
                                   int threads) {
  Timer timer;
  BisimCorpusResult out;
  auto corpus = enumerate_terms_up_to(
      max_size, mode == BisimMode::Cbn ? TermMode::Lsub : TermMode::Vker, true);
  out.result.name = mode == BisimMode::Cbn ? "bisim-cbn" : "bisim-cbv";
  out.result.checked = static_cast<long>(corpus.size());

  std::vector<char> failed(corpus.size(), 0);
  std::vector<std::vector<ProcPtr>> collected(collect ? corpus.size() : 0);
  parallel_for(corpus.size(), threads, [&](size_t i) {
    std::function<void(const ProcPtr&)> sink;
    if (collect) sink = [&collected, i](const ProcPtr& p) { collected[i].push_back(p); };
    GameReport report = bisim_game(corpus[i], mode, fuel, sink);
    failed[i] = report.ok ? 0 : 1;
  });

  out.result.pass = true;
  for (size_t i = 0; i < corpus.size(); ++i)
    if (failed[i]) {
      out.result.pass = false;
      BisimMode m = mode;
      int f = fuel;
      TermPtr small = shrink_term(corpus[i], [m, f](const TermPtr& t) {
        try {
          return !bisim_game(t, m, f).ok;
        } catch (const std::exception&) {
          return false;  // shape-invalid shrink candidates are not counterexamples
        }
      });
      out.result.counterexample = print_term(small);
      break;
    }
  if (collect) {
    std::set<std::string> seen;
    for (auto& per_game : collected)
      for (ProcPtr& p : per_game)
        if (seen.insert(alpha_key_process(p)).second) out.reachable.push_back(std::move(p));
  }
  out.result.seconds = timer.seconds();
  return out;
}

SuiteResult run_harmony_over(const std::vector<ProcPtr>& processes, int depth, int threads) {
  Timer timer;
  SuiteResult result;
  result.name = "harmony";
  result.checked = static_cast<long>(processes.size());
  std::vector<char> failed(processes.size(), 0);
  parallel_for(processes.size(), threads,
               [&](size_t i) { failed[i] = harmony_check(processes[i], depth).ok() ? 0 : 1; });
  result.pass = true;
  for (size_t i = 0; i < processes.size(); ++i)
    if (failed[i]) {
      result.pass = false;
      result.counterexample = print_process(processes[i]);
      break;
    }
  result.seconds = timer.seconds();
  return result;
}

SuiteResult run_equiv_bisim(const SuiteBounds& b) {
  // Lemma "structural congruence is a strong bisimulation for the distance
  // semantics": congruent processes have congruent successor sets, per kind.
  Timer timer;
  SuiteResult result;
  result.name = "equiv-bisim";
  result.checked = b.samples;
  std::vector<char> failed(b.samples, 0);
  parallel_for(b.samples, b.threads, [&](size_t i) {
    uint64_t seed = b.seed + i;
    ProcPtr p = random_process(2 + static_cast<int>(seed % (b.max_size - 1)), seed * 2 + 1);
    ProcPtr q = random_congruent_mutation(p, seed * 2 + 2, b.depth).first;
    auto succ_keys = [](const ProcPtr& proc, PiKind kind) {
      std::set<std::string> keys;
      for (auto& [k, r] : pi_successors(proc))
        if (k == kind) keys.insert(canonical_key(r));
      return keys;
    };
    bool ok = succ_keys(p, PiKind::Tensor) == succ_keys(q, PiKind::Tensor) &&
              succ_keys(p, PiKind::Bang) == succ_keys(q, PiKind::Bang);
    failed[i] = ok ? 0 : 1;
  });
  result.pass = true;
  for (int i = 0; i < b.samples; ++i)
    if (failed[i]) {
      result.pass = false;
      result.detail = "seed " + std::to_string(b.seed + i);
      break;
    }
  result.seconds = timer.seconds();
  return result;
}

namespace {

SuiteResult suite_harmony(const SuiteBounds& b) {
  Timer timer;
  // processes reachable by the two bisimulation games ...
  std::vector<ProcPtr> processes;
  {
    auto cbn = run_bisim_corpus(BisimMode::Cbn, 8, b.fuel, true, b.threads);
    auto cbv = run_bisim_corpus(BisimMode::Cbv, 8, b.fuel, true, b.threads);
    std::set<std::string> seen;
    for (auto* bucket : {&cbn.reachable, &cbv.reachable})
      for (ProcPtr& p : *bucket)
        if (seen.insert(alpha_key_process(p)).second) processes.push_back(std::move(p));
    // ... plus seeded random processes
    for (int i = 0; i < b.samples; ++i) {
      uint64_t seed = b.seed + i;
      ProcPtr p = random_process(2 + static_cast<int>(seed % (b.max_size - 1)), seed);
      if (seen.insert(alpha_key_process(p)).second) processes.push_back(std::move(p));
    }
  }
  SuiteResult result = run_harmony_over(processes, b.depth, b.threads);
  SuiteResult equiv = run_equiv_bisim(b);
  result.checked += equiv.checked;
  if (result.pass && !equiv.pass) {
    result.pass = false;
    result.counterexample = equiv.counterexample;
    result.detail = "congruent pair with diverging successor sets: " + equiv.detail;
  }
  result.seconds = timer.seconds();
  return result;
}

SuiteResult suite_congr_oracle(const SuiteBounds& b) {
  Timer timer;
  SuiteResult result;
  result.name = "congr-oracle";
  result.checked = b.samples;
  std::vector<char> failed(b.samples, 0);
  parallel_for(b.samples, b.threads, [&](size_t i) {
    uint64_t seed = b.seed + i;
    int size = 2 + static_cast<int>(seed % (b.max_size - 1));
    ProcPtr p = random_process(size, seed * 3 + 1);
    // congruent by construction with a witness within depth rewrites:
    // both the decision procedure and the oracle must agree
    auto [q, applied] = random_congruent_mutation(p, seed * 3 + 2, b.depth);
    if (!congruent(p, q) || !congruence_oracle(p, q, b.depth)) {
      failed[i] = 1;
      return;
    }
    // independent pair: the bounded oracle must never contradict congruent
    ProcPtr r = random_process(size, seed * 3 + 3);
    if (congruence_oracle(p, r, b.depth) && !congruent(p, r)) failed[i] = 2;
  });
  result.pass = true;
  for (int i = 0; i < b.samples; ++i)
    if (failed[i]) {
      result.pass = false;
      result.detail = "seed " + std::to_string(b.seed + i) +
                      (failed[i] == 1 ? " (mutation disagreement)" : " (oracle soundness)");
      break;
    }
  result.seconds = timer.seconds();
  return result;
}

SuiteResult suite_quadratic(const SuiteBounds& b) {
  Timer timer;
  QuadReport report = quadratic_experiment(default_quadratic_corpus(), b.fuel);
  SuiteResult result;
  result.name = "quadratic";
  result.checked = static_cast<long>(report.rows.size() + report.omega.size());
  result.pass = report.pass();
  if (!result.pass) result.detail = report.to_json();
  result.seconds = timer.seconds();
  return result;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteBounds& bounds) {
  if (name == "determinism") return suite_determinism(bounds);
  if (name == "diamond") return suite_diamond(bounds);
  if (name == "subterm") return suite_subterm(bounds);
  if (name == "v-subterm") return suite_v_subterm(bounds);
  if (name == "free-names") return suite_free_names(bounds);
  if (name == "harmony") return suite_harmony(bounds);
  if (name == "congr-oracle") return suite_congr_oracle(bounds);
  if (name == "bisim-cbn")
    return run_bisim_corpus(BisimMode::Cbn, bounds.max_size, bounds.fuel, false, bounds.threads)
        .result;
  if (name == "bisim-cbv")
    return run_bisim_corpus(BisimMode::Cbv, bounds.max_size, bounds.fuel, false, bounds.threads)
        .result;
  if (name == "quadratic") return suite_quadratic(bounds);
  throw std::invalid_argument("unknown suite: " + name);
}

// --- quadratic experiment -----------------------------------------------------

namespace {

TermPtr church(int n) {
  Name s = var_name("s"), z = var_name("z");
  TermPtr body = var(z);
  for (int i = 0; i < n; ++i) body = app(var(s), body);
  return lam(s, lam(z, body));
}

TermPtr church_add() { return parse_term("\\m.\\n.\\s.\\z. (m s) ((n s) z)"); }
TermPtr church_mul() { return parse_term("\\m.\\n.\\s. m (n s)"); }

}  // namespace

std::vector<TermPtr> default_quadratic_corpus() {
  std::vector<TermPtr> corpus;
  TermPtr o = var("o"), w = var("w");
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      corpus.push_back(app(app(app(app(church_add(), church(i)), church(j)), o), w));
      corpus.push_back(app(app(app(app(church_mul(), church(i)), church(j)), o), w));
    }
  corpus.push_back(parse_term("(\\x.x) ((\\y.y) (\\z.z))"));
  corpus.push_back(parse_term("(\\x.\\y.x) o w"));
  corpus.push_back(parse_term("(\\x. x x) (\\y. o)"));
  return corpus;
}

QuadReport quadratic_experiment(const std::vector<TermPtr>& corpus, int fuel) {
  QuadReport report;
  for (const TermPtr& t : corpus) {
    QuadRow row;
    row.term = print_term(t);
    bool wh_done = false;
    row.n = whr_step_count(unfold(t), fuel, &wh_done);
    CbnTrace trace = cbn_trace(t, fuel);
    row.m = static_cast<int>(trace.steps.size());
    row.d = trace.count(CbnLabel::Db);
    row.terminated = wh_done && trace.reached_normal;
    if (row.terminated) {
      report.d_equals_n &= row.d == row.n;
      report.n_le_m &= row.n <= row.m;
      report.quadratic_bound &= row.m <= (row.n + 1) * (row.n + 1);
    }
    report.rows.push_back(std::move(row));
  }

  // prefix growth on Omega: m against n at each db step
  TermPtr omega = parse_term("(\\x. x x) (\\x. x x)");
  CbnTrace trace = cbn_trace(omega, fuel);
  int n = 0;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    if (trace.steps[i].first == CbnLabel::Db) {
      n++;
      OmegaRow row;
      row.n = n;
      row.m = static_cast<int>(i + 1);
      row.ratio = static_cast<double>(row.m) / n;
      report.omega.push_back(row);
    }
  }
  // the ratio must be strictly increasing across at least 10 prefix lengths
  int run = 1, best_run = 1;
  for (size_t i = 1; i < report.omega.size(); ++i) {
    run = report.omega[i].ratio > report.omega[i - 1].ratio ? run + 1 : 1;
    best_run = std::max(best_run, run);
  }
  report.ratio_increasing = best_run >= 10;
  return report;
}

std::string QuadReport::csv() const {
  std::ostringstream out;
  out << "term,n,m,d,terminated\n";
  for (const QuadRow& row : rows)
    out << '"' << row.term << "\"," << row.n << ',' << row.m << ',' << row.d << ','
        << (row.terminated ? "true" : "false") << '\n';
  return out.str();
}

std::string QuadReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["pass"] = pass();
  j["d_equals_n"] = d_equals_n;
  j["n_le_m"] = n_le_m;
  j["quadratic_bound"] = quadratic_bound;
  j["ratio_increasing"] = ratio_increasing;
  j["rows"] = json::array();
  for (const QuadRow& row : rows)
    j["rows"].push_back({{"term", row.term},
                         {"n", row.n},
                         {"m", row.m},
                         {"d", row.d},
                         {"terminated", row.terminated}});
  j["omega"] = json::array();
  for (const OmegaRow& row : omega)
    j["omega"].push_back({{"n", row.n}, {"m", row.m}, {"ratio", row.ratio}});
  return j.dump(2);
}

TermPtr shrink_term(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails) {
  TermPtr current = t;
  for (;;) {
    std::vector<TermPtr> candidates;
    switch (current->kind) {
      case Term::Kind::Var: return current;
      case Term::Kind::Lam: candidates = {current->a}; break;
      case Term::Kind::App:
      case Term::Kind::Sub: candidates = {current->a, current->b}; break;
    }
    TermPtr smaller;
    for (const TermPtr& c : candidates)
      if (fails(c) && (!smaller || term_size(c) < term_size(smaller))) smaller = c;
    if (!smaller) return current;
    current = smaller;
  }
}

}  // namespace lampi
