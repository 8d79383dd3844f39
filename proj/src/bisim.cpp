#include "lampi/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lampi {

namespace {

PiKind cbn_kind(CbnLabel l) { return l == CbnLabel::Db ? PiKind::Tensor : PiKind::Bang; }
PiKind cbv_kind(CbvLabel l) { return l == CbvLabel::VDb ? PiKind::Tensor : PiKind::Bang; }

std::string mismatch_detail(const ProcPtr& got, const ProcPtr& want) {
  return "reduct encoding: " + print_process(canonicalize(want)) +
         "\nprocess step:    " + print_process(canonicalize(got)) +
         "\noracle(depth 4): " + (congruence_oracle(got, want, 4) ? "congruent" : "no witness");
}

}  // namespace

BisimReport forward_cbn(const TermPtr& t, const Name& a, NameSupply& supply) {
  BisimReport report;
  ProcPtr p = encode_cbn(t, a, supply);
  auto step = cbn_step(t, supply);
  if (!step) {
    report.ok = true;
    report.vacuous = true;
    return report;
  }
  ProcPtr target = encode_cbn(step->second, a, supply);
  std::string target_key = canonical_key(target);
  for (const PiRedex& r : enumerate_pi_redexes(p)) {
    if (r.kind != cbn_kind(step->first)) continue;
    NameSupply s2;
    ProcPtr q = apply_pi_redex(p, r, s2);
    if (canonical_key(q) == target_key) {
      report.ok = true;
      return report;
    }
  }
  report.detail = "no matching " + std::string(pi_kind_name(cbn_kind(step->first))) +
                  " step lands on the encoded reduct for " + print_term(t);
  return report;
}

BisimReport backward_cbn(const TermPtr& t, const Name& a, NameSupply& supply) {
  BisimReport report;
  ProcPtr p = encode_cbn(t, a, supply);
  auto redexes = enumerate_pi_redexes(p);
  auto step = cbn_step(t, supply);
  if (redexes.empty()) {
    report.ok = true;
    report.vacuous = true;
    return report;
  }
  if (!step) {
    report.detail = "process steps but the term is normal: " + print_term(t);
    return report;
  }
  ProcPtr target = encode_cbn(step->second, a, supply);
  std::string target_key = canonical_key(target);
  for (const PiRedex& r : redexes) {
    if (r.kind != cbn_kind(step->first)) {
      report.detail = "kind mismatch: term step " + std::string(cbn_label_name(step->first)) +
                      " vs process redex " + pi_kind_name(r.kind) + " in " + print_term(t);
      return report;
    }
    NameSupply s2;
    ProcPtr q = apply_pi_redex(p, r, s2);
    if (canonical_key(q) != target_key) {
      report.detail = mismatch_detail(q, target);
      return report;
    }
  }
  report.ok = true;
  return report;
}

namespace {

struct CbvSides {
  std::vector<std::pair<CbvLabel, VTerm>> term_steps;
  std::vector<std::pair<PiKind, ProcPtr>> proc_steps;
};

CbvSides cbv_sides(const VTerm& t, const ProcPtr& p) {
  CbvSides sides;
  for (const CbvRedex& r : enumerate_cbv_redexes(t)) {
    NameSupply s;
    sides.term_steps.emplace_back(r.kind, cbv_step(t, r, s));
  }
  for (const PiRedex& r : enumerate_pi_redexes(p)) {
    NameSupply s;
    sides.proc_steps.emplace_back(r.kind, apply_pi_redex(p, r, s));
  }
  return sides;
}

}  // namespace

BisimReport forward_cbv(const VTerm& t, const Name& x, NameSupply& supply) {
  BisimReport report;
  ProcPtr p = encode_cbv(t, x, supply);
  CbvSides sides = cbv_sides(t, p);
  if (sides.term_steps.empty()) {
    report.ok = true;
    report.vacuous = true;
    return report;
  }
  for (auto& [label, reduct] : sides.term_steps) {
    NameSupply s2;
    std::string target_key = canonical_key(encode_cbv(reduct, x, s2));
    bool matched = false;
    for (auto& [kind, q] : sides.proc_steps)
      if (kind == cbv_kind(label) && canonical_key(q) == target_key) {
        matched = true;
        break;
      }
    if (!matched) {
      report.detail = "term step " + std::string(cbv_label_name(label)) + " of " +
                      print_term(t.raw()) + " has no matching process step";
      return report;
    }
  }
  report.ok = true;
  return report;
}

BisimReport backward_cbv(const VTerm& t, const Name& x, NameSupply& supply) {
  BisimReport report;
  ProcPtr p = encode_cbv(t, x, supply);
  CbvSides sides = cbv_sides(t, p);
  if (sides.proc_steps.empty()) {
    report.ok = true;
    report.vacuous = true;
    return report;
  }
  for (auto& [kind, q] : sides.proc_steps) {
    std::string q_key = canonical_key(q);
    bool matched = false;
    for (auto& [label, reduct] : sides.term_steps) {
      if (cbv_kind(label) != kind) continue;
      NameSupply s2;
      if (canonical_key(encode_cbv(reduct, x, s2)) == q_key) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      report.detail = "process " + std::string(pi_kind_name(kind)) + " step from " +
                      print_term(t.raw()) + " is not matched by any term step";
      return report;
    }
  }
  report.ok = true;
  return report;
}

namespace {

struct CbnGame {
  int fuel;
  GameReport report;
  std::function<void(const ProcPtr&)> on_process;

  void run(TermPtr t, const Name& a) {
    NameSupply supply;
    ProcPtr p = encode_cbn(t, a, supply);
    if (on_process) on_process(p);
    for (int round = 0; round < fuel; ++round) {
      NameSupply step_supply;
      auto step = cbn_step(t, step_supply);
      auto redexes = enumerate_pi_redexes(p);
      if (!step && redexes.empty()) {
        report.ok = true;
        return;
      }
      if (!step || redexes.empty()) {
        report.failure = std::string(!step ? "term normal but process steps"
                                           : "process normal but term steps") +
                         ": " + print_term(t);
        return;
      }
      PiKind want = cbn_kind(step->first);
      NameSupply enc_supply;
      std::string target_key = canonical_key(encode_cbn(step->second, a, enc_supply));
      ProcPtr advanced;
      for (const PiRedex& r : redexes) {
        if (r.kind != want) {
          report.failure = "kind mismatch at round " + std::to_string(round) + " on " +
                           print_term(t);
          return;
        }
        NameSupply apply_supply;
        ProcPtr q = apply_pi_redex(p, r, apply_supply);
        if (canonical_key(q) != target_key) {
          report.failure = "process step does not land on the encoded reduct at round " +
                           std::to_string(round) + " on " + print_term(t);
          return;
        }
        advanced = q;
      }
      (step->first == CbnLabel::Db ? report.term_db : report.term_ls)++;
      (want == PiKind::Tensor ? report.proc_tensor : report.proc_bang)++;
      report.rounds++;
      t = step->second;
      p = advanced;
      if (on_process) on_process(p);
    }
    report.ok = true;
    report.fuel_exhausted = decompose_cbn(t).has_value();
  }
};

struct CbvGame {
  Name param;
  GameReport report;
  std::function<void(const ProcPtr&)> on_process;
  std::set<std::string> visited;
  bool failed = false;

  // depth-first over all branches; rounds reports the longest matched path
  int run(const VTerm& t, const ProcPtr& p, int fuel) {
    if (failed) return 0;
    std::string state_key = alpha_key(t.raw()) + "\x02" + canonical_key(p);
    if (!visited.insert(state_key).second) return 0;
    report.states++;
    if (on_process) on_process(p);

    auto term_redexes = enumerate_cbv_redexes(t);
    auto proc_redexes = enumerate_pi_redexes(p);

    int term_vdb = 0, term_vls = 0, proc_tensor = 0, proc_bang = 0;
    for (const CbvRedex& r : term_redexes) (r.kind == CbvLabel::VDb ? term_vdb : term_vls)++;
    for (const PiRedex& r : proc_redexes) (r.kind == PiKind::Tensor ? proc_tensor : proc_bang)++;
    if (term_vdb != proc_tensor || term_vls != proc_bang) {
      failed = true;
      report.failure = "redex counts diverge on " + print_term(t.raw()) + ": term " +
                       std::to_string(term_vdb) + "/" + std::to_string(term_vls) + ", process " +
                       std::to_string(proc_tensor) + "/" + std::to_string(proc_bang);
      return 0;
    }
    if (term_redexes.empty()) return 0;
    if (fuel == 0) {
      report.fuel_exhausted = true;
      return 0;
    }

    // process successors with canonical keys, per kind
    std::vector<std::pair<PiKind, ProcPtr>> proc_steps;
    std::vector<std::string> proc_keys;
    for (const PiRedex& r : proc_redexes) {
      NameSupply s;
      ProcPtr q = apply_pi_redex(p, r, s);
      proc_steps.emplace_back(r.kind, q);
      proc_keys.push_back(canonical_key(q));
    }

    // every process step must be matched by some term step
    std::vector<std::string> reduct_keys(term_redexes.size());
    std::vector<VTerm> reducts;
    reducts.reserve(term_redexes.size());
    for (size_t i = 0; i < term_redexes.size(); ++i) {
      NameSupply s;
      VTerm reduct = cbv_step(t, term_redexes[i], s);
      NameSupply enc;
      reduct_keys[i] = canonical_key(encode_cbv(reduct, param, enc));
      reducts.push_back(std::move(reduct));
    }
    for (size_t j = 0; j < proc_steps.size(); ++j) {
      bool matched = false;
      for (size_t i = 0; i < term_redexes.size() && !matched; ++i)
        matched = cbv_kind(term_redexes[i].kind) == proc_steps[j].first &&
                  reduct_keys[i] == proc_keys[j];
      if (!matched) {
        failed = true;
        report.failure = "unmatched process step on " + print_term(t.raw());
        return 0;
      }
    }

    int deepest = 0;
    for (size_t i = 0; i < term_redexes.size(); ++i) {
      // advance both sides along this branch
      ProcPtr advanced;
      for (size_t j = 0; j < proc_steps.size() && !advanced; ++j)
        if (proc_steps[j].first == cbv_kind(term_redexes[i].kind) &&
            proc_keys[j] == reduct_keys[i])
          advanced = proc_steps[j].second;
      if (!advanced) {
        failed = true;
        report.failure = "term step has no matching process step on " + print_term(t.raw());
        return 0;
      }
      (term_redexes[i].kind == CbvLabel::VDb ? report.term_db : report.term_ls)++;
      (cbv_kind(term_redexes[i].kind) == PiKind::Tensor ? report.proc_tensor
                                                        : report.proc_bang)++;
      deepest = std::max(deepest, 1 + run(reducts[i], advanced, fuel - 1));
      if (failed) return 0;
    }
    return deepest;
  }
};

}  // namespace

GameReport bisim_game(const TermPtr& t, BisimMode mode, int fuel,
                      const std::function<void(const ProcPtr&)>& on_process) {
  if (mode == BisimMode::Cbn) {
    CbnGame game{fuel, {}, on_process};
    game.run(t, special_name("a"));
    return game.report;
  }
  VTerm vt(t);
  NameSupply supply;
  NameSet avoid = all_term_names(t);
  Name x = supply.fresh_var(avoid);
  NameSupply enc_supply;
  ProcPtr p = encode_cbv(vt, x, enc_supply);
  CbvGame game;
  game.param = x;
  game.on_process = on_process;
  game.report.rounds = game.run(vt, p, fuel);
  if (!game.failed) game.report.ok = true;
  return game.report;
}

}  // namespace lampi
