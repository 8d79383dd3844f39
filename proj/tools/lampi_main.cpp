#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lampi/bisim.hpp"
#include "lampi/cbn.hpp"
#include "lampi/cbv.hpp"
#include "lampi/congruence.hpp"
#include "lampi/encode.hpp"
#include "lampi/generate.hpp"
#include "lampi/pi_reduction.hpp"
#include "lampi/suites.hpp"

using namespace lampi;
using nlohmann::json;

namespace {

// exit codes: 0 pass, 1 counterexample/mismatch, 2 usage or parse error
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Output {
  std::string format = "text";
  std::string path;

  void emit(const std::string& text, const json& j) const {
    std::string payload = format == "json" ? j.dump(2) + "\n" : text;
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(path);
      out << payload;
    }
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", out.path, "write the report to a file");
}

int run_trace_cbn(const std::string& text, int fuel, const Output& out) {
  TermPtr t = parse_term(text);
  CbnTrace trace = cbn_trace(t, fuel);
  std::ostringstream report;
  json j;
  j["schema"] = 1;
  j["initial"] = print_term(t);
  j["steps"] = json::array();
  report << print_term(t) << "\n";
  for (auto& [label, state] : trace.steps) {
    report << "  --" << cbn_label_name(label) << "--> " << print_term(state) << "\n";
    j["steps"].push_back({{"label", cbn_label_name(label)}, {"term", print_term(state)}});
  }
  report << (trace.reached_normal ? "normal form reached" : "fuel exhausted") << " after "
         << trace.steps.size() << " steps (db " << trace.count(CbnLabel::Db) << ", ls "
         << trace.count(CbnLabel::Ls) << ")\n";
  j["normal"] = trace.reached_normal;
  j["db"] = trace.count(CbnLabel::Db);
  j["ls"] = trace.count(CbnLabel::Ls);
  out.emit(report.str(), j);
  return kPass;
}

int run_trace_cbv(const std::string& text, int fuel, const std::string& policy,
                  const Output& out) {
  VTerm t = parse_vterm(text);
  json j;
  j["schema"] = 1;
  j["initial"] = print_term(t.raw());
  std::ostringstream report;
  if (policy == "leftmost") {
    CbvTrace trace = cbv_trace(t, fuel);
    report << print_term(t.raw()) << "\n";
    j["steps"] = json::array();
    for (auto& [label, state] : trace.steps) {
      report << "  --" << cbv_label_name(label) << "--> " << print_term(state) << "\n";
      j["steps"].push_back({{"label", cbv_label_name(label)}, {"term", print_term(state)}});
    }
    report << (trace.reached_normal ? "normal form reached" : "fuel exhausted") << " after "
           << trace.steps.size() << " steps (vdb " << trace.count(CbvLabel::VDb) << ", vls "
           << trace.count(CbvLabel::VLs) << ")\n";
    j["normal"] = trace.reached_normal;
  } else {
    auto reachable = cbv_reachable(t, fuel);
    report << reachable.size() << " states reachable from " << print_term(t.raw()) << "\n";
    j["states"] = json::array();
    for (const TermPtr& s : reachable) {
      report << "  " << print_term(s) << "\n";
      j["states"].push_back(print_term(s));
    }
  }
  out.emit(report.str(), j);
  return kPass;
}

int run_encode(const std::string& text, bool cbv, const Output& out) {
  json j;
  j["schema"] = 1;
  std::string printed;
  if (cbv) {
    VTerm t = parse_vterm(text);
    NameSupply supply;
    NameSet avoid = all_term_names(t.raw());
    Name x = supply.fresh_var(avoid);
    printed = print_process(encode_cbv(t, x, supply));
    j["parameter"] = show_name(x);
  } else {
    TermPtr t = parse_term(text);
    NameSupply supply;
    Name a = special_name("a");
    printed = print_process(encode_cbn(t, a, supply));
    j["parameter"] = show_name(a);
  }
  j["process"] = printed;
  out.emit(printed + "\n", j);
  return kPass;
}

int run_pi_step(const std::string& text, bool all, std::optional<std::string> kind,
                bool strict, const Output& out) {
  ProcPtr p = parse_process(text);
  json j;
  j["schema"] = 1;
  j["successors"] = json::array();
  std::ostringstream report;
  int shown = 0;
  for (auto& [k, q] : pi_successors(p, strict)) {
    if (kind && *kind != pi_kind_name(k)) continue;
    std::string printed = print_process(canonicalize(q));
    report << pi_kind_name(k) << ": " << printed << "\n";
    j["successors"].push_back({{"kind", pi_kind_name(k)}, {"process", printed}});
    shown++;
    if (!all) break;
  }
  if (shown == 0) report << "no successors\n";
  out.emit(report.str(), j);
  return kPass;
}

int run_congr(const std::string& ptext, const std::string& qtext, const Output& out) {
  ProcPtr p = parse_process(ptext);
  ProcPtr q = parse_process(qtext);
  bool result = congruent(p, q);
  json j;
  j["schema"] = 1;
  j["congruent"] = result;
  j["canonical_left"] = print_process(canonicalize(p));
  j["canonical_right"] = print_process(canonicalize(q));
  out.emit(result ? "true\n" : "false\n", j);
  return result ? kPass : kFail;
}

int run_harmony(const std::string& text, int depth, const Output& out) {
  ProcPtr p = parse_process(text);
  HarmonyReport report = harmony_check(p, depth);
  json j;
  j["schema"] = 1;
  j["tensor_ok"] = report.tensor_ok;
  j["bang_ok"] = report.bang_ok;
  j["distance_tensor"] = report.distance_tensor.size();
  j["classic_tensor"] = report.classic_tensor.size();
  j["distance_bang"] = report.distance_bang.size();
  j["classic_bang"] = report.classic_bang.size();
  std::ostringstream text_out;
  text_out << "tensor: " << (report.tensor_ok ? "agree" : "DISAGREE") << " (distance "
           << report.distance_tensor.size() << ", classic " << report.classic_tensor.size()
           << ")\n"
           << "bang:   " << (report.bang_ok ? "agree" : "DISAGREE") << " (distance "
           << report.distance_bang.size() << ", classic " << report.classic_bang.size() << ")\n";
  out.emit(text_out.str(), j);
  return report.ok() ? kPass : kFail;
}

int run_bisim(const std::string& text, const std::string& mode, int fuel, const Output& out) {
  TermPtr t = parse_term(text);
  BisimMode m = mode == "cbv" ? BisimMode::Cbv : BisimMode::Cbn;
  GameReport report = bisim_game(t, m, fuel);
  json j;
  j["schema"] = 1;
  j["mode"] = mode;
  j["term"] = print_term(t);
  j["pass"] = report.ok;
  j["rounds"] = report.rounds;
  j["fuel_exhausted"] = report.fuel_exhausted;
  j[m == BisimMode::Cbn ? "db" : "vdb"] = report.term_db;
  j[m == BisimMode::Cbn ? "ls" : "vls"] = report.term_ls;
  j["tensor"] = report.proc_tensor;
  j["bang"] = report.proc_bang;
  if (!report.failure.empty()) j["failure"] = report.failure;
  std::ostringstream text_out;
  text_out << (report.ok ? "pass" : "FAIL") << " after " << report.rounds << " rounds";
  if (report.fuel_exhausted) text_out << " (fuel exhausted)";
  text_out << "\n";
  if (!report.failure.empty()) text_out << report.failure << "\n";
  out.emit(text_out.str(), j);
  return report.ok ? kPass : kFail;
}

int run_enumerate(int size, const std::string& mode, bool closed, bool count_only,
                  const Output& out) {
  TermMode m = mode == "vker" ? TermMode::Vker : TermMode::Lsub;
  auto terms = enumerate_terms(size, m, closed);
  json j;
  j["schema"] = 1;
  j["count"] = terms.size();
  std::ostringstream report;
  if (count_only) {
    report << terms.size() << "\n";
  } else {
    j["terms"] = json::array();
    for (const TermPtr& t : terms) {
      report << print_term(t) << "\n";
      j["terms"].push_back(print_term(t));
    }
  }
  out.emit(report.str(), j);
  return kPass;
}

int run_suite_cmd(const std::string& name, const SuiteBounds& bounds, const Output& out) {
  SuiteResult result = run_suite(name, bounds);
  std::ostringstream report;
  report << result.name << ": " << (result.pass ? "pass" : "FAIL") << " (" << result.checked
         << " inputs, " << result.seconds << "s)\n";
  if (!result.counterexample.empty())
    report << "counterexample: " << result.counterexample << "\n";
  if (!result.detail.empty()) report << result.detail << "\n";
  out.emit(report.str(), json::parse(result.to_json()));
  return result.pass ? kPass : kFail;
}

int run_quadratic(int fuel, const Output& out) {
  QuadReport report = quadratic_experiment(default_quadratic_corpus(), fuel);
  if (out.format == "json") {
    out.emit("", json::parse(report.to_json()));
  } else {
    std::string payload = report.csv();
    payload += "\nomega prefixes (n, m, m/n):\n";
    for (const OmegaRow& row : report.omega)
      payload += "  " + std::to_string(row.n) + ", " + std::to_string(row.m) + ", " +
                 std::to_string(row.ratio) + "\n";
    payload += report.pass() ? "bounds hold\n" : "BOUNDS VIOLATED\n";
    out.emit(payload, {});
  }
  return report.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the linear substitution calculus, the value substitution "
               "kernel, and their process encodings"};
  app.require_subcommand(1);

  // trace-cbn
  std::string term_text;
  int fuel = 50;
  Output out;
  auto* trace_cbn = app.add_subcommand("trace-cbn", "linear weak head reduction trace");
  trace_cbn->add_option("term", term_text)->required();
  trace_cbn->add_option("--fuel", fuel);
  add_output_flags(trace_cbn, out);

  // trace-cbv
  std::string policy = "leftmost";
  auto* trace_cbv = app.add_subcommand("trace-cbv", "linear weak applicative reduction trace");
  trace_cbv->add_option("term", term_text)->required();
  trace_cbv->add_option("--fuel", fuel);
  trace_cbv->add_option("--policy", policy)->check(CLI::IsMember({"leftmost", "all"}));
  add_output_flags(trace_cbv, out);

  // encode-cbn / encode-cbv
  auto* encode_cbn_cmd = app.add_subcommand("encode-cbn", "call-by-name process encoding");
  encode_cbn_cmd->add_option("term", term_text)->required();
  add_output_flags(encode_cbn_cmd, out);
  auto* encode_cbv_cmd = app.add_subcommand("encode-cbv", "call-by-value process encoding");
  encode_cbv_cmd->add_option("term", term_text)->required();
  add_output_flags(encode_cbv_cmd, out);

  // pi-step
  std::string proc_text;
  bool all_steps = false;
  bool strict = false;
  std::string kind;
  auto* pi_step = app.add_subcommand("pi-step", "distance-reduction successors");
  pi_step->add_option("process", proc_text)->required();
  pi_step->add_flag("--all", all_steps, "print every successor");
  pi_step->add_option("--kind", kind)->check(CLI::IsMember({"tensor", "bang"}));
  pi_step->add_flag("--strict-orientation", strict,
                    "only match outputs on the left of a parallel composition");
  add_output_flags(pi_step, out);

  // congr
  std::string proc_text2;
  auto* congr = app.add_subcommand("congr", "structural congruence check");
  congr->add_option("left", proc_text)->required();
  congr->add_option("right", proc_text2)->required();
  add_output_flags(congr, out);

  // harmony
  int depth = 4;
  auto* harmony = app.add_subcommand("harmony", "distance vs classic successor sets");
  harmony->add_option("process", proc_text)->required();
  harmony->add_option("--depth", depth);
  add_output_flags(harmony, out);

  // bisim
  std::string mode = "cbn";
  auto* bisim = app.add_subcommand("bisim", "run the bisimulation game for a term");
  bisim->add_option("term", term_text)->required();
  bisim->add_option("--mode", mode)->check(CLI::IsMember({"cbn", "cbv"}));
  bisim->add_option("--fuel", fuel);
  add_output_flags(bisim, out);

  // enumerate
  int size = 5;
  bool closed = false;
  bool count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "exhaustive terms of a given size");
  enumerate->add_option("--size", size)->required();
  enumerate->add_option("--mode", mode)->check(CLI::IsMember({"lsub", "vker"}));
  enumerate->add_flag("--closed", closed);
  enumerate->add_flag("--count", count_only);
  add_output_flags(enumerate, out);

  // suite
  std::string suite_name;
  SuiteBounds bounds;
  bounds.max_size = 0;  // 0 = per-suite default
  auto* suite = app.add_subcommand("suite", "batch property run");
  suite->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--size", bounds.max_size);
  suite->add_option("--fuel", bounds.fuel);
  suite->add_option("--depth", bounds.depth);
  suite->add_option("--samples", bounds.samples);
  suite->add_option("--seed", bounds.seed);
  suite->add_option("--threads", bounds.threads);
  add_output_flags(suite, out);

  // quadratic
  auto* quadratic = app.add_subcommand("quadratic", "step-count experiment");
  quadratic->add_option("--fuel", fuel);
  add_output_flags(quadratic, out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (trace_cbn->parsed()) return run_trace_cbn(term_text, fuel, out);
    if (trace_cbv->parsed()) return run_trace_cbv(term_text, fuel, policy, out);
    if (encode_cbn_cmd->parsed()) return run_encode(term_text, false, out);
    if (encode_cbv_cmd->parsed()) return run_encode(term_text, true, out);
    if (pi_step->parsed())
      return run_pi_step(proc_text, all_steps,
                         kind.empty() ? std::nullopt : std::optional<std::string>(kind), strict,
                         out);
    if (congr->parsed()) return run_congr(proc_text, proc_text2, out);
    if (harmony->parsed()) return run_harmony(proc_text, depth, out);
    if (bisim->parsed()) return run_bisim(term_text, mode, fuel, out);
    if (enumerate->parsed())
      return run_enumerate(size, mode == "vker" ? "vker" : "lsub", closed, count_only, out);
    if (suite->parsed()) {
      if (bounds.max_size == 0) {
        bounds.max_size = suite_name == "determinism"  ? 9
                          : suite_name == "harmony"    ? 12
                          : suite_name == "congr-oracle" ? 10
                                                        : 8;
      }
      if (suite_name == "diamond" && bounds.fuel == 50) bounds.fuel = 20;
      return run_suite_cmd(suite_name, bounds, out);
    }
    if (quadratic->parsed()) return run_quadratic(fuel == 50 ? 600 : fuel, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.pos << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
