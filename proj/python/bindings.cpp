#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lampi/bisim.hpp"
#include "lampi/cbn.hpp"
#include "lampi/cbv.hpp"
#include "lampi/congruence.hpp"
#include "lampi/encode.hpp"
#include "lampi/generate.hpp"
#include "lampi/pi_reduction.hpp"
#include "lampi/suites.hpp"

namespace py = pybind11;
using namespace lampi;

namespace {

// The module works on concrete syntax: terms and processes go in and out as
// strings, mirroring the command line.

std::string py_normalize_term(const std::string& text) {
  return print_term(parse_term(text));
}

std::string py_normalize_process(const std::string& text) {
  return print_process(parse_process(text));
}

py::list py_trace_cbn(const std::string& text, int fuel) {
  CbnTrace trace = cbn_trace(parse_term(text), fuel);
  py::list steps;
  for (auto& [label, state] : trace.steps)
    steps.append(py::make_tuple(cbn_label_name(label), print_term(state)));
  return steps;
}

py::list py_trace_cbv(const std::string& text, int fuel) {
  CbvTrace trace = cbv_trace(parse_vterm(text), fuel);
  py::list steps;
  for (auto& [label, state] : trace.steps)
    steps.append(py::make_tuple(cbv_label_name(label), print_term(state)));
  return steps;
}

std::string py_encode_cbn(const std::string& text, const std::string& channel) {
  NameSupply supply;
  return print_process(encode_cbn(parse_term(text), special_name(channel), supply));
}

std::string py_encode_cbv(const std::string& text) {
  VTerm t = parse_vterm(text);
  NameSupply supply;
  NameSet avoid = all_term_names(t.raw());
  Name x = supply.fresh_var(avoid);
  return print_process(encode_cbv(t, x, supply));
}

py::list py_pi_successors(const std::string& text, bool strict) {
  py::list out;
  for (auto& [kind, q] : pi_successors(parse_process(text), strict))
    out.append(py::make_tuple(pi_kind_name(kind), print_process(canonicalize(q))));
  return out;
}

bool py_congruent(const std::string& p, const std::string& q) {
  return congruent(parse_process(p), parse_process(q));
}

std::string py_canonical(const std::string& p) {
  return print_process(canonicalize(parse_process(p)));
}

py::dict py_harmony(const std::string& text, int depth) {
  HarmonyReport report = harmony_check(parse_process(text), depth);
  py::dict out;
  out["ok"] = report.ok();
  out["tensor_ok"] = report.tensor_ok;
  out["bang_ok"] = report.bang_ok;
  out["distance_tensor"] = report.distance_tensor.size();
  out["classic_tensor"] = report.classic_tensor.size();
  out["distance_bang"] = report.distance_bang.size();
  out["classic_bang"] = report.classic_bang.size();
  return out;
}

py::dict py_bisim(const std::string& text, const std::string& mode, int fuel) {
  GameReport report =
      bisim_game(parse_term(text), mode == "cbv" ? BisimMode::Cbv : BisimMode::Cbn, fuel);
  py::dict out;
  out["ok"] = report.ok;
  out["rounds"] = report.rounds;
  out["fuel_exhausted"] = report.fuel_exhausted;
  out["term_steps"] = py::make_tuple(report.term_db, report.term_ls);
  out["proc_steps"] = py::make_tuple(report.proc_tensor, report.proc_bang);
  if (!report.failure.empty()) out["failure"] = report.failure;
  return out;
}

py::list py_enumerate(int size, const std::string& mode, bool closed) {
  py::list out;
  for (const TermPtr& t :
       enumerate_terms(size, mode == "vker" ? TermMode::Vker : TermMode::Lsub, closed))
    out.append(print_term(t));
  return out;
}

std::string py_random_term(int size, uint64_t seed, const std::string& mode, bool closed) {
  return print_term(
      random_term(size, seed, mode == "vker" ? TermMode::Vker : TermMode::Lsub, closed));
}

py::dict py_run_suite(const std::string& name, int max_size, int fuel, int depth, int samples,
                      uint64_t seed, int threads) {
  SuiteBounds bounds;
  bounds.max_size = max_size;
  bounds.fuel = fuel;
  bounds.depth = depth;
  bounds.samples = samples;
  bounds.seed = seed;
  bounds.threads = threads;
  SuiteResult result = run_suite(name, bounds);
  py::dict out;
  out["suite"] = result.name;
  out["pass"] = result.pass;
  out["checked"] = result.checked;
  out["seconds"] = result.seconds;
  if (!result.counterexample.empty()) out["counterexample"] = result.counterexample;
  if (!result.detail.empty()) out["detail"] = result.detail;
  return out;
}

py::dict py_quadratic(int fuel) {
  QuadReport report = quadratic_experiment(default_quadratic_corpus(), fuel);
  py::dict out;
  out["pass"] = report.pass();
  out["csv"] = report.csv();
  py::list omega;
  for (const OmegaRow& row : report.omega)
    omega.append(py::make_tuple(row.n, row.m, row.ratio));
  out["omega"] = omega;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "linear substitution calculus / value substitution kernel / pi-calculus workbench";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<VkerShapeError>(m, "VkerShapeError");

  m.def("parse_term", &py_normalize_term, py::arg("text"),
        "parse a term and print it back (round-trip check)");
  m.def("parse_process", &py_normalize_process, py::arg("text"));
  m.def("free_vars", [](const std::string& text) {
    py::list out;
    for (const Name& n : free_vars(parse_term(text))) out.append(show_name(n));
    return out;
  });
  m.def("free_names", [](const std::string& text) {
    py::list out;
    for (const Name& n : free_names(parse_process(text))) out.append(show_name(n));
    return out;
  });
  m.def("alpha_eq", [](const std::string& a, const std::string& b) {
    return alpha_eq(parse_term(a), parse_term(b));
  });
  m.def("alpha_eq_process", [](const std::string& a, const std::string& b) {
    return alpha_eq_process(parse_process(a), parse_process(b));
  });
  m.def("unfold", [](const std::string& text) {
    return print_term(unfold(parse_term(text)).raw());
  });
  m.def("trace_cbn", &py_trace_cbn, py::arg("term"), py::arg("fuel") = 50);
  m.def("trace_cbv", &py_trace_cbv, py::arg("term"), py::arg("fuel") = 50);
  m.def("encode_cbn", &py_encode_cbn, py::arg("term"), py::arg("channel") = "a");
  m.def("encode_cbv", &py_encode_cbv, py::arg("term"));
  m.def("pi_successors", &py_pi_successors, py::arg("process"), py::arg("strict") = false);
  m.def("congruent", &py_congruent, py::arg("left"), py::arg("right"));
  m.def("canonicalize", &py_canonical, py::arg("process"));
  m.def("harmony_check", &py_harmony, py::arg("process"), py::arg("depth") = 4);
  m.def("bisim_game", &py_bisim, py::arg("term"), py::arg("mode") = "cbn", py::arg("fuel") = 50);
  m.def("enumerate_terms", &py_enumerate, py::arg("size"), py::arg("mode") = "lsub",
        py::arg("closed") = false);
  m.def("random_term", &py_random_term, py::arg("size"), py::arg("seed"),
        py::arg("mode") = "lsub", py::arg("closed") = true);
  m.def("run_suite", &py_run_suite, py::arg("name"), py::arg("max_size") = 6,
        py::arg("fuel") = 50, py::arg("depth") = 4, py::arg("samples") = 100,
        py::arg("seed") = 1, py::arg("threads") = 0);
  m.def("quadratic_experiment", &py_quadratic, py::arg("fuel") = 600);
}
