#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/generate.hpp"
#include "lampi/pi_reduction.hpp"

using namespace lampi;

namespace {
ProcPtr P(const char* text) { return parse_process(text); }

std::vector<ProcPtr> successors_of_kind(const ProcPtr& p, PiKind kind, bool strict = false) {
  std::vector<ProcPtr> out;
  for (auto& [k, q] : pi_successors(p, strict))
    if (k == kind) out.push_back(q);
  return out;
}
}  // namespace

TEST_CASE("redex enumeration on the base shapes") {
  auto bang = enumerate_pi_redexes(P("x<@a> | !x(@b). y<@b>"));
  REQUIRE(bang.size() == 1);
  CHECK(bang[0].kind == PiKind::Bang);
  CHECK(bang[0].channel == var_name("x"));
  CHECK(bang[0].out_left);

  // channel restricted on the output side below the anchor: no redex
  CHECK(enumerate_pi_redexes(P("new x. x<@a> | !x(@b). y<@b>")).empty());

  // arity discipline: a binary output only meets a binary input
  ProcPtr mixed = P("@a<y,@b> | (@a(w,@c). w<@c> | !y(@d). 0)");
  auto redexes = enumerate_pi_redexes(mixed);
  REQUIRE(redexes.size() == 1);
  CHECK(redexes[0].kind == PiKind::Tensor);
  CHECK(redexes[0].channel == special_name("a"));
}

TEST_CASE("restriction above the anchor is fine") {
  auto redexes = enumerate_pi_redexes(P("new x. (x<@a> | !x(@b). y<@b>)"));
  REQUIRE(redexes.size() == 1);
  NameSupply supply;
  ProcPtr result = apply_pi_redex(parse_process("new x. (x<@a> | !x(@b). y<@b>)"), redexes[0],
                                  supply);
  CHECK(congruent(result, P("new x. (y<@a> | !x(@b). y<@b>)")));
}

TEST_CASE("tensor application, spec instance") {
  ProcPtr p = P("@a<x,@b> | @a(y,@c). y<@c>");
  auto redexes = enumerate_pi_redexes(p);
  REQUIRE(redexes.size() == 1);
  NameSupply supply;
  CHECK(congruent(apply_pi_redex(p, redexes[0], supply), P("x<@b>")));
}

TEST_CASE("bang application re-emits the replicated input") {
  ProcPtr p = P("x<@a> | !x(@b). y<@b>");
  auto redexes = enumerate_pi_redexes(p);
  REQUIRE(redexes.size() == 1);
  NameSupply supply;
  ProcPtr result = apply_pi_redex(p, redexes[0], supply);
  CHECK(alpha_eq_process(result, P("y<@a> | !x(@b). y<@b>")));
}

TEST_CASE("contexts land in the paper's nesting order") {
  // output-side context <> | 0 stays inside, input-side context outside
  ProcPtr p = P("(x<@a> | 0) | !x(@b). y<@b>");
  auto redexes = enumerate_pi_redexes(p);
  REQUIRE(redexes.size() == 1);
  NameSupply supply;
  ProcPtr result = apply_pi_redex(p, redexes[0], supply);
  CHECK(alpha_eq_process(result, P("(y<@a> | !x(@b). y<@b>) | 0")));
}

TEST_CASE("symmetric orientation is matched unless strict") {
  ProcPtr p = P("!x(@b). y<@b> | x<@a>");
  CHECK(enumerate_pi_redexes(p).size() == 1);
  CHECK(enumerate_pi_redexes(p, true).empty());
  ProcPtr q = P("x<@a> | !x(@b). y<@b>");
  CHECK(enumerate_pi_redexes(q, true).size() == 1);
}

TEST_CASE("payload capture by the output-side context is scope-correct") {
  // the payload y is bound inside the output-side context; the continuation
  // moves under that binder
  ProcPtr p = P("new y. x<y> | !x(z). z<@a>");
  auto redexes = enumerate_pi_redexes(p);
  REQUIRE(redexes.size() == 1);
  NameSupply supply;
  ProcPtr result = apply_pi_redex(p, redexes[0], supply);
  CHECK(congruent(result, P("new y. (y<@a> | !x(z). z<@a>)")));
}

TEST_CASE("classic raw steps require literal adjacency") {
  CHECK(classic_raw_steps(P("x<@a> | !x(@b). y<@b>")).size() == 1);
  CHECK(classic_raw_steps(P("!x(@b). y<@b> | x<@a>")).empty());
  CHECK(classic_raw_steps(P("(x<@a> | 0) | !x(@b). y<@b>")).empty());
  CHECK(classic_raw_steps(P("0")).empty());
}

TEST_CASE("classic oracle reaches the commuted redex") {
  auto results = classic_step_oracle(P("!x(@b). w<@b> | x<@a>"), 4, PiKind::Bang);
  REQUIRE(results.size() == 1);
  CHECK(congruent(results[0], P("w<@a> | !x(@b). w<@b>")));

  CHECK(classic_step_oracle(P("0"), 4, PiKind::Bang).empty());
  CHECK(classic_step_oracle(P("0"), 4, PiKind::Tensor).empty());

  auto under_nu = classic_step_oracle(P("new x. (x<@a> | !x(@b). y<@b>)"), 4, PiKind::Bang);
  REQUIRE(under_nu.size() == 1);
  CHECK(congruent(under_nu[0], P("new x. (y<@a> | !x(@b). y<@b>)")));
}

TEST_CASE("harmony on the base examples") {
  CHECK(harmony_check(P("x<@a> | !x(@b). y<@b>"), 4).ok());
  CHECK(harmony_check(P("0"), 4).ok());
  CHECK(harmony_check(P("!x(@b). y<@b> | x<@a>"), 4).ok());
  CHECK(harmony_check(P("@a<x,@b> | @a(y,@c). y<@c>"), 4).ok());
}

TEST_CASE("distance steps shrink or preserve free names, never grow them") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    ProcPtr p = random_process(static_cast<int>(4 + seed % 9), seed);
    NameSet before = free_names(p);
    for (auto& [kind, q] : pi_successors(p))
      for (const Name& n : free_names(q)) CHECK(before.count(n));
  }
}

TEST_CASE("congruence is a strong bisimulation for distance reduction") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    ProcPtr p = random_process(static_cast<int>(4 + seed % 9), seed * 11 + 1);
    ProcPtr q = random_congruent_mutation(p, seed * 11 + 2, 4).first;
    for (PiKind kind : {PiKind::Tensor, PiKind::Bang}) {
      std::set<std::string> sp, sq;
      for (const ProcPtr& r : successors_of_kind(p, kind)) sp.insert(canonical_key(r));
      for (const ProcPtr& r : successors_of_kind(q, kind)) sq.insert(canonical_key(r));
      CHECK(sp == sq);
    }
  }
}

TEST_CASE("harmony holds on random processes") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    ProcPtr p = random_process(static_cast<int>(4 + seed % 9), seed * 3 + 2);
    HarmonyReport report = harmony_check(p, 4);
    CHECK(report.ok());
  }
}
