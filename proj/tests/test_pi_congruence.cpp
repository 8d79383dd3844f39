#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/congruence.hpp"
#include "lampi/generate.hpp"

using namespace lampi;

namespace {
ProcPtr P(const char* text) { return parse_process(text); }
}  // namespace

TEST_CASE("generated rules, one by one") {
  CHECK(congruent(P("x<@a> | 0"), P("x<@a>")));                          // P | 0
  CHECK(congruent(P("x<@a> | (y<@a> | z<@a>)"), P("(x<@a> | y<@a>) | z<@a>")));  // assoc
  CHECK(congruent(P("x<@a> | y<@b>"), P("y<@b> | x<@a>")));              // comm
  CHECK(congruent(P("new x. 0"), P("0")));                               // nu x 0
  CHECK(congruent(P("x<@a> | new y. y<@b>"), P("new y. (x<@a> | y<@b>)")));  // extrusion
  CHECK(congruent(P("new x. new y. x<y>"), P("new y. new x. x<y>")));    // nu swap
}

TEST_CASE("scope extrusion needs the side condition") {
  // y free on the left: the binder must move only after renaming, and the
  // classes genuinely differ
  CHECK_FALSE(congruent(P("y<@a> | new y. y<@b>"), P("new y. (y<@a> | y<@b>)")));
  CHECK(congruent(P("y<@a> | new y. y<@b>"), P("new w. (y<@a> | w<@b>)")));
}

TEST_CASE("canonicalize examples") {
  CHECK(alpha_eq_process(canonicalize(P("(x<@a> | 0)")), P("x<@a>")));
  CHECK(alpha_eq_process(canonicalize(P("new x. 0")), P("0")));
  CHECK(congruent(P("x<@a> | new y. y<@b>"), P("new y. (x<@a> | y<@b>)")));
  // unused restrictions disappear wherever extrusion can float them
  CHECK(alpha_eq_process(canonicalize(P("new x. (y<@a> | 0)")), P("y<@a>")));
}

TEST_CASE("congruence does not look under prefixes") {
  CHECK_FALSE(congruent(P("x(y,z). (w<@a> | 0)"), P("x(y,z). w<@a>")));
  CHECK_FALSE(congruent(P("!x(y). (w<@a> | 0)"), P("!x(y). w<@a>")));
  CHECK_FALSE(congruent(P("x(y,z). (w<@a> | u<@b>)"), P("x(y,z). (u<@b> | w<@a>)")));
  // alpha under prefixes is still free
  CHECK(congruent(P("x(y,@c). new w. y<@c>"), P("x(q,@d). new v. q<@d>")));
}

TEST_CASE("congruent is insensitive to nesting and order of components") {
  ProcPtr a = P("new x. ((x<@a> | !x(@b). y<@b>) | (z<@c> | 0))");
  ProcPtr b = P("new w. (z<@c> | (!w(@d). y<@d> | w<@a>))");
  CHECK(congruent(a, b));
  ProcPtr c = P("new w. (z<@c> | (!w(@d). y<@d> | w<@c>))");  // payload differs
  CHECK_FALSE(congruent(a, c));
}

TEST_CASE("canonicalize is idempotent and preserves free names") {
  for (uint64_t seed = 0; seed < 400; ++seed) {
    ProcPtr p = random_process(static_cast<int>(3 + seed % 10), seed);
    ProcPtr c = canonicalize(p);
    CHECK(alpha_eq_process(c, canonicalize(c)));
    CHECK(free_names(c) == free_names(p));
    CHECK(congruent(p, c));
  }
}

TEST_CASE("congruent is preserved by non-blocking wrappers") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    ProcPtr p = random_process(6, seed);
    ProcPtr q = random_congruent_mutation(p, seed + 7, 4).first;
    REQUIRE(congruent(p, q));
    ProcPtr ctx_p = nu(var_name("x"), par(p, P("u<@a>")));
    ProcPtr ctx_q = nu(var_name("x"), par(q, P("u<@a>")));
    CHECK(congruent(ctx_p, ctx_q));
  }
}

TEST_CASE("oracle agrees with the decision procedure") {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    ProcPtr p = random_process(static_cast<int>(3 + seed % 8), seed * 5 + 1);
    auto [q, steps] = random_congruent_mutation(p, seed * 5 + 2, 4);
    CHECK(congruent(p, q));
    CHECK(congruence_oracle(p, q, 4));
    ProcPtr r = random_process(static_cast<int>(3 + seed % 8), seed * 5 + 3);
    if (congruence_oracle(p, r, 4)) CHECK(congruent(p, r));
  }
}

TEST_CASE("oracle base cases") {
  CHECK(congruence_oracle(P("x<@a> | 0"), P("x<@a>"), 1));
  CHECK(congruence_oracle(P("x<@a>"), P("x<@a>"), 0));
  CHECK_FALSE(congruence_oracle(P("x<@a>"), P("y<@a>"), 4));
  CHECK(congruence_oracle(P("(x<@a> | y<@b>) | z<@c>"), P("x<@a> | (y<@b> | z<@c>)"), 1));
}

TEST_CASE("derived rule checks") {
  // context new y. (<> | x<@b>) with hole at the left of the par
  ProcPtr host = P("new y. (y<@a> | x<@b>)");
  ContextPath hole;
  hole.steps = {Step::NuBody, Step::ParLeft};
  DerivedRuleReport ok = derived_rule_checks(host, hole, P("w<@c>"), var_name("v"));
  CHECK(ok.precondition_ok);
  CHECK(ok.ok);

  // precondition violation: partner mentions the captured name y
  DerivedRuleReport bad = derived_rule_checks(host, hole, P("y<@c>"), var_name("v"));
  CHECK_FALSE(bad.precondition_ok);

  // x free in the context violates item 3's side condition
  DerivedRuleReport bad2 = derived_rule_checks(host, hole, P("w<@c>"), var_name("x"));
  CHECK_FALSE(bad2.precondition_ok);
}

TEST_CASE("spec instances of the derived rules") {
  // new y.(y<@a>) | x<@b>  ==  new y.(y<@a> | x<@b>)
  CHECK(congruent(P("new y. y<@a> | x<@b>"), P("new y. (y<@a> | x<@b>)")));
  // useless restriction
  CHECK(congruent(P("new x. y<@a>"), P("y<@a>")));
  // scope motion across a context
  CHECK(congruent(P("new x. (y<@b> | x<@a>)"), P("y<@b> | new x. x<@a>")));
}
