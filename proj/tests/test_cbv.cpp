#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/cbv.hpp"
#include "lampi/generate.hpp"

using namespace lampi;

namespace {
VTerm V(const char* text) { return parse_vterm(text); }

std::vector<TermPtr> reducts(const VTerm& t) {
  std::vector<TermPtr> out;
  for (const CbvRedex& r : enumerate_cbv_redexes(t)) {
    NameSupply supply;
    out.push_back(cbv_step(t, r, supply).raw());
  }
  return out;
}
}  // namespace

TEST_CASE("redex enumeration follows the applicative restriction") {
  auto two = enumerate_cbv_redexes(V("((\\x.x) (y y))[y/z]"));
  REQUIRE(two.size() == 2);
  int vdb = 0, vls = 0;
  for (auto& r : two) (r.kind == CbvLabel::VDb ? vdb : vls)++;
  CHECK(vdb == 1);
  CHECK(vls == 1);

  CHECK(enumerate_cbv_redexes(V("y[y/z]")).empty());
  auto one = enumerate_cbv_redexes(V("(x z)[x/\\w.w]"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == CbvLabel::VLs);
}

TEST_CASE("substitution fires only on value arguments") {
  CHECK(enumerate_cbv_redexes(V("(x z)[x/y w]")).empty());
  CHECK(enumerate_cbv_redexes(V("(x z)[x/(\\w.w)[u/q]]")).size() == 1);
}

TEST_CASE("vdb instance") {
  auto rs = enumerate_cbv_redexes(V("(\\y.y) z"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == CbvLabel::VDb);
  NameSupply supply;
  CHECK(alpha_eq(cbv_step(V("(\\y.y) z"), rs[0], supply).raw(), parse_term("y[y/z]")));
}

TEST_CASE("vls keeps the substitution and copies the value") {
  auto rs = enumerate_cbv_redexes(V("(x z)[x/\\w.w]"));
  REQUIRE(rs.size() == 1);
  NameSupply supply;
  CHECK(alpha_eq(cbv_step(V("(x z)[x/\\w.w]"), rs[0], supply).raw(),
                 parse_term("((\\w.w) z)[x/\\w.w]")));
}

TEST_CASE("the substitution-context block migrates out") {
  auto rs = enumerate_cbv_redexes(V("(x z)[x/(\\w.w)[u/q]]"));
  REQUIRE(rs.size() == 1);
  NameSupply supply;
  CHECK(alpha_eq(cbv_step(V("(x z)[x/(\\w.w)[u/q]]"), rs[0], supply).raw(),
                 parse_term("(((\\w.w) z)[x/\\w.w])[u/q]")));
}

TEST_CASE("redexes under evaluation contexts, including substitution arguments") {
  // inside the argument of a substitution: t[x/E]
  auto rs = enumerate_cbv_redexes(V("y[y/(\\w.w) z]"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == CbvLabel::VDb);
  // inside the argument of an application: v E
  auto rs2 = enumerate_cbv_redexes(V("(\\q.q) ((\\w.w) z)"));
  CHECK(rs2.size() == 2);
}

TEST_CASE("trace with the leftmost policy") {
  CbvTrace t = cbv_trace(V("(\\y.y) z"), 5);
  CHECK(t.reached_normal);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].first == CbvLabel::VDb);
  CHECK(alpha_eq(t.steps[0].second, parse_term("y[y/z]")));

  CHECK(cbv_trace(V("\\x.x"), 5).steps.empty());
  CHECK(cbv_trace(V("y"), 5).steps.empty());
}

TEST_CASE("the diamond example from the kernel") {
  VTerm t = V("((\\x.x) (y y))[y/z]");
  auto rs = reducts(t);
  REQUIRE(rs.size() == 2);
  std::set<std::string> keys;
  for (auto& r : rs) keys.insert(alpha_key(r));
  CHECK(keys.count(alpha_key(parse_term("(x[x/y y])[y/z]"))));
  CHECK(keys.count(alpha_key(parse_term("((\\x.x) (z y))[y/z]"))));
  CHECK(check_diamond(t, 10));
}

TEST_CASE("diamond holds on enumerated kernel terms") {
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Vker, true))
    CHECK(check_diamond(VTerm(t), 20));
}

TEST_CASE("all maximal bounded traces of a terminating term have equal length") {
  // corollary of the diamond property
  VTerm t = V("((\\x.x) ((\\u.u) z))[y/\\w.w]");
  std::function<std::set<int>(const VTerm&, int)> lengths = [&](const VTerm& s,
                                                                int depth) -> std::set<int> {
    auto redexes = enumerate_cbv_redexes(s);
    if (redexes.empty()) return {0};
    std::set<int> out;
    for (const CbvRedex& r : redexes) {
      NameSupply supply;
      for (int l : lengths(cbv_step(s, r, supply), depth + 1)) out.insert(l + 1);
    }
    return out;
  };
  CHECK(lengths(t, 0).size() == 1);
}

TEST_CASE("kernel shape is preserved by both rules") {
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Vker, true)) {
    VTerm vt(t);
    for (const TermPtr& r : reducts(vt)) CHECK(is_vker(r));
  }
}

TEST_CASE("v-subterm property") {
  CHECK(check_v_subterm(V("(x z)[x/\\w.w]"), 20));
  CHECK(check_v_subterm(V("(\\y.y) z"), 20));
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Vker, true))
    CHECK(check_v_subterm(VTerm(t), 20));
}

TEST_CASE("binder free in its own argument is renamed apart") {
  VTerm t = V("(x z)[x/x]");  // argument x is the outer x, a value
  auto rs = enumerate_cbv_redexes(t);
  REQUIRE(rs.size() == 1);
  NameSupply supply;
  TermPtr r = cbv_step(t, rs[0], supply).raw();
  CHECK(free_vars(r) == free_vars(t.raw()));
  CHECK(alpha_eq(unfold(r).raw(), parse_term("x z")));
}
