#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/cbn.hpp"
#include "lampi/generate.hpp"

using namespace lampi;

namespace {
TermPtr T(const char* text) { return parse_term(text); }

std::optional<std::pair<CbnLabel, TermPtr>> step(const char* text) {
  NameSupply supply;
  return cbn_step(T(text), supply);
}

int count_kind(const TermPtr& t, Term::Kind k) {
  int n = t->kind == k ? 1 : 0;
  if (t->kind != Term::Kind::Var) {
    n += count_kind(t->a, k);
    if (t->b) n += count_kind(t->b, k);
  }
  return n;
}
}  // namespace

TEST_CASE("decompose finds the unique redex") {
  auto db = decompose_cbn(T("(\\x.x) y"));
  REQUIRE(db.has_value());
  CHECK(db->kind == CbnLabel::Db);
  CHECK(db->pos.empty());

  auto ls = decompose_cbn(T("x[x/y]"));
  REQUIRE(ls.has_value());
  CHECK(ls->kind == CbnLabel::Ls);

  CHECK_FALSE(decompose_cbn(T("\\x.x")).has_value());
  CHECK_FALSE(decompose_cbn(T("x")).has_value());
  CHECK_FALSE(decompose_cbn(T("y[x/z]")).has_value());
}

TEST_CASE("db fires at a distance through substitution contexts") {
  auto s = step("((\\x.x)[z/w]) y");
  REQUIRE(s.has_value());
  CHECK(s->first == CbnLabel::Db);
  CHECK(alpha_eq(s->second, T("(x[x/y])[z/w]")));
}

TEST_CASE("basic two-step reduction") {
  auto s1 = step("(\\x.x) y");
  REQUIRE(s1.has_value());
  CHECK(s1->first == CbnLabel::Db);
  CHECK(alpha_eq(s1->second, T("x[x/y]")));

  NameSupply supply;
  auto s2 = cbn_step(s1->second, supply);
  REQUIRE(s2.has_value());
  CHECK(s2->first == CbnLabel::Ls);
  CHECK(alpha_eq(s2->second, T("y[x/y]")));
}

TEST_CASE("the paper's self-application step") {
  auto s = step("(\\x. x x) (\\x. x x)");
  REQUIRE(s.has_value());
  CHECK(s->first == CbnLabel::Db);
  CHECK(alpha_eq(s->second, T("(x x)[x/\\x. x x]")));
}

TEST_CASE("ls picks the nearest binding substitution") {
  // the inner [x/w] shadows the outer one
  auto s = step("x[x/w][y/u]");
  REQUIRE(s.has_value());
  CHECK(alpha_eq(s->second, T("w[x/w][y/u]")));

  auto shadowed = step("x[x/a][x/b]");
  REQUIRE(shadowed.has_value());
  // the occurrence belongs to the inner binder, substituting a, not b
  CHECK(alpha_eq(shadowed->second, T("a[x/a][x/b]")));
}

TEST_CASE("ls avoids capture of the copy by evaluation binders") {
  // E = <>[y/u] captures y; s = y refers outside, so the binder is renamed
  TermPtr t = T("(x[y/u])[x/y]");
  NameSupply supply;
  auto s = cbn_step(t, supply);
  REQUIRE(s.has_value());
  CHECK(s->first == CbnLabel::Ls);
  CHECK(alpha_eq(unfold(s->second).raw(), unfold(t).raw()));
  CHECK(free_vars(s->second).count(var_name("y")));
}

TEST_CASE("binder occurring free in its own argument is renamed apart") {
  TermPtr t = T("x[x/x]");  // the argument x is free, the body x is bound
  NameSupply supply;
  auto s = cbn_step(t, supply);
  REQUIRE(s.has_value());
  CHECK(s->first == CbnLabel::Ls);
  CHECK(free_vars(s->second) == NameSet{var_name("x")});
  CHECK(alpha_eq(unfold(s->second).raw(), T("x")));
}

TEST_CASE("trace examples") {
  CbnTrace t1 = cbn_trace(T("(\\x.x) y"), 10);
  CHECK(t1.reached_normal);
  REQUIRE(t1.steps.size() == 2);
  CHECK(t1.steps[0].first == CbnLabel::Db);
  CHECK(t1.steps[1].first == CbnLabel::Ls);
  CHECK(alpha_eq(t1.steps[1].second, T("y[x/y]")));

  CHECK(cbn_trace(T("\\x.x"), 10).steps.empty());

  CbnTrace omega = cbn_trace(T("(\\x. x x) (\\x. x x)"), 3);
  CHECK(omega.steps.size() == 3);
  CHECK_FALSE(omega.reached_normal);
}

TEST_CASE("redex counting is deterministic and agrees with decompose") {
  CHECK(cbn_redex_count(T("(\\x.x) y")) == 1);
  CHECK(cbn_redex_count(T("x")) == 0);
  CHECK(cbn_redex_count(T("x[x/y][z/w]")) == 1);
  CHECK(cbn_redex_count(T("\\x. (\\y.y) z")) == 0);  // weak

  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Lsub, true)) {
    int count = cbn_redex_count(t);
    CHECK(count <= 1);
    CHECK((count == 1) == decompose_cbn(t).has_value());
  }
}

TEST_CASE("weak head oracle") {
  CHECK(alpha_eq(whr_oracle_step(unfold(T("(\\x.x) y")))->raw(), T("y")));
  CHECK_FALSE(whr_oracle_step(unfold(T("\\x. (\\y.y) z"))).has_value());
  auto omega = whr_oracle_step(unfold(T("(\\x. x x) (\\x. x x)")));
  REQUIRE(omega.has_value());
  CHECK(alpha_eq(omega->raw(), T("(\\x. x x) (\\x. x x)")));
}

TEST_CASE("projection: ls is silent, db tracks weak head beta") {
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Lsub, true)) {
    NameSupply supply;
    auto s = cbn_step(t, supply);
    if (!s) continue;
    if (s->first == CbnLabel::Ls) {
      CHECK(alpha_eq(unfold(t).raw(), unfold(s->second).raw()));
    } else {
      auto wh = whr_oracle_step(unfold(t));
      REQUIRE(wh.has_value());
      CHECK(alpha_eq(wh->raw(), unfold(s->second).raw()));
    }
  }
}

TEST_CASE("label sanity: node counts track the fired rule") {
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Lsub, true)) {
    auto redex = decompose_cbn(t);
    if (!redex) continue;
    NameSupply supply;
    auto s = cbn_step(t, supply);
    REQUIRE(s.has_value());
    int subs_before = count_kind(t, Term::Kind::Sub);
    int apps_before = count_kind(t, Term::Kind::App);
    int subs_after = count_kind(s->second, Term::Kind::Sub);
    int apps_after = count_kind(s->second, Term::Kind::App);
    if (s->first == CbnLabel::Db) {
      // db turns the fired application into a substitution
      CHECK(subs_after == subs_before + 1);
      CHECK(apps_after == apps_before - 1);
    } else {
      // ls removes nothing; the copy adds exactly the nodes of the argument
      TermPtr copied = term_at(t, redex->pos)->b;
      CHECK(subs_after == subs_before + count_kind(copied, Term::Kind::Sub));
      CHECK(apps_after == apps_before + count_kind(copied, Term::Kind::App));
    }
  }
}

TEST_CASE("termination agreement with the weak head oracle") {
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Lsub, true)) {
    bool wh_done = false;
    whr_step_count(unfold(t), 40, &wh_done);
    CbnTrace trace = cbn_trace(t, (40 + 1) * (40 + 1));
    CHECK(trace.reached_normal == wh_done);
  }
}

TEST_CASE("subterm property") {
  CHECK(check_subterm_property(T("(\\x.x) (\\y.y)"), 50));
  CHECK(check_subterm_property(T("(\\x. x x) (\\x. x x)"), 20));
  for (const TermPtr& t : enumerate_terms_up_to(7, TermMode::Lsub, true))
    CHECK(check_subterm_property(t, 30));
}
