#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/generate.hpp"
#include "lampi/term.hpp"

using namespace lampi;

TEST_CASE("parse_term reads the concrete grammar") {
  TermPtr t = parse_term("\\x. x");
  CHECK(t->kind == Term::Kind::Lam);
  CHECK(t->a->kind == Term::Kind::Var);
  CHECK(alpha_eq(t, lam(var_name("y"), var("y"))));

  TermPtr s = parse_term("x[x/y]");
  CHECK(s->kind == Term::Kind::Sub);
  CHECK(s->name == var_name("x"));
  CHECK(s->a->kind == Term::Kind::Var);
  CHECK(s->b->kind == Term::Kind::Var);

  // application is left-associative, substitution binds tightest
  TermPtr u = parse_term("a b c");
  CHECK(u->a->kind == Term::Kind::App);
  TermPtr v = parse_term("a b[x/y]");
  CHECK(v->kind == Term::Kind::App);
  CHECK(v->b->kind == Term::Kind::Sub);

  CHECK_THROWS_AS(parse_term("(x"), ParseError);
  CHECK_THROWS_AS(parse_term("x]"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
}

TEST_CASE("parse_vterm rejects non-value function positions") {
  CHECK_NOTHROW(parse_vterm("(\\x.x) (y y)"));
  CHECK_THROWS_AS(parse_vterm("(x y) z"), VkerShapeError);
  CHECK_THROWS_AS(parse_vterm("x[x/y] z"), VkerShapeError);
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse_term("x")) == NameSet{var_name("x")});
  CHECK(free_vars(parse_term("\\x. x")).empty());
  // the substitution binds x in the body only
  CHECK(free_vars(parse_term("x[x/y]")) == NameSet{var_name("y")});
  CHECK(free_vars(parse_term("y[x/y x]")) == NameSet{var_name("x"), var_name("y")});
}

TEST_CASE("alpha_eq") {
  CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
  CHECK_FALSE(alpha_eq(parse_term("x"), parse_term("y")));
  CHECK(alpha_eq(parse_term("x[x/z]"), parse_term("y[y/z]")));
  CHECK_FALSE(alpha_eq(parse_term("x[x/z]"), parse_term("x[y/z]")));
  CHECK(alpha_eq(parse_term("\\x.\\y. x y"), parse_term("\\y.\\x. y x")));
  CHECK_FALSE(alpha_eq(parse_term("\\x.\\y. x y"), parse_term("\\x.\\y. y x")));
}

TEST_CASE("alpha_key matches alpha_eq on enumerated pairs") {
  auto terms = enumerate_terms_up_to(5, TermMode::Lsub, false);
  for (size_t i = 0; i < terms.size(); i += 7)
    for (size_t j = 0; j < terms.size(); j += 11)
      CHECK(alpha_eq(terms[i], terms[j]) == (alpha_key(terms[i]) == alpha_key(terms[j])));
}

TEST_CASE("meta_subst") {
  CHECK(alpha_eq(meta_subst(parse_term("x"), var_name("x"), parse_term("y")), parse_term("y")));
  // capture avoidance: (\y. x){x := y} renames the binder
  TermPtr t = meta_subst(parse_term("\\y. x"), var_name("x"), parse_term("y"));
  CHECK(t->kind == Term::Kind::Lam);
  CHECK(t->name != var_name("y"));
  CHECK(alpha_eq(t, parse_term("\\w. y")));
  // bound occurrences untouched
  CHECK(alpha_eq(meta_subst(parse_term("\\x. x"), var_name("x"), parse_term("z")),
                 parse_term("\\x. x")));
}

TEST_CASE("unfold") {
  CHECK(alpha_eq(unfold(parse_term("x[x/y]")).raw(), parse_term("y")));
  CHECK(alpha_eq(unfold(parse_term("(\\x.x) y")).raw(), parse_term("(\\x.x) y")));
  CHECK(alpha_eq(unfold(parse_term("(x x)[x/y]")).raw(), parse_term("y y")));
  // unfolding commutes with meta substitution on the explicit substitution
  TermPtr t = parse_term("(x (\\z. x z))[x/y y]");
  CHECK(alpha_eq(unfold(t).raw(),
                 meta_subst(parse_term("x (\\z. x z)"), var_name("x"), parse_term("y y"))));
}

TEST_CASE("free variables of the unfolding never grow") {
  for (const TermPtr& t : enumerate_terms_up_to(6, TermMode::Lsub, false)) {
    NameSet before = free_vars(t);
    for (const Name& n : free_vars(unfold(t).raw())) CHECK(before.count(n));
  }
}

TEST_CASE("print / parse round trip up to alpha") {
  for (const TermPtr& t : enumerate_terms_up_to(6, TermMode::Lsub, false))
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  for (const TermPtr& t : enumerate_terms_up_to(6, TermMode::Vker, false))
    CHECK(alpha_eq(parse_term(print_term(t)), t));
}

TEST_CASE("meta_subst respects alpha equivalence") {
  auto terms = enumerate_terms_up_to(5, TermMode::Lsub, false);
  TermPtr s = parse_term("u1 u2");
  for (size_t i = 0; i < terms.size(); i += 13) {
    TermPtr canon = alpha_canon(terms[i]);
    CHECK(alpha_eq(meta_subst(terms[i], var_name("u1"), s),
                   meta_subst(canon, var_name("u1"), s)));
  }
}

TEST_CASE("fresh names avoid everything in sight") {
  NameSupply supply;
  NameSet avoid = {var_name("z1"), var_name("z2"), special_name("b1")};
  Name v = supply.fresh_var(avoid);
  CHECK_FALSE(avoid.count(v));
  CHECK(v == var_name("z3"));
  Name s = supply.fresh_special(avoid);
  CHECK(s == special_name("b2"));
  // identical supplies give identical draws
  NameSupply supply2;
  CHECK(supply2.fresh_var(avoid) == var_name("z3"));
}

TEST_CASE("refresh_bound renames every binder and preserves alpha class") {
  TermPtr t = parse_term("(\\x. x (\\y. x y))[w/\\q. q]");
  NameSupply supply;
  NameSet avoid = all_term_names(t);
  TermPtr r = refresh_bound(t, supply, avoid);
  CHECK(alpha_eq(t, r));
  CHECK(r->name != t->name);
}
