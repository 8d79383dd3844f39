#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lampi/generate.hpp"
#include "lampi/process.hpp"

using namespace lampi;

TEST_CASE("parse_process reads the concrete grammar") {
  CHECK(parse_process("0")->kind == Process::Kind::Nil);

  ProcPtr p = parse_process("new x. (x<@a> | !x(@b). y<@b>)");
  CHECK(p->kind == Process::Kind::Nu);
  CHECK(p->chan == var_name("x"));
  CHECK(p->a->kind == Process::Kind::Par);
  CHECK(p->a->a->kind == Process::Kind::OutU);
  CHECK(p->a->b->kind == Process::Kind::RepIn);

  ProcPtr q = parse_process("@a(x,@b). x<@b>");
  CHECK(q->kind == Process::Kind::InB);
  CHECK(q->chan == special_name("a"));
  CHECK(q->arg1 == var_name("x"));
  CHECK(q->arg2 == special_name("b"));
  CHECK(q->a->kind == Process::Kind::OutU);

  // parallel composition is left-associative, binary nodes preserved
  ProcPtr r = parse_process("x<@a> | y<@a> | z<@a>");
  CHECK(r->kind == Process::Kind::Par);
  CHECK(r->a->kind == Process::Kind::Par);

  // the fragment is exact about arities
  CHECK_THROWS_AS(parse_process("!x(y,z). 0"), ParseError);
  CHECK_THROWS_AS(parse_process("x(y). 0"), ParseError);
  CHECK_THROWS_AS(parse_process("x<y,z,w>"), ParseError);
  CHECK_THROWS_AS(parse_process("new. 0"), ParseError);
}

TEST_CASE("free_names") {
  CHECK(free_names(parse_process("0")).empty());
  CHECK(free_names(parse_process("x<y,@a>")) ==
        NameSet{var_name("x"), var_name("y"), special_name("a")});
  CHECK(free_names(parse_process("new x. x<@a>")) == NameSet{special_name("a")});
  // input binders vanish from the continuation's contribution
  CHECK(free_names(parse_process("@a(x,@b). x<@b>")) == NameSet{special_name("a")});
  CHECK(free_names(parse_process("!x(@b). y<@b>")) ==
        NameSet{var_name("x"), var_name("y")});
}

TEST_CASE("alpha_eq_process") {
  CHECK(alpha_eq_process(parse_process("new x. x<@a>"), parse_process("new y. y<@a>")));
  CHECK_FALSE(alpha_eq_process(parse_process("x<@a>"), parse_process("x<@b>")));
  CHECK(alpha_eq_process(parse_process("!x(@b). y<@b>"), parse_process("!x(@c). y<@c>")));
  // name kinds are part of identity: a variable binder is not a special one
  CHECK_FALSE(alpha_eq_process(parse_process("new x. 0"), parse_process("new @a. 0")));
  CHECK(alpha_eq_process(parse_process("@a(x,@b). x<@b>"), parse_process("@a(y,@c). y<@c>")));
  CHECK_FALSE(
      alpha_eq_process(parse_process("@a(x,@b). x<@b>"), parse_process("@a(x,@b). x<@a>")));
}

TEST_CASE("alpha key agrees with alpha_eq_process") {
  std::vector<ProcPtr> procs;
  for (uint64_t seed = 0; seed < 80; ++seed) procs.push_back(random_process(8, seed));
  for (size_t i = 0; i < procs.size(); i += 3)
    for (size_t j = 0; j < procs.size(); j += 5)
      CHECK(alpha_eq_process(procs[i], procs[j]) ==
            (alpha_key_process(procs[i]) == alpha_key_process(procs[j])));
}

TEST_CASE("print / parse round trip preserves the tree up to alpha") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    ProcPtr p = random_process(static_cast<int>(3 + seed % 13), seed);
    ProcPtr q = parse_process(print_process(p));
    CHECK(alpha_eq_process(p, q));
  }
}

TEST_CASE("subst_names is simultaneous and capture-avoiding") {
  // swap x and y in one pass
  ProcPtr p = parse_process("x<y>");
  std::map<Name, Name> swap;
  swap[var_name("x")] = var_name("y");
  swap[var_name("y")] = var_name("x");
  CHECK(alpha_eq_process(subst_names(p, swap), parse_process("y<x>")));

  // the binder y must not capture the substituted y
  ProcPtr q = parse_process("new y. (x<@a> | y<@a>)");
  std::map<Name, Name> sigma;
  sigma[var_name("x")] = var_name("y");
  ProcPtr r = subst_names(q, sigma);
  CHECK(free_names(r).count(var_name("y")));
  CHECK(alpha_eq_process(r, parse_process("new w. (y<@a> | w<@a>)")));
}

TEST_CASE("free_names is invariant under alpha") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    ProcPtr p = random_process(10, seed);
    ProcPtr q = parse_process(print_process(p));
    CHECK(free_names(p) == free_names(q));
  }
}
