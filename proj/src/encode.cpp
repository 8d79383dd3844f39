#include "lampi/encode.hpp"

#include <stdexcept>

namespace lampi {

namespace {

struct CbnEncoder {
  NameSupply& supply;
  NameSet avoid;

  Name fresh_var() {
    Name n = supply.fresh_var(avoid);
    avoid.insert(n);
    return n;
  }
  Name fresh_special() {
    Name n = supply.fresh_special(avoid);
    avoid.insert(n);
    return n;
  }

  ProcPtr go(const TermPtr& t, const Name& a) {
    switch (t->kind) {
      case Term::Kind::Var:
        return out_u(t->name, a);
      case Term::Kind::Lam: {
        Name b = fresh_special();
        return in_b(a, t->name, b, go(t->a, b));
      }
      case Term::Kind::App: {
        Name b = fresh_special();
        Name x = fresh_var();
        Name c = fresh_special();
        return nu(b, nu(x, par(par(go(t->a, b), out_b(b, x, a)), rep_in(x, c, go(t->b, c)))));
      }
      case Term::Kind::Sub: {
        Name binder = t->name;
        TermPtr body = t->a;
        if (free_vars(t->b).count(binder)) {
          // the binder also occurs free in the argument: rename it apart
          Name fresh = fresh_var();
          body = rename_free_var(body, binder, fresh);
          binder = fresh;
        }
        Name b = fresh_special();
        return nu(binder, par(go(body, a), rep_in(binder, b, go(t->b, b))));
      }
    }
    throw std::logic_error("unreachable");
  }
};

struct CbvEncoder {
  NameSupply& supply;
  NameSet avoid;

  Name fresh_var() {
    Name n = supply.fresh_var(avoid);
    avoid.insert(n);
    return n;
  }
  Name fresh_special() {
    Name n = supply.fresh_special(avoid);
    avoid.insert(n);
    return n;
  }

  ProcPtr value(const TermPtr& v, const Name& a) {
    if (v->kind == Term::Kind::Var) return out_u(v->name, a);
    if (v->kind == Term::Kind::Lam) {
      Name z = fresh_var();
      return in_b(a, v->name, z, go(v->a, z));
    }
    throw std::invalid_argument("not a value");
  }

  ProcPtr go(const TermPtr& t, const Name& x) {
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Lam: {
        Name a = fresh_special();
        return rep_in(x, a, value(t, a));
      }
      case Term::Kind::App: {
        Name b = fresh_special();
        Name y = fresh_var();
        return nu(b, nu(y, par(par(value(t->a, b), out_b(b, y, x)), go(t->b, y))));
      }
      case Term::Kind::Sub: {
        Name binder = t->name;
        TermPtr body = t->a;
        // the restriction must capture neither the argument's free names nor
        // the ambient translation parameter
        if (binder == x || free_vars(t->b).count(binder)) {
          Name fresh = fresh_var();
          body = rename_free_var(body, binder, fresh);
          binder = fresh;
        }
        return nu(binder, par(go(body, x), go(t->b, binder)));
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

ProcPtr encode_cbn(const TermPtr& t, const Name& a, NameSupply& supply) {
  if (a.kind != NameKind::Special)
    throw std::invalid_argument("the CBN translation parameter must be a special name");
  CbnEncoder enc{supply, all_term_names(t)};
  enc.avoid.insert(a);
  return enc.go(t, a);
}

ProcPtr encode_cbv(const VTerm& t, const Name& x, NameSupply& supply) {
  if (x.kind != NameKind::Variable)
    throw std::invalid_argument("the CBV translation parameter must be a variable name");
  if (free_vars(t.raw()).count(x))
    throw std::invalid_argument("the CBV translation parameter must not be free in the term");
  CbvEncoder enc{supply, all_term_names(t.raw())};
  enc.avoid.insert(x);
  return enc.go(t.raw(), x);
}

ProcPtr encode_cbv_value(const TermPtr& v, const Name& a, NameSupply& supply) {
  if (!is_value(v)) throw std::invalid_argument("not a value");
  if (a.kind != NameKind::Special)
    throw std::invalid_argument("the value translation parameter must be a special name");
  CbvEncoder enc{supply, all_term_names(v)};
  enc.avoid.insert(a);
  return enc.value(v, a);
}

bool check_free_name_lemma_cbn(const TermPtr& t) {
  Name a = special_name("a");
  NameSupply supply;
  NameSet expected = free_vars(t);
  expected.insert(a);
  return free_names(encode_cbn(t, a, supply)) == expected;
}

bool check_free_name_lemma_cbv(const VTerm& t) {
  NameSupply supply;
  NameSet avoid = all_term_names(t.raw());
  Name x = supply.fresh_var(avoid);
  NameSet expected = free_vars(t.raw());
  expected.insert(x);
  NameSupply supply2;
  if (free_names(encode_cbv(t, x, supply2)) != expected) return false;
  if (is_value(t.raw())) {
    Name a = special_name("a");
    NameSet vexpected = free_vars(t.raw());
    vexpected.insert(a);
    NameSupply supply3;
    if (free_names(encode_cbv_value(t.raw(), a, supply3)) != vexpected) return false;
  }
  return true;
}

}  // namespace lampi
