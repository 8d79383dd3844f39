#include "lampi/term.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace lampi {

namespace {

TermPtr make(Term::Kind k, Name n, TermPtr a, TermPtr b) {
  return std::make_shared<const Term>(Term{k, std::move(n), std::move(a), std::move(b)});
}

// Scoped shadowing for binder environments.
template <typename V>
struct Bind {
  std::map<Name, V>& env;
  Name name;
  std::optional<V> old;
  Bind(std::map<Name, V>& e, const Name& n, V v) : env(e), name(n) {
    auto it = env.find(n);
    if (it != env.end()) old = it->second;
    env[n] = std::move(v);
  }
  ~Bind() {
    if (old)
      env[name] = *old;
    else
      env.erase(name);
  }
};

}  // namespace

TermPtr var(Name x) { return make(Term::Kind::Var, std::move(x), nullptr, nullptr); }
TermPtr var(const std::string& x) { return var(var_name(x)); }
TermPtr lam(Name binder, TermPtr body) {
  return make(Term::Kind::Lam, std::move(binder), std::move(body), nullptr);
}
TermPtr app(TermPtr fun, TermPtr arg) {
  return make(Term::Kind::App, Name{}, std::move(fun), std::move(arg));
}
TermPtr sub(TermPtr body, Name binder, TermPtr arg) {
  return make(Term::Kind::Sub, std::move(binder), std::move(body), std::move(arg));
}

int term_size(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return 1;
    case Term::Kind::Lam: return 1 + term_size(t->a);
    default: return 1 + term_size(t->a) + term_size(t->b);
  }
}

static void free_vars_into(const TermPtr& t, NameSet& bound, NameSet& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      break;
    case Term::Kind::Lam: {
      bool fresh = bound.insert(t->name).second;
      free_vars_into(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
    case Term::Kind::App:
      free_vars_into(t->a, bound, out);
      free_vars_into(t->b, bound, out);
      break;
    case Term::Kind::Sub: {
      free_vars_into(t->b, bound, out);
      bool fresh = bound.insert(t->name).second;
      free_vars_into(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      break;
    }
  }
}

NameSet free_vars(const TermPtr& t) {
  NameSet bound, out;
  free_vars_into(t, bound, out);
  return out;
}

static void all_names_into(const TermPtr& t, NameSet& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      out.insert(t->name);
      return;
    case Term::Kind::Lam:
      out.insert(t->name);
      all_names_into(t->a, out);
      return;
    case Term::Kind::App:
      all_names_into(t->a, out);
      all_names_into(t->b, out);
      return;
    case Term::Kind::Sub:
      out.insert(t->name);
      all_names_into(t->a, out);
      all_names_into(t->b, out);
      return;
  }
}

NameSet all_term_names(const TermPtr& t) {
  NameSet out;
  all_names_into(t, out);
  return out;
}

// --- alpha machinery --------------------------------------------------------

namespace {

using Env = std::map<Name, int>;

bool alpha_eq_rec(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb, int& depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      auto ia = ea.find(a->name), ib = eb.find(b->name);
      if (ia != ea.end() || ib != eb.end())
        return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
      return a->name == b->name;
    }
    case Term::Kind::Lam: {
      int d = depth++;
      Bind<int> ba(ea, a->name, d), bb(eb, b->name, d);
      return alpha_eq_rec(a->a, b->a, ea, eb, depth);
    }
    case Term::Kind::App:
      return alpha_eq_rec(a->a, b->a, ea, eb, depth) &&
             alpha_eq_rec(a->b, b->b, ea, eb, depth);
    case Term::Kind::Sub: {
      if (!alpha_eq_rec(a->b, b->b, ea, eb, depth)) return false;
      int d = depth++;
      Bind<int> ba(ea, a->name, d), bb(eb, b->name, d);
      return alpha_eq_rec(a->a, b->a, ea, eb, depth);
    }
  }
  return false;
}

void alpha_key_rec(const TermPtr& t, Env& env, int& depth, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end())
        out += "#" + std::to_string(it->second);
      else
        out += t->name.id;
      return;
    }
    case Term::Kind::Lam: {
      int d = depth++;
      Bind<int> bind(env, t->name, d);
      out += "\\.";
      alpha_key_rec(t->a, env, depth, out);
      return;
    }
    case Term::Kind::App:
      out += "(";
      alpha_key_rec(t->a, env, depth, out);
      out += " ";
      alpha_key_rec(t->b, env, depth, out);
      out += ")";
      return;
    case Term::Kind::Sub: {
      std::string arg;
      alpha_key_rec(t->b, env, depth, arg);
      int d = depth++;
      Bind<int> bind(env, t->name, d);
      out += "[";
      alpha_key_rec(t->a, env, depth, out);
      out += "/" + arg + "]";
      return;
    }
  }
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  Env ea, eb;
  int depth = 0;
  return alpha_eq_rec(a, b, ea, eb, depth);
}

std::string alpha_key(const TermPtr& t) {
  Env env;
  int depth = 0;
  std::string out;
  alpha_key_rec(t, env, depth, out);
  return out;
}

namespace {

// Deterministic freshening used by meta_subst: smallest z<k> not in avoid.
Name det_fresh_var(const NameSet& avoid) {
  for (uint64_t k = 1;; ++k) {
    Name candidate = var_name("z" + std::to_string(k));
    if (!avoid.count(candidate)) return candidate;
  }
}

TermPtr subst_rec(const TermPtr& t, const Name& x, const TermPtr& s, const NameSet& fvs) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == x ? s : t;
    case Term::Kind::Lam: {
      if (t->name == x) return t;
      if (fvs.count(t->name)) {
        NameSet avoid = fvs;
        all_names_into(t->a, avoid);
        avoid.insert(x);
        Name fresh = det_fresh_var(avoid);
        TermPtr body = rename_free_var(t->a, t->name, fresh);
        return lam(fresh, subst_rec(body, x, s, fvs));
      }
      return lam(t->name, subst_rec(t->a, x, s, fvs));
    }
    case Term::Kind::App:
      return app(subst_rec(t->a, x, s, fvs), subst_rec(t->b, x, s, fvs));
    case Term::Kind::Sub: {
      TermPtr arg = subst_rec(t->b, x, s, fvs);
      if (t->name == x) return sub(t->a, t->name, arg);
      if (fvs.count(t->name)) {
        NameSet avoid = fvs;
        all_names_into(t->a, avoid);
        avoid.insert(x);
        Name fresh = det_fresh_var(avoid);
        TermPtr body = rename_free_var(t->a, t->name, fresh);
        return sub(subst_rec(body, x, s, fvs), fresh, arg);
      }
      return sub(subst_rec(t->a, x, s, fvs), t->name, arg);
    }
  }
  return t;
}

}  // namespace

TermPtr meta_subst(const TermPtr& t, const Name& x, const TermPtr& s) {
  return subst_rec(t, x, s, free_vars(s));
}

TermPtr rename_free_var(const TermPtr& t, const Name& from, const Name& to) {
  return meta_subst(t, from, var(to));
}

TermPtr refresh_bound(const TermPtr& t, NameSupply& supply, const NameSet& avoid) {
  switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Lam: {
      NameSet avoid2 = avoid;
      all_names_into(t->a, avoid2);
      Name fresh = supply.fresh_var(avoid2);
      return lam(fresh, refresh_bound(rename_free_var(t->a, t->name, fresh), supply, avoid));
    }
    case Term::Kind::App:
      return app(refresh_bound(t->a, supply, avoid), refresh_bound(t->b, supply, avoid));
    case Term::Kind::Sub: {
      TermPtr arg = refresh_bound(t->b, supply, avoid);
      NameSet avoid2 = avoid;
      all_names_into(t->a, avoid2);
      Name fresh = supply.fresh_var(avoid2);
      return sub(refresh_bound(rename_free_var(t->a, t->name, fresh), supply, avoid), fresh, arg);
    }
  }
  return t;
}

TermPtr alpha_canon(const TermPtr& t) {
  // Binders renamed to c1, c2, ... in traversal order, skipping free names.
  NameSet frees = free_vars(t);
  uint64_t next = 1;
  auto fresh = [&]() {
    for (;;) {
      Name candidate = var_name("c" + std::to_string(next++));
      if (!frees.count(candidate)) return candidate;
    }
  };
  std::map<Name, Name> env;
  std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& u) -> TermPtr {
    switch (u->kind) {
      case Term::Kind::Var: {
        auto it = env.find(u->name);
        return it == env.end() ? u : var(it->second);
      }
      case Term::Kind::Lam: {
        Name nn = fresh();
        Bind<Name> bind(env, u->name, nn);
        return lam(nn, go(u->a));
      }
      case Term::Kind::App: {
        TermPtr f = go(u->a);
        return app(f, go(u->b));
      }
      case Term::Kind::Sub: {
        TermPtr arg = go(u->b);
        Name nn = fresh();
        Bind<Name> bind(env, u->name, nn);
        return sub(go(u->a), nn, arg);
      }
    }
    return u;
  };
  return go(t);
}

// --- paths ------------------------------------------------------------------

TermPtr term_at(const TermPtr& root, const ContextPath& path) {
  TermPtr cur = root;
  for (Step s : path.steps) {
    switch (s) {
      case Step::AppFun:
      case Step::LamBody:
      case Step::SubBody: cur = cur->a; break;
      case Step::AppArg:
      case Step::SubArg: cur = cur->b; break;
      default: throw std::logic_error("process step in term path");
    }
    if (!cur) throw std::logic_error("path does not exist in term");
  }
  return cur;
}

TermPtr plug_term(const TermPtr& root, const ContextPath& path, const TermPtr& replacement) {
  std::function<TermPtr(const TermPtr&, size_t)> go = [&](const TermPtr& t, size_t i) -> TermPtr {
    if (i == path.steps.size()) return replacement;
    switch (path.steps[i]) {
      case Step::AppFun: return app(go(t->a, i + 1), t->b);
      case Step::AppArg: return app(t->a, go(t->b, i + 1));
      case Step::LamBody: return lam(t->name, go(t->a, i + 1));
      case Step::SubBody: return sub(go(t->a, i + 1), t->name, t->b);
      case Step::SubArg: return sub(t->a, t->name, go(t->b, i + 1));
      default: throw std::logic_error("process step in term path");
    }
  };
  return go(root, 0);
}

NameSet captured_vars(const TermPtr& root, const ContextPath& path) {
  NameSet out;
  TermPtr cur = root;
  for (Step s : path.steps) {
    switch (s) {
      case Step::LamBody:
      case Step::SubBody: out.insert(cur->name); break;
      default: break;
    }
    cur = (s == Step::AppArg || s == Step::SubArg) ? cur->b : cur->a;
  }
  return out;
}

// --- kernel / pure shapes ---------------------------------------------------

bool is_value(const TermPtr& t) {
  return t->kind == Term::Kind::Var || t->kind == Term::Kind::Lam;
}

bool is_vker(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Lam: return is_vker(t->a);
    case Term::Kind::App: return is_value(t->a) && is_vker(t->a) && is_vker(t->b);
    case Term::Kind::Sub: return is_vker(t->a) && is_vker(t->b);
  }
  return false;
}

bool is_pure(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::Lam: return is_pure(t->a);
    case Term::Kind::App: return is_pure(t->a) && is_pure(t->b);
    case Term::Kind::Sub: return false;
  }
  return false;
}

VTerm::VTerm(TermPtr t) : t_(std::move(t)) {
  if (!is_vker(t_))
    throw VkerShapeError("application whose function position is not a value", 0);
}

PureTerm::PureTerm(TermPtr t) : t_(std::move(t)) {
  if (!is_pure(t_)) throw std::invalid_argument("term contains explicit substitutions");
}

PureTerm unfold(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return PureTerm(t);
    case Term::Kind::Lam: return PureTerm(lam(t->name, unfold(t->a).raw()));
    case Term::Kind::App: return PureTerm(app(unfold(t->a).raw(), unfold(t->b).raw()));
    case Term::Kind::Sub:
      return PureTerm(meta_subst(unfold(t->a).raw(), t->name, unfold(t->b).raw()));
  }
  throw std::logic_error("unreachable");
}

// --- concrete syntax ---------------------------------------------------------
//
//   term  := "\" VAR "." term | app
//   app   := item { item }
//   item  := atom { "[" VAR "/" term "]" }
//   atom  := VAR | "(" term ")"

namespace {

struct TermParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      pos++;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }
  bool peek_atom_start() {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return c == '(' || std::islower(static_cast<unsigned char>(c));
  }
  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !std::islower(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected identifier", pos);
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      pos++;
    return std::string(text.substr(start, pos - start));
  }

  TermPtr term() {
    skip_ws();
    if (eat('\\')) {
      Name binder = var_name(ident());
      expect('.');
      return lam(binder, term());
    }
    return application();
  }

  TermPtr application() {
    TermPtr t = item();
    while (peek_atom_start()) t = app(t, item());
    return t;
  }

  TermPtr item() {
    TermPtr t = atom();
    while (eat('[')) {
      Name binder = var_name(ident());
      expect('/');
      TermPtr arg = term();
      expect(']');
      t = sub(t, binder, arg);
    }
    return t;
  }

  TermPtr atom() {
    skip_ws();
    if (eat('(')) {
      TermPtr t = term();
      expect(')');
      return t;
    }
    return var(ident());
  }
};

void print_rec(const TermPtr& t, std::ostringstream& out, bool as_item, bool as_atom) {
  switch (t->kind) {
    case Term::Kind::Var:
      out << t->name.id;
      return;
    case Term::Kind::Lam:
      if (as_item || as_atom) {
        out << "(";
        print_rec(t, out, false, false);
        out << ")";
      } else {
        out << "\\" << t->name.id << ". ";
        print_rec(t->a, out, false, false);
      }
      return;
    case Term::Kind::App:
      if (as_item || as_atom) {
        out << "(";
        print_rec(t, out, false, false);
        out << ")";
      } else {
        print_rec(t->a, out, t->a->kind == Term::Kind::Lam, false);
        out << " ";
        print_rec(t->b, out, true, false);
      }
      return;
    case Term::Kind::Sub:
      if (as_atom) {
        out << "(";
        print_rec(t, out, false, false);
        out << ")";
        return;
      }
      print_rec(t->a, out, false, t->a->kind != Term::Kind::Sub);
      out << "[" << t->name.id << "/";
      print_rec(t->b, out, false, false);
      out << "]";
      return;
  }
}

}  // namespace

TermPtr parse_term(std::string_view text) {
  TermParser p{text};
  TermPtr t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return t;
}

VTerm parse_vterm(std::string_view text) { return VTerm(parse_term(text)); }

std::string print_term(const TermPtr& t) {
  std::ostringstream out;
  print_rec(t, out, false, false);
  return out.str();
}

}  // namespace lampi
