#include "lampi/cbn.hpp"

#include <functional>
#include <map>
#include <set>

namespace lampi {

const char* cbn_label_name(CbnLabel l) { return l == CbnLabel::Db ? "db" : "ls"; }

namespace {

// Is t of shape S[\x.u] (an abstraction under a stack of substitutions)?
bool is_sub_chain_over_lam(const TermPtr& t) {
  TermPtr cur = t;
  while (cur->kind == Term::Kind::Sub) cur = cur->a;
  return cur->kind == Term::Kind::Lam;
}

}  // namespace

std::optional<CbnRedex> decompose_cbn(const TermPtr& t) {
  // Walk the weak head spine: left of applications, left of substitutions.
  struct SpineSub {
    ContextPath at;
    Name binder;
  };
  std::vector<SpineSub> spine_subs;
  ContextPath path;
  TermPtr node = t;
  for (;;) {
    switch (node->kind) {
      case Term::Kind::Lam:
        return std::nullopt;  // weak: no reduction under lambda
      case Term::Kind::App:
        if (is_sub_chain_over_lam(node->a)) return CbnRedex{CbnLabel::Db, path, {}};
        path.steps.push_back(Step::AppFun);
        node = node->a;
        break;
      case Term::Kind::Sub:
        spine_subs.push_back({path, node->name});
        path.steps.push_back(Step::SubBody);
        node = node->a;
        break;
      case Term::Kind::Var: {
        // nearest enclosing spine substitution binding this variable
        for (auto it = spine_subs.rbegin(); it != spine_subs.rend(); ++it) {
          if (it->binder == node->name) {
            ContextPath inner;
            inner.steps.assign(path.steps.begin() + it->at.steps.size() + 1, path.steps.end());
            return CbnRedex{CbnLabel::Ls, it->at, inner};
          }
        }
        return std::nullopt;  // head variable with no matching substitution
      }
    }
  }
}

namespace {

// Rename the binders of the substitution chain wrapped around the lambda so
// none of them captures a free variable of `avoid_frees`.
TermPtr rename_chain_apart(const TermPtr& chain, const NameSet& avoid_frees, NameSupply& supply,
                           NameSet& avoid_all) {
  if (chain->kind != Term::Kind::Sub) return chain;
  TermPtr body = rename_chain_apart(chain->a, avoid_frees, supply, avoid_all);
  Name binder = chain->name;
  if (avoid_frees.count(binder)) {
    Name fresh = supply.fresh_var(avoid_all);
    avoid_all.insert(fresh);
    body = rename_free_var(body, binder, fresh);
    binder = fresh;
  }
  return sub(body, binder, chain->b);
}

// Rename the substitution binders met along an evaluation path so none of
// them captures a free variable of `avoid_frees`.
TermPtr rename_spine_apart(const TermPtr& t, const ContextPath& path, size_t i,
                           const NameSet& avoid_frees, NameSupply& supply, NameSet& avoid_all) {
  if (i == path.steps.size()) return t;
  switch (path.steps[i]) {
    case Step::AppFun:
      return app(rename_spine_apart(t->a, path, i + 1, avoid_frees, supply, avoid_all), t->b);
    case Step::AppArg:
      return app(t->a, rename_spine_apart(t->b, path, i + 1, avoid_frees, supply, avoid_all));
    case Step::SubArg:
      return sub(t->a, t->name,
                 rename_spine_apart(t->b, path, i + 1, avoid_frees, supply, avoid_all));
    case Step::SubBody: {
      TermPtr body = rename_spine_apart(t->a, path, i + 1, avoid_frees, supply, avoid_all);
      Name binder = t->name;
      if (avoid_frees.count(binder)) {
        Name fresh = supply.fresh_var(avoid_all);
        avoid_all.insert(fresh);
        body = rename_free_var(body, binder, fresh);
        binder = fresh;
      }
      return sub(body, binder, t->b);
    }
    default: throw std::logic_error("unexpected step in evaluation path");
  }
}

// Replace the lambda at the bottom of a substitution chain by t[x/arg].
TermPtr contract_chain(const TermPtr& chain, const TermPtr& arg, NameSupply& supply,
                       NameSet& avoid_all) {
  if (chain->kind == Term::Kind::Sub)
    return sub(contract_chain(chain->a, arg, supply, avoid_all), chain->name, chain->b);
  // chain is the lambda
  Name binder = chain->name;
  TermPtr body = chain->a;
  if (free_vars(arg).count(binder)) {
    Name fresh = supply.fresh_var(avoid_all);
    avoid_all.insert(fresh);
    body = rename_free_var(body, binder, fresh);
    binder = fresh;
  }
  return sub(body, binder, arg);
}

}  // namespace

std::optional<std::pair<CbnLabel, TermPtr>> cbn_step(const TermPtr& t, NameSupply& supply) {
  auto redex = decompose_cbn(t);
  if (!redex) return std::nullopt;
  NameSet avoid_all = all_term_names(t);

  if (redex->kind == CbnLabel::Db) {
    TermPtr node = term_at(t, redex->pos);  // App(S[\x.u], s)
    const TermPtr& arg = node->b;
    NameSet arg_frees = free_vars(arg);
    TermPtr chain = rename_chain_apart(node->a, arg_frees, supply, avoid_all);
    TermPtr contracted = contract_chain(chain, arg, supply, avoid_all);
    return std::pair{CbnLabel::Db, plug_term(t, redex->pos, contracted)};
  }

  // ls: node = Sub(E[x], x, s); the occurrence sits at `inner` within the body
  TermPtr node = term_at(t, redex->pos);
  Name binder = node->name;
  TermPtr s = node->b;
  TermPtr body = node->a;
  NameSet s_frees = free_vars(s);
  if (s_frees.count(binder)) {
    // x free in s refers outside: rename the binder apart first
    Name fresh = supply.fresh_var(avoid_all);
    avoid_all.insert(fresh);
    body = rename_free_var(body, binder, fresh);
    binder = fresh;
  }
  body = rename_spine_apart(body, redex->inner, 0, s_frees, supply, avoid_all);
  TermPtr copy = refresh_bound(s, supply, avoid_all);
  body = plug_term(body, redex->inner, copy);
  return std::pair{CbnLabel::Ls, plug_term(t, redex->pos, sub(body, binder, s))};
}

CbnTrace cbn_trace(const TermPtr& t, int fuel) {
  CbnTrace trace;
  trace.initial = t;
  NameSupply supply;
  TermPtr cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto step = cbn_step(cur, supply);
    if (!step) {
      trace.reached_normal = true;
      return trace;
    }
    trace.steps.push_back(*step);
    cur = step->second;
  }
  trace.reached_normal = !decompose_cbn(cur).has_value();
  return trace;
}

int cbn_redex_count(const TermPtr& t) {
  // Exhaustive scan over all evaluation positions E[r]: prefixes of the
  // (unique) weak head spine. At each position test the two root shapes.
  int count = 0;
  NameSet spine_binders;
  std::function<void(const TermPtr&)> scan = [&](const TermPtr& node) {
    switch (node->kind) {
      case Term::Kind::App:
        if (is_sub_chain_over_lam(node->a)) count++;  // root db shape
        scan(node->a);
        return;
      case Term::Kind::Sub: {
        // root ls shape: body spine reaches an occurrence of the binder
        // not captured in between
        NameSet inner_binders;
        TermPtr cur = node->a;
        for (;;) {
          if (cur->kind == Term::Kind::Var) {
            if (cur->name == node->name && !inner_binders.count(cur->name)) count++;
            break;
          }
          if (cur->kind == Term::Kind::App) {
            cur = cur->a;
          } else if (cur->kind == Term::Kind::Sub) {
            inner_binders.insert(cur->name);
            cur = cur->a;
          } else {
            break;
          }
        }
        scan(node->a);
        return;
      }
      default: return;
    }
  };
  scan(t);
  return count;
}

std::optional<PureTerm> whr_oracle_step(const PureTerm& p) {
  // weak head contexts: H ::= <> | H t
  ContextPath path;
  TermPtr node = p.raw();
  while (node->kind == Term::Kind::App && node->a->kind == Term::Kind::App) {
    path.steps.push_back(Step::AppFun);
    node = node->a;
  }
  if (node->kind != Term::Kind::App || node->a->kind != Term::Kind::Lam) return std::nullopt;
  TermPtr contracted = meta_subst(node->a->a, node->a->name, node->b);
  return PureTerm(plug_term(p.raw(), path, contracted));
}

int whr_step_count(const PureTerm& p, int fuel, bool* terminated) {
  PureTerm cur = p;
  int n = 0;
  while (n < fuel) {
    auto next = whr_oracle_step(cur);
    if (!next) {
      if (terminated) *terminated = true;
      return n;
    }
    cur = *next;
    n++;
  }
  if (terminated) *terminated = !whr_oracle_step(cur).has_value();
  return n;
}

std::string flex_subterm_key(const TermPtr& t, const NameSet& flexible) {
  // Binders de-Bruijn-ified; flexible free variables abstracted by first
  // occurrence; rigid free variables verbatim.
  std::map<Name, int> bound;
  std::map<Name, int> flex_seen;
  int depth = 0;
  std::string out;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& u) {
    switch (u->kind) {
      case Term::Kind::Var: {
        auto ib = bound.find(u->name);
        if (ib != bound.end()) {
          out += "#" + std::to_string(ib->second);
        } else if (flexible.count(u->name)) {
          auto it = flex_seen.emplace(u->name, static_cast<int>(flex_seen.size())).first;
          out += "^" + std::to_string(it->second);
        } else {
          out += u->name.id;
        }
        return;
      }
      case Term::Kind::Lam: {
        int d = depth++;
        auto old = bound.find(u->name) == bound.end() ? std::optional<int>{} : bound[u->name];
        bound[u->name] = d;
        out += "\\.";
        go(u->a);
        if (old) bound[u->name] = *old; else bound.erase(u->name);
        return;
      }
      case Term::Kind::App:
        out += "(";
        go(u->a);
        out += " ";
        go(u->b);
        out += ")";
        return;
      case Term::Kind::Sub: {
        std::string arg;
        std::swap(out, arg);
        go(u->b);
        std::swap(out, arg);
        int d = depth++;
        auto old = bound.find(u->name) == bound.end() ? std::optional<int>{} : bound[u->name];
        bound[u->name] = d;
        out += "[";
        go(u->a);
        out += "/" + arg + "]";
        if (old) bound[u->name] = *old; else bound.erase(u->name);
        return;
      }
    }
  };
  go(t);
  return out;
}

namespace {

void collect_subterm_keys(const TermPtr& t, NameSet& in_scope, std::vector<std::string>& out) {
  out.push_back(flex_subterm_key(t, in_scope));
  switch (t->kind) {
    case Term::Kind::Var: return;
    case Term::Kind::Lam: {
      bool fresh = in_scope.insert(t->name).second;
      collect_subterm_keys(t->a, in_scope, out);
      if (fresh) in_scope.erase(t->name);
      return;
    }
    case Term::Kind::App:
      collect_subterm_keys(t->a, in_scope, out);
      collect_subterm_keys(t->b, in_scope, out);
      return;
    case Term::Kind::Sub: {
      collect_subterm_keys(t->b, in_scope, out);
      bool fresh = in_scope.insert(t->name).second;
      collect_subterm_keys(t->a, in_scope, out);
      if (fresh) in_scope.erase(t->name);
      return;
    }
  }
}

}  // namespace

std::vector<std::string> subterm_keys(const TermPtr& t) {
  std::vector<std::string> out;
  NameSet in_scope;
  collect_subterm_keys(t, in_scope, out);
  return out;
}

bool check_subterm_property(const TermPtr& t, int fuel) {
  std::vector<std::string> keys = subterm_keys(t);
  std::set<std::string> original(keys.begin(), keys.end());

  NameSupply supply;
  TermPtr cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto redex = decompose_cbn(cur);
    if (!redex) return true;
    if (redex->kind == CbnLabel::Ls) {
      TermPtr node = term_at(cur, redex->pos);
      // the copy is the substitution argument; names bound above it in the
      // current term are flexible for the comparison
      NameSet above = captured_vars(cur, redex->pos);
      std::string key = flex_subterm_key(node->b, above);
      if (!original.count(key)) return false;
    }
    auto step = cbn_step(cur, supply);
    if (!step) return true;
    cur = step->second;
  }
  return true;
}

}  // namespace lampi
