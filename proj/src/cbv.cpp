#include "lampi/cbv.hpp"

#include <functional>
#include <map>
#include <set>

#include "lampi/cbn.hpp"  // flex_subterm_key

namespace lampi {

const char* cbv_label_name(CbvLabel l) { return l == CbvLabel::VDb ? "vdb" : "vls"; }

namespace {

bool is_sub_chain_over_value(const TermPtr& t) {
  TermPtr cur = t;
  while (cur->kind == Term::Kind::Sub) cur = cur->a;
  return is_value(cur);
}

// Applicative occurrences of x in t: evaluation positions holding an
// application whose function is Var x, with x not captured along the way.
void applicative_occurrences(const TermPtr& t, const Name& x, ContextPath& path,
                             bool captured, std::vector<ContextPath>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Lam:
      return;
    case Term::Kind::App:
      if (!captured && t->a->kind == Term::Kind::Var && t->a->name == x) out.push_back(path);
      path.steps.push_back(Step::AppArg);
      applicative_occurrences(t->b, x, path, captured, out);
      path.steps.pop_back();
      return;
    case Term::Kind::Sub:
      path.steps.push_back(Step::SubBody);
      applicative_occurrences(t->a, x, path, captured || t->name == x, out);
      path.steps.back() = Step::SubArg;
      applicative_occurrences(t->b, x, path, captured, out);
      path.steps.pop_back();
      return;
  }
}

// Visit every evaluation position of the kernel:
//   E ::= <> | v E | t[x/E] | E[x/t]
template <typename F>
void walk_cbv_positions(const TermPtr& t, ContextPath& path, F&& f) {
  f(path, t);
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Lam:
      return;
    case Term::Kind::App:
      path.steps.push_back(Step::AppArg);
      walk_cbv_positions(t->b, path, f);
      path.steps.pop_back();
      return;
    case Term::Kind::Sub:
      path.steps.push_back(Step::SubBody);
      walk_cbv_positions(t->a, path, f);
      path.steps.back() = Step::SubArg;
      walk_cbv_positions(t->b, path, f);
      path.steps.pop_back();
      return;
  }
}

}  // namespace

std::vector<CbvRedex> enumerate_cbv_redexes(const VTerm& t) {
  std::vector<CbvRedex> out;
  ContextPath path;
  walk_cbv_positions(t.raw(), path, [&](const ContextPath& pos, const TermPtr& node) {
    if (node->kind == Term::Kind::App && node->a->kind == Term::Kind::Lam)
      out.push_back(CbvRedex{CbvLabel::VDb, pos, {}});
    if (node->kind == Term::Kind::Sub && is_sub_chain_over_value(node->b)) {
      std::vector<ContextPath> occs;
      ContextPath inner;
      applicative_occurrences(node->a, node->name, inner, false, occs);
      for (ContextPath& occ : occs) out.push_back(CbvRedex{CbvLabel::VLs, pos, std::move(occ)});
    }
  });
  return out;
}

namespace {

// Rename substitution binders along the path so none captures `avoid_frees`.
TermPtr rename_along_apart(const TermPtr& t, const ContextPath& path, size_t i,
                           const NameSet& avoid_frees, NameSupply& supply, NameSet& avoid_all) {
  if (i == path.steps.size()) return t;
  switch (path.steps[i]) {
    case Step::AppArg:
      return app(t->a, rename_along_apart(t->b, path, i + 1, avoid_frees, supply, avoid_all));
    case Step::SubArg:
      return sub(t->a, t->name,
                 rename_along_apart(t->b, path, i + 1, avoid_frees, supply, avoid_all));
    case Step::SubBody: {
      TermPtr body = rename_along_apart(t->a, path, i + 1, avoid_frees, supply, avoid_all);
      Name binder = t->name;
      if (avoid_frees.count(binder)) {
        Name fresh = supply.fresh_var(avoid_all);
        avoid_all.insert(fresh);
        body = rename_free_var(body, binder, fresh);
        binder = fresh;
      }
      return sub(body, binder, t->b);
    }
    default: throw std::logic_error("unexpected step in applicative path");
  }
}

// Rename chain binders colliding with `avoid_frees` (fv of the surrounding
// context the chain is about to scope over).
TermPtr rename_value_chain_apart(const TermPtr& chain, const NameSet& avoid_frees,
                                 NameSupply& supply, NameSet& avoid_all) {
  if (chain->kind != Term::Kind::Sub) return chain;
  TermPtr body = rename_value_chain_apart(chain->a, avoid_frees, supply, avoid_all);
  Name binder = chain->name;
  if (avoid_frees.count(binder)) {
    Name fresh = supply.fresh_var(avoid_all);
    avoid_all.insert(fresh);
    body = rename_free_var(body, binder, fresh);
    binder = fresh;
  }
  return sub(body, binder, chain->b);
}

// Rebuild a substitution chain around a new core.
TermPtr rebuild_chain(const TermPtr& chain, const TermPtr& core) {
  if (chain->kind != Term::Kind::Sub) return core;
  return sub(rebuild_chain(chain->a, core), chain->name, chain->b);
}

TermPtr chain_core(const TermPtr& chain) {
  TermPtr cur = chain;
  while (cur->kind == Term::Kind::Sub) cur = cur->a;
  return cur;
}

}  // namespace

VTerm cbv_step(const VTerm& vt, const CbvRedex& r, NameSupply& supply) {
  const TermPtr& t = vt.raw();
  NameSet avoid_all = all_term_names(t);
  TermPtr node = term_at(t, r.pos);

  if (r.kind == CbvLabel::VDb) {
    if (node->kind != Term::Kind::App || node->a->kind != Term::Kind::Lam)
      throw std::invalid_argument("invalid vdb redex descriptor");
    Name binder = node->a->name;
    TermPtr body = node->a->a;
    if (free_vars(node->b).count(binder)) {
      Name fresh = supply.fresh_var(avoid_all);
      avoid_all.insert(fresh);
      body = rename_free_var(body, binder, fresh);
      binder = fresh;
    }
    return VTerm(plug_term(t, r.pos, sub(body, binder, node->b)));
  }

  // vls: node = Sub(A[x], x, S[v])
  if (node->kind != Term::Kind::Sub || !is_sub_chain_over_value(node->b))
    throw std::invalid_argument("invalid vls redex descriptor");
  Name binder = node->name;
  TermPtr body = node->a;
  TermPtr arg_chain = node->b;

  // binder free in the argument refers outside: rename it apart
  if (free_vars(arg_chain).count(binder)) {
    Name fresh = supply.fresh_var(avoid_all);
    avoid_all.insert(fresh);
    body = rename_free_var(body, binder, fresh);
    binder = fresh;
  }

  // the substitution-context block exits: its binders must not capture the
  // applicative context (nor the binder of the surviving substitution)
  NameSet outside = free_vars(body);
  outside.insert(binder);
  arg_chain = rename_value_chain_apart(arg_chain, outside, supply, avoid_all);
  TermPtr value = chain_core(arg_chain);

  // the value lands under the context binders: rename those apart from it
  body = rename_along_apart(body, r.inner, 0, free_vars(value), supply, avoid_all);

  TermPtr occurrence = term_at(body, r.inner);
  if (occurrence->kind != Term::Kind::App || occurrence->a->kind != Term::Kind::Var ||
      occurrence->a->name != binder)
    throw std::invalid_argument("vls descriptor does not address an applicative occurrence");
  TermPtr copy = refresh_bound(value, supply, avoid_all);
  body = plug_term(body, r.inner.then(Step::AppFun), copy);

  TermPtr core = sub(body, binder, value);
  return VTerm(plug_term(t, r.pos, rebuild_chain(arg_chain, core)));
}

CbvTrace cbv_trace(const VTerm& t, int fuel) {
  CbvTrace trace;
  trace.initial = t.raw();
  NameSupply supply;
  VTerm cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto redexes = enumerate_cbv_redexes(cur);
    if (redexes.empty()) {
      trace.reached_normal = true;
      return trace;
    }
    VTerm next = cbv_step(cur, redexes.front(), supply);
    trace.steps.emplace_back(redexes.front().kind, next.raw());
    cur = next;
  }
  trace.reached_normal = enumerate_cbv_redexes(cur).empty();
  return trace;
}

std::vector<TermPtr> cbv_reachable(const VTerm& t, int fuel) {
  std::map<std::string, TermPtr> seen;
  seen.emplace(alpha_key(t.raw()), t.raw());
  std::vector<VTerm> frontier{t};
  for (int d = 0; d < fuel && !frontier.empty(); ++d) {
    std::vector<VTerm> next;
    for (const VTerm& cur : frontier)
      for (const CbvRedex& r : enumerate_cbv_redexes(cur)) {
        NameSupply supply;
        VTerm reduct = cbv_step(cur, r, supply);
        if (seen.emplace(alpha_key(reduct.raw()), reduct.raw()).second) next.push_back(reduct);
      }
    frontier = std::move(next);
  }
  std::vector<TermPtr> out;
  out.reserve(seen.size());
  for (auto& [key, term] : seen) out.push_back(term);
  return out;
}

bool check_diamond(const VTerm& t, int fuel) {
  auto successors = [](const TermPtr& s) {
    std::set<std::string> keys;
    std::vector<TermPtr> terms;
    VTerm vs(s);
    for (const CbvRedex& r : enumerate_cbv_redexes(vs)) {
      NameSupply supply;
      TermPtr u = cbv_step(vs, r, supply).raw();
      if (keys.insert(alpha_key(u)).second) terms.push_back(u);
    }
    return std::pair{keys, terms};
  };

  for (const TermPtr& s : cbv_reachable(t, fuel)) {
    auto [keys, reducts] = successors(s);
    for (size_t i = 0; i < reducts.size(); ++i)
      for (size_t j = i + 1; j < reducts.size(); ++j) {
        auto [ki, ti] = successors(reducts[i]);
        auto [kj, tj] = successors(reducts[j]);
        bool joined = false;
        for (const std::string& k : ki)
          if (kj.count(k)) {
            joined = true;
            break;
          }
        if (!joined) return false;
      }
  }
  return true;
}

namespace {

void collect_value_keys(const TermPtr& t, NameSet& in_scope, std::set<std::string>& out) {
  if (is_value(t)) out.insert(flex_subterm_key(t, in_scope));
  switch (t->kind) {
    case Term::Kind::Var: return;
    case Term::Kind::Lam: {
      bool fresh = in_scope.insert(t->name).second;
      collect_value_keys(t->a, in_scope, out);
      if (fresh) in_scope.erase(t->name);
      return;
    }
    case Term::Kind::App:
      collect_value_keys(t->a, in_scope, out);
      collect_value_keys(t->b, in_scope, out);
      return;
    case Term::Kind::Sub: {
      collect_value_keys(t->b, in_scope, out);
      bool fresh = in_scope.insert(t->name).second;
      collect_value_keys(t->a, in_scope, out);
      if (fresh) in_scope.erase(t->name);
      return;
    }
  }
}

}  // namespace

bool check_v_subterm(const VTerm& t, int fuel) {
  std::set<std::string> original;
  NameSet scope;
  collect_value_keys(t.raw(), scope, original);
  for (const TermPtr& s : cbv_reachable(t, fuel)) {
    std::set<std::string> found;
    NameSet scope2;
    collect_value_keys(s, scope2, found);
    for (const std::string& k : found)
      if (!original.count(k)) return false;
  }
  return true;
}

}  // namespace lampi
