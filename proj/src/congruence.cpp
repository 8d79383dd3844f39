#include "lampi/congruence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace lampi {

namespace {

Name det_fresh(NameKind kind, const NameSet& avoid) {
  for (uint64_t k = 1;; ++k) {
    Name candidate{kind, "f" + std::to_string(k)};
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Canonicalization.
//
// A non-blocking region flattens into one "level": a block of restrictions
// over a multiset of atoms (outputs and input-prefixed processes). The level
// is printed as the lexicographically least key over all atom orders; level
// binders receive indices at first use, so the binder block order is fixed by
// the chosen atom order. Ties between atoms with equal tentative prints are
// resolved by backtracking. Beneath prefixes only alpha-renaming applies.

struct Level {
  std::vector<Name> binders;   // renamed apart, unique across the level
  std::vector<ProcPtr> atoms;  // non-Par, non-Nu, non-Nil
};

Level flatten(const ProcPtr& p, NameSet& avoid) {
  Level lvl;
  uint64_t next_tmp = 1;
  auto fresh_tmp = [&](NameKind kind) {
    for (;;) {
      Name candidate{kind, "q" + std::to_string(next_tmp++)};
      if (!avoid.count(candidate)) {
        avoid.insert(candidate);
        return candidate;
      }
    }
  };
  std::function<void(const ProcPtr&)> go = [&](const ProcPtr& q) {
    switch (q->kind) {
      case Process::Kind::Nil: return;
      case Process::Kind::Par:
        go(q->a);
        go(q->b);
        return;
      case Process::Kind::Nu: {
        Name tmp = fresh_tmp(q->chan.kind);
        lvl.binders.push_back(tmp);
        go(subst_names(q->a, {{q->chan, tmp}}));
        return;
      }
      default:
        lvl.atoms.push_back(q);
        return;
    }
  };
  go(p);
  NameSet used;
  for (const ProcPtr& a : lvl.atoms) {
    NameSet f = free_names(a);
    used.insert(f.begin(), f.end());
  }
  std::erase_if(lvl.binders, [&](const Name& b) { return !used.count(b); });
  return lvl;
}

// Canonical print of one atom. Level binders get tokens from a shared counter
// at first use (recorded in env); other binders are scoped and numbered from
// the same counter in traversal order; everything else prints verbatim.
struct AtomPrinter {
  const NameSet& level_binders;
  std::map<Name, int>& env;  // level binder -> token (persists across atoms)
  int& counter;

  std::map<Name, int> local;

  void pname(const Name& n, std::string& out) {
    auto il = local.find(n);
    if (il != local.end()) {
      out += '#';
      out += std::to_string(il->second);
      return;
    }
    auto ie = env.find(n);
    if (ie != env.end()) {
      out += '#';
      out += std::to_string(ie->second);
      return;
    }
    if (level_binders.count(n)) {
      int tok = counter++;
      env.emplace(n, tok);
      out += '#';
      out += std::to_string(tok);
      return;
    }
    out += n.kind == NameKind::Special ? 's' : 'v';
    out += ':';
    out += n.id;
  }

  template <typename F>
  void scoped(const Name& binder, F&& f) {
    auto old = local.find(binder) == local.end() ? std::optional<int>{} : local[binder];
    local[binder] = counter++;
    f();
    if (old)
      local[binder] = *old;
    else
      local.erase(binder);
  }

  void print(const ProcPtr& q, std::string& out) {
    switch (q->kind) {
      case Process::Kind::Nil:
        out += '0';
        return;
      case Process::Kind::OutU:
        out += "o(";
        pname(q->chan, out);
        out += ',';
        pname(q->arg1, out);
        out += ')';
        return;
      case Process::Kind::OutB:
        out += "O(";
        pname(q->chan, out);
        out += ',';
        pname(q->arg1, out);
        out += ',';
        pname(q->arg2, out);
        out += ')';
        return;
      case Process::Kind::Nu:
        out += q->chan.kind == NameKind::Special ? "ns" : "nv";
        scoped(q->chan, [&] {
          out += std::to_string(local[q->chan]);
          out += '.';
          print(q->a, out);
        });
        return;
      case Process::Kind::InB: {
        out += "I(";
        pname(q->chan, out);
        out += ',';
        // two binders, scoped together (second shadows on collision)
        auto o1 = local.find(q->arg1) == local.end() ? std::optional<int>{} : local[q->arg1];
        int t1 = counter++;
        local[q->arg1] = t1;
        auto o2 = local.find(q->arg2) == local.end() ? std::optional<int>{} : local[q->arg2];
        int t2 = counter++;
        local[q->arg2] = t2;
        out += (q->arg1.kind == NameKind::Special ? 's' : 'v') + std::to_string(t1);
        out += ',';
        out += (q->arg2.kind == NameKind::Special ? 's' : 'v') + std::to_string(t2);
        out += ").";
        print(q->a, out);
        if (o2)
          local[q->arg2] = *o2;
        else
          local.erase(q->arg2);
        if (o1)
          local[q->arg1] = *o1;
        else
          local.erase(q->arg1);
        return;
      }
      case Process::Kind::RepIn:
        out += "R(";
        pname(q->chan, out);
        out += ',';
        scoped(q->arg1, [&] {
          out += (q->arg1.kind == NameKind::Special ? 's' : 'v') + std::to_string(local[q->arg1]);
          out += ").";
          print(q->a, out);
        });
        return;
      case Process::Kind::Par:
        out += '(';
        print(q->a, out);
        out += '|';
        print(q->b, out);
        out += ')';
        return;
    }
  }
};

struct LevelResult {
  std::string key;
  std::vector<int> order;          // atom order achieving the key
  std::map<Name, int> assignment;  // level binder -> token
};

constexpr char kSep = '\x01';

void search_order(const Level& lvl, const NameSet& binder_set, std::vector<char>& used,
                  std::vector<int>& order, std::map<Name, int>& env, int counter,
                  std::string& acc, std::optional<LevelResult>& best) {
  // Lexicographic prefix pruning against the current best.
  if (best) {
    size_t n = std::min(acc.size(), best->key.size());
    int cmp = acc.compare(0, n, best->key, 0, n);
    if (cmp > 0) return;
    if (cmp == 0 && acc.size() >= best->key.size() && order.size() < lvl.atoms.size()) return;
  }
  if (order.size() == lvl.atoms.size()) {
    if (!best || acc < best->key) best = LevelResult{acc, order, env};
    return;
  }

  struct Cand {
    int idx;
    std::string print;
    std::map<Name, int> env_after;
    int counter_after;
  };
  std::vector<Cand> cands;
  std::string min_print;
  for (size_t i = 0; i < lvl.atoms.size(); ++i) {
    if (used[i]) continue;
    std::map<Name, int> env2 = env;
    int counter2 = counter;
    AtomPrinter printer{binder_set, env2, counter2, {}};
    std::string s;
    printer.print(lvl.atoms[i], s);
    if (cands.empty() || s < min_print) {
      min_print = s;
      cands.clear();
    }
    if (s == min_print)
      cands.push_back(Cand{static_cast<int>(i), std::move(s), std::move(env2), counter2});
  }

  // Branch on tie candidates, skipping ones with identical binder effects.
  std::set<std::vector<std::pair<Name, int>>> seen_effects;
  for (Cand& c : cands) {
    std::vector<std::pair<Name, int>> effect(c.env_after.begin(), c.env_after.end());
    if (!seen_effects.insert(effect).second) continue;
    used[c.idx] = 1;
    order.push_back(c.idx);
    size_t acc_len = acc.size();
    if (!acc.empty()) acc += kSep;
    acc += c.print;
    search_order(lvl, binder_set, used, order, c.env_after, c.counter_after, acc, best);
    acc.resize(acc_len);
    order.pop_back();
    used[c.idx] = 0;
  }
}

// Cosmetic final renaming: binders become x1,x2,... / @a1,@a2,... in traversal
// order, skipping the free names of the process.
ProcPtr cosmetic_alpha(const ProcPtr& p) {
  NameSet frees = free_names(p);
  uint64_t next_var = 1, next_special = 1;
  auto fresh = [&](NameKind kind) {
    for (;;) {
      Name candidate{kind, (kind == NameKind::Special ? "a" : "x") +
                               std::to_string(kind == NameKind::Special ? next_special++
                                                                        : next_var++)};
      if (!frees.count(candidate)) return candidate;
    }
  };
  std::map<Name, Name> env;
  std::function<ProcPtr(const ProcPtr&)> go = [&](const ProcPtr& q) -> ProcPtr {
    auto apply = [&](const Name& n) {
      auto it = env.find(n);
      return it == env.end() ? n : it->second;
    };
    switch (q->kind) {
      case Process::Kind::Nil: return q;
      case Process::Kind::OutU: return out_u(apply(q->chan), apply(q->arg1));
      case Process::Kind::OutB: return out_b(apply(q->chan), apply(q->arg1), apply(q->arg2));
      case Process::Kind::Par: {
        ProcPtr l = go(q->a);
        return par(l, go(q->b));
      }
      case Process::Kind::Nu: {
        Name nn = fresh(q->chan.kind);
        auto old = env.find(q->chan) == env.end() ? std::optional<Name>{} : env[q->chan];
        env[q->chan] = nn;
        ProcPtr body = go(q->a);
        if (old)
          env[q->chan] = *old;
        else
          env.erase(q->chan);
        return nu(nn, body);
      }
      case Process::Kind::InB: {
        Name chan = apply(q->chan);
        Name n1 = fresh(q->arg1.kind);
        auto o1 = env.find(q->arg1) == env.end() ? std::optional<Name>{} : env[q->arg1];
        env[q->arg1] = n1;
        Name n2 = fresh(q->arg2.kind);
        auto o2 = env.find(q->arg2) == env.end() ? std::optional<Name>{} : env[q->arg2];
        env[q->arg2] = n2;
        ProcPtr body = go(q->a);
        if (o2)
          env[q->arg2] = *o2;
        else
          env.erase(q->arg2);
        if (o1)
          env[q->arg1] = *o1;
        else
          env.erase(q->arg1);
        return in_b(chan, n1, n2, body);
      }
      case Process::Kind::RepIn: {
        Name chan = apply(q->chan);
        Name nn = fresh(q->arg1.kind);
        auto old = env.find(q->arg1) == env.end() ? std::optional<Name>{} : env[q->arg1];
        env[q->arg1] = nn;
        ProcPtr body = go(q->a);
        if (old)
          env[q->arg1] = *old;
        else
          env.erase(q->arg1);
        return rep_in(chan, nn, body);
      }
    }
    return q;
  };
  return go(p);
}

}  // namespace

ProcPtr canonicalize(const ProcPtr& p) {
  NameSet avoid = all_proc_names(p);
  Level lvl = flatten(p, avoid);
  if (lvl.atoms.empty()) return nil();

  NameSet binder_set(lvl.binders.begin(), lvl.binders.end());
  std::vector<char> used(lvl.atoms.size(), 0);
  std::vector<int> order;
  std::map<Name, int> env;
  std::string acc;
  std::optional<LevelResult> best;
  search_order(lvl, binder_set, used, order, env, 0, acc, best);

  std::vector<ProcPtr> atoms;
  for (int i : best->order) atoms.push_back(lvl.atoms[i]);
  ProcPtr body = atoms[0];
  for (size_t i = 1; i < atoms.size(); ++i) body = par(body, atoms[i]);

  // Binder block ordered by assigned token, outermost first.
  std::vector<std::pair<int, Name>> blk;
  for (const auto& [name, tok] : best->assignment) blk.push_back({tok, name});
  std::sort(blk.begin(), blk.end());
  for (auto it = blk.rbegin(); it != blk.rend(); ++it) body = nu(it->second, body);

  return cosmetic_alpha(body);
}

std::string canonical_key(const ProcPtr& p) { return alpha_key_process(canonicalize(p)); }

bool congruent(const ProcPtr& p, const ProcPtr& q) {
  return canonical_key(p) == canonical_key(q);
}

// ---------------------------------------------------------------------------
// Generated rules, one application at a time.

std::vector<ProcPtr> congruence_rewrites(const ProcPtr& p, bool include_insertions) {
  std::vector<ProcPtr> out;
  NameSet whole = all_proc_names(p);

  std::function<void(const ProcPtr&, ContextPath&)> walk = [&](const ProcPtr& node,
                                                               ContextPath& path) {
    auto emit = [&](ProcPtr replacement) {
      out.push_back(plug_proc(p, path, std::move(replacement)));
    };

    // P -> P | 0 at every non-blocking position
    if (include_insertions) emit(par(node, nil()));

    switch (node->kind) {
      case Process::Kind::Par: {
        emit(par(node->b, node->a));                              // comm
        if (node->b->kind == Process::Kind::Nil) emit(node->a);   // P|0 -> P
        if (node->b->kind == Process::Kind::Par)                  // A|(B|C) -> (A|B)|C
          emit(par(par(node->a, node->b->a), node->b->b));
        if (node->a->kind == Process::Kind::Par)                  // (A|B)|C -> A|(B|C)
          emit(par(node->a->a, par(node->a->b, node->b)));
        if (node->b->kind == Process::Kind::Nu) {                 // A | nu x B -> nu x (A|B)
          Name x = node->b->chan;
          ProcPtr body = node->b->a;
          if (free_names(node->a).count(x)) {
            Name x2 = det_fresh(x.kind, whole);
            body = subst_names(body, {{x, x2}});
            x = x2;
          }
          emit(nu(x, par(node->a, body)));
        }
        break;
      }
      case Process::Kind::Nu: {
        if (node->a->kind == Process::Kind::Nil) emit(nil());     // nu x 0 -> 0
        if (node->a->kind == Process::Kind::Nu)                   // nu x nu y -> nu y nu x
          emit(nu(node->a->chan, nu(node->chan, node->a->a)));
        if (node->a->kind == Process::Kind::Par &&                // nu x (A|B) -> A | nu x B
            !free_names(node->a->a).count(node->chan))
          emit(par(node->a->a, nu(node->chan, node->a->b)));
        break;
      }
      case Process::Kind::Nil: {
        if (include_insertions) {
          // 0 -> nu n 0, one representative per name kind
          emit(nu(det_fresh(NameKind::Variable, whole), nil()));
          emit(nu(det_fresh(NameKind::Special, whole), nil()));
        }
        break;
      }
      default: break;
    }

    if (node->kind == Process::Kind::Par) {
      path.steps.push_back(Step::ParLeft);
      walk(node->a, path);
      path.steps.back() = Step::ParRight;
      walk(node->b, path);
      path.steps.pop_back();
    } else if (node->kind == Process::Kind::Nu) {
      path.steps.push_back(Step::NuBody);
      walk(node->a, path);
      path.steps.pop_back();
    }
  };

  ContextPath path;
  walk(p, path);
  return out;
}

bool congruence_oracle(const ProcPtr& p, const ProcPtr& q, int depth) {
  if (depth < 0) return false;
  // Rewrites are closed under inverses, so membership within `depth` steps
  // factors through a meeting point: search half the depth from each side.
  auto ball = [](const ProcPtr& start, int radius) {
    std::map<std::string, ProcPtr> seen;
    seen.emplace(alpha_key_process(start), start);
    std::vector<ProcPtr> frontier{start};
    for (int d = 0; d < radius; ++d) {
      std::vector<ProcPtr> next;
      for (const ProcPtr& cur : frontier)
        for (ProcPtr& n : congruence_rewrites(cur)) {
          std::string key = alpha_key_process(n);
          if (seen.emplace(std::move(key), n).second) next.push_back(n);
        }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return seen;
  };
  int dp = (depth + 1) / 2, dq = depth / 2;
  auto bp = ball(p, dp);
  if (dq == 0) return bp.count(alpha_key_process(q)) > 0;
  auto bq = ball(q, dq);
  const auto& small = bp.size() < bq.size() ? bp : bq;
  const auto& large = bp.size() < bq.size() ? bq : bp;
  for (const auto& [key, proc] : small)
    if (large.count(key)) return true;
  return false;
}

DerivedRuleReport derived_rule_checks(const ProcPtr& host, const ContextPath& hole,
                                      const ProcPtr& partner, const Name& x) {
  DerivedRuleReport report;
  if (!non_blocking(hole)) {
    report.detail = "hole path is not non-blocking";
    return report;
  }
  NameSet delta = captured_names(host, hole);
  NameSet partner_fn = free_names(partner);
  for (const Name& d : delta)
    if (partner_fn.count(d)) {
      report.detail = "fn(partner) meets the captured set";
      return report;
    }
  if (delta.count(x)) {
    report.detail = "x is captured by the context";
    return report;
  }
  if (partner_fn.count(x)) {
    report.detail = "x occurs free in partner";
    return report;
  }
  NameSet ctx_fn = free_names(plug_proc(host, hole, nil()));
  if (ctx_fn.count(x)) {
    report.detail = "x occurs free in the context";
    return report;
  }
  report.precondition_ok = true;

  ProcPtr at_hole = proc_at(host, hole);
  bool item1 = congruent(par(host, partner), plug_proc(host, hole, par(at_hole, partner)));
  bool item2 = congruent(nu(x, partner), partner);
  bool item3 =
      congruent(nu(x, plug_proc(host, hole, partner)), plug_proc(host, hole, nu(x, partner)));
  report.ok = item1 && item2 && item3;
  if (!report.ok) {
    report.detail = std::string("failed items:") + (item1 ? "" : " 1") + (item2 ? "" : " 2") +
                    (item3 ? "" : " 3");
  }
  return report;
}

}  // namespace lampi
