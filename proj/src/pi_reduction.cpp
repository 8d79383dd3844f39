#include "lampi/pi_reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace lampi {

const char* pi_kind_name(PiKind k) { return k == PiKind::Tensor ? "tensor" : "bang"; }

namespace {

// Visit every non-blocking position (path crosses Par and Nu only).
template <typename F>
void walk_non_blocking(const ProcPtr& p, ContextPath& path, F&& f) {
  f(path, p);
  if (p->kind == Process::Kind::Par) {
    path.steps.push_back(Step::ParLeft);
    walk_non_blocking(p->a, path, f);
    path.steps.back() = Step::ParRight;
    walk_non_blocking(p->b, path, f);
    path.steps.pop_back();
  } else if (p->kind == Process::Kind::Nu) {
    path.steps.push_back(Step::NuBody);
    walk_non_blocking(p->a, path, f);
    path.steps.pop_back();
  }
}

struct Occurrence {
  ContextPath path;
  ProcPtr node;
};

void collect_outputs_inputs(const ProcPtr& child, std::vector<Occurrence>& outs,
                            std::vector<Occurrence>& ins) {
  ContextPath path;
  walk_non_blocking(child, path, [&](const ContextPath& at, const ProcPtr& node) {
    switch (node->kind) {
      case Process::Kind::OutU:
      case Process::Kind::OutB: outs.push_back({at, node}); break;
      case Process::Kind::InB:
      case Process::Kind::RepIn: ins.push_back({at, node}); break;
      default: break;
    }
  });
}

// Rename every Nu binder along `path` to a fresh name.
ProcPtr refresh_nu_binders(const ProcPtr& node, const ContextPath& path, size_t i,
                           NameSupply& supply, NameSet& avoid) {
  if (i == path.steps.size()) return node;
  switch (path.steps[i]) {
    case Step::ParLeft:
      return par(refresh_nu_binders(node->a, path, i + 1, supply, avoid), node->b);
    case Step::ParRight:
      return par(node->a, refresh_nu_binders(node->b, path, i + 1, supply, avoid));
    case Step::NuBody: {
      Name fresh = supply.fresh_like(node->chan, avoid);
      avoid.insert(fresh);
      ProcPtr body = subst_names(node->a, {{node->chan, fresh}});
      return nu(fresh, refresh_nu_binders(body, path, i + 1, supply, avoid));
    }
    default: throw std::logic_error("blocking step in redex path");
  }
}

}  // namespace

std::vector<PiRedex> enumerate_pi_redexes(const ProcPtr& p, bool strict_out_left) {
  std::vector<PiRedex> redexes;
  ContextPath path;
  walk_non_blocking(p, path, [&](const ContextPath& anchor, const ProcPtr& node) {
    if (node->kind != Process::Kind::Par) return;
    auto scan = [&](bool out_left) {
      const ProcPtr& out_child = out_left ? node->a : node->b;
      const ProcPtr& in_child = out_left ? node->b : node->a;
      std::vector<Occurrence> outs, ins, dummy_outs, dummy_ins;
      collect_outputs_inputs(out_child, outs, dummy_ins);
      collect_outputs_inputs(in_child, dummy_outs, ins);
      for (const Occurrence& o : outs) {
        bool binary = o.node->kind == Process::Kind::OutB;
        for (const Occurrence& in : ins) {
          bool in_binary = in.node->kind == Process::Kind::InB;
          if (binary != in_binary) continue;
          if (o.node->chan != in.node->chan) continue;
          const Name& x = o.node->chan;
          if (captured_names(out_child, o.path).count(x)) continue;
          if (captured_names(in_child, in.path).count(x)) continue;
          redexes.push_back(PiRedex{binary ? PiKind::Tensor : PiKind::Bang, x, anchor, out_left,
                                    o.path, in.path});
        }
      }
    };
    scan(true);
    if (!strict_out_left) scan(false);
  });
  return redexes;
}

ProcPtr apply_pi_redex(const ProcPtr& p, const PiRedex& r, NameSupply& supply) {
  ProcPtr anchor_node = proc_at(p, r.anchor);
  if (anchor_node->kind != Process::Kind::Par)
    throw std::invalid_argument("redex anchor is not a parallel composition");
  ProcPtr out_child = r.out_left ? anchor_node->a : anchor_node->b;
  ProcPtr in_child = r.out_left ? anchor_node->b : anchor_node->a;

  NameSet avoid = all_proc_names(p);
  out_child = refresh_nu_binders(out_child, r.out_path, 0, supply, avoid);
  in_child = refresh_nu_binders(in_child, r.in_path, 0, supply, avoid);

  ProcPtr out_node = proc_at(out_child, r.out_path);
  ProcPtr in_node = proc_at(in_child, r.in_path);

  ProcPtr plug;
  if (r.kind == PiKind::Tensor) {
    if (out_node->kind != Process::Kind::OutB || in_node->kind != Process::Kind::InB ||
        out_node->chan != in_node->chan)
      throw std::invalid_argument("invalid tensor redex descriptor");
    std::map<Name, Name> sigma;
    sigma[in_node->arg1] = out_node->arg1;
    sigma[in_node->arg2] = out_node->arg2;  // later binder shadows on collision
    plug = subst_names(in_node->a, sigma);
  } else {
    if (out_node->kind != Process::Kind::OutU || in_node->kind != Process::Kind::RepIn ||
        out_node->chan != in_node->chan)
      throw std::invalid_argument("invalid bang redex descriptor");
    std::map<Name, Name> sigma;
    sigma[in_node->arg1] = out_node->arg1;
    // the replicated input is re-emitted next to the instantiated copy
    plug = par(subst_names(in_node->a, sigma), in_node);
  }

  // input-side context outside, output-side context inside
  ProcPtr inner = plug_proc(out_child, r.out_path, plug);
  ProcPtr at_anchor = plug_proc(in_child, r.in_path, inner);
  return plug_proc(p, r.anchor, at_anchor);
}

std::vector<std::pair<PiKind, ProcPtr>> pi_successors(const ProcPtr& p, bool strict_out_left) {
  std::vector<std::pair<PiKind, ProcPtr>> out;
  for (const PiRedex& r : enumerate_pi_redexes(p, strict_out_left)) {
    NameSupply supply;
    out.emplace_back(r.kind, apply_pi_redex(p, r, supply));
  }
  return out;
}

std::vector<std::pair<PiKind, ProcPtr>> classic_raw_steps(const ProcPtr& p) {
  std::vector<std::pair<PiKind, ProcPtr>> out;
  ContextPath path;
  walk_non_blocking(p, path, [&](const ContextPath& at, const ProcPtr& node) {
    if (node->kind != Process::Kind::Par) return;
    const ProcPtr& l = node->a;
    const ProcPtr& r = node->b;
    if (l->kind == Process::Kind::OutB && r->kind == Process::Kind::InB && l->chan == r->chan) {
      std::map<Name, Name> sigma;
      sigma[r->arg1] = l->arg1;
      sigma[r->arg2] = l->arg2;
      out.emplace_back(PiKind::Tensor, plug_proc(p, at, subst_names(r->a, sigma)));
    }
    if (l->kind == Process::Kind::OutU && r->kind == Process::Kind::RepIn && l->chan == r->chan) {
      std::map<Name, Name> sigma;
      sigma[r->arg1] = l->arg1;
      out.emplace_back(PiKind::Bang, plug_proc(p, at, par(subst_names(r->a, sigma), r)));
    }
  });
  return out;
}

namespace {

// One congruence move for the oracle's member enumeration: the six generated
// rules (junk insertions aside, which never expose a redex) plus the derived
// context-join fact N[Q] | R == N[Q | R] aimed at communication atoms Q. The
// join crosses an arbitrary non-blocking context in one move, so any redex
// the distance rules can match becomes literally adjacent within four moves;
// with primitive rules alone the number of moves grows with the nesting
// depth of the restrictions around the redex.
std::vector<ProcPtr> oracle_member_moves(const ProcPtr& p) {
  std::vector<ProcPtr> out = congruence_rewrites(p, false);
  ContextPath path;
  walk_non_blocking(p, path, [&](const ContextPath& at, const ProcPtr& node) {
    if (node->kind != Process::Kind::Par) return;
    ContextPath inner;
    walk_non_blocking(node->a, inner, [&](const ContextPath& u, const ProcPtr& sub) {
      switch (sub->kind) {
        case Process::Kind::OutU:
        case Process::Kind::OutB:
        case Process::Kind::InB:
        case Process::Kind::RepIn: break;
        default: return;
      }
      if (u.empty()) return;  // the identity instance
      NameSupply supply;
      NameSet avoid = all_proc_names(p);
      ProcPtr left = refresh_nu_binders(node->a, u, 0, supply, avoid);
      ProcPtr atom = proc_at(left, u);
      out.push_back(plug_proc(p, at, plug_proc(left, u, par(atom, node->b))));
    });
  });
  return out;
}

// Raw steps over the congruence-class ball of radius `depth`, canonical
// representatives keyed by canonical key, split by kind.
std::pair<std::map<std::string, ProcPtr>, std::map<std::string, ProcPtr>> classic_successors(
    const ProcPtr& p, int depth) {
  std::map<std::string, ProcPtr> members;
  members.emplace(alpha_key_process(p), p);
  std::vector<ProcPtr> frontier{p};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<ProcPtr> next;
    for (const ProcPtr& cur : frontier)
      for (ProcPtr& n : oracle_member_moves(cur)) {
        std::string key = alpha_key_process(n);
        if (members.emplace(std::move(key), n).second) next.push_back(n);
      }
    frontier = std::move(next);
  }

  // raw successors deduplicated by alpha first, canonicalized once each
  std::map<std::string, std::pair<PiKind, ProcPtr>> raw;
  for (const auto& [key, member] : members)
    for (auto& [k, q] : classic_raw_steps(member))
      raw.emplace(alpha_key_process(q) + (k == PiKind::Tensor ? "\x01t" : "\x01b"),
                  std::pair{k, q});

  std::pair<std::map<std::string, ProcPtr>, std::map<std::string, ProcPtr>> out;
  for (auto& [key, entry] : raw) {
    ProcPtr canon = canonicalize(entry.second);
    auto& bucket = entry.first == PiKind::Tensor ? out.first : out.second;
    bucket.emplace(alpha_key_process(canon), canon);
  }
  return out;
}

}  // namespace

std::vector<ProcPtr> classic_step_oracle(const ProcPtr& p, int depth, PiKind kind) {
  auto both = classic_successors(p, depth);
  auto& bucket = kind == PiKind::Tensor ? both.first : both.second;
  std::vector<ProcPtr> out;
  out.reserve(bucket.size());
  for (auto& [key, q] : bucket) out.push_back(q);
  return out;
}

HarmonyReport harmony_check(const ProcPtr& p, int depth) {
  HarmonyReport report;
  std::set<std::string> dist_tensor, dist_bang;
  for (auto& [kind, q] : pi_successors(p)) {
    if (kind == PiKind::Tensor)
      dist_tensor.insert(canonical_key(q));
    else
      dist_bang.insert(canonical_key(q));
  }
  auto both = classic_successors(p, depth);
  std::set<std::string> cls_tensor, cls_bang;
  for (const auto& [key, q] : both.first) cls_tensor.insert(key);
  for (const auto& [key, q] : both.second) cls_bang.insert(key);

  report.distance_tensor.assign(dist_tensor.begin(), dist_tensor.end());
  report.distance_bang.assign(dist_bang.begin(), dist_bang.end());
  report.classic_tensor.assign(cls_tensor.begin(), cls_tensor.end());
  report.classic_bang.assign(cls_bang.begin(), cls_bang.end());
  report.tensor_ok = dist_tensor == cls_tensor;
  report.bang_ok = dist_bang == cls_bang;
  return report;
}

}  // namespace lampi
