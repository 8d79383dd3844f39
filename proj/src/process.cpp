#include "lampi/process.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace lampi {

namespace {

ProcPtr make(Process::Kind k, Name chan, Name a1, Name a2, ProcPtr a, ProcPtr b) {
  return std::make_shared<const Process>(
      Process{k, std::move(chan), std::move(a1), std::move(a2), std::move(a), std::move(b)});
}

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

ProcPtr nil() { return make(Process::Kind::Nil, Name{}, Name{}, Name{}, nullptr, nullptr); }
ProcPtr out_u(Name chan, Name payload) {
  return make(Process::Kind::OutU, std::move(chan), std::move(payload), Name{}, nullptr, nullptr);
}
ProcPtr out_b(Name chan, Name payload1, Name payload2) {
  return make(Process::Kind::OutB, std::move(chan), std::move(payload1), std::move(payload2),
              nullptr, nullptr);
}
ProcPtr nu(Name binder, ProcPtr body) {
  return make(Process::Kind::Nu, std::move(binder), Name{}, Name{}, std::move(body), nullptr);
}
ProcPtr in_b(Name chan, Name binder1, Name binder2, ProcPtr cont) {
  return make(Process::Kind::InB, std::move(chan), std::move(binder1), std::move(binder2),
              std::move(cont), nullptr);
}
ProcPtr rep_in(Name chan, Name binder, ProcPtr cont) {
  return make(Process::Kind::RepIn, std::move(chan), std::move(binder), Name{}, std::move(cont),
              nullptr);
}
ProcPtr par(ProcPtr left, ProcPtr right) {
  return make(Process::Kind::Par, Name{}, Name{}, Name{}, std::move(left), std::move(right));
}

int proc_size(const ProcPtr& p) {
  switch (p->kind) {
    case Process::Kind::Nil:
    case Process::Kind::OutU:
    case Process::Kind::OutB: return 1;
    case Process::Kind::Nu:
    case Process::Kind::InB:
    case Process::Kind::RepIn: return 1 + proc_size(p->a);
    case Process::Kind::Par: return 1 + proc_size(p->a) + proc_size(p->b);
  }
  return 0;
}

namespace {

void free_names_into(const ProcPtr& p, NameSet& bound, NameSet& out) {
  auto add = [&](const Name& n) {
    if (!bound.count(n)) out.insert(n);
  };
  switch (p->kind) {
    case Process::Kind::Nil: return;
    case Process::Kind::OutU:
      add(p->chan);
      add(p->arg1);
      return;
    case Process::Kind::OutB:
      add(p->chan);
      add(p->arg1);
      add(p->arg2);
      return;
    case Process::Kind::Nu: {
      bool fresh = bound.insert(p->chan).second;
      free_names_into(p->a, bound, out);
      if (fresh) bound.erase(p->chan);
      return;
    }
    case Process::Kind::InB: {
      add(p->chan);
      bool f1 = bound.insert(p->arg1).second;
      bool f2 = bound.insert(p->arg2).second;
      free_names_into(p->a, bound, out);
      if (f2) bound.erase(p->arg2);
      if (f1) bound.erase(p->arg1);
      return;
    }
    case Process::Kind::RepIn: {
      add(p->chan);
      bool f = bound.insert(p->arg1).second;
      free_names_into(p->a, bound, out);
      if (f) bound.erase(p->arg1);
      return;
    }
    case Process::Kind::Par:
      free_names_into(p->a, bound, out);
      free_names_into(p->b, bound, out);
      return;
  }
}

void all_names_into(const ProcPtr& p, NameSet& out) {
  switch (p->kind) {
    case Process::Kind::Nil: return;
    case Process::Kind::OutU:
      out.insert(p->chan);
      out.insert(p->arg1);
      return;
    case Process::Kind::OutB:
      out.insert(p->chan);
      out.insert(p->arg1);
      out.insert(p->arg2);
      return;
    case Process::Kind::Nu:
      out.insert(p->chan);
      all_names_into(p->a, out);
      return;
    case Process::Kind::InB:
      out.insert(p->chan);
      out.insert(p->arg1);
      out.insert(p->arg2);
      all_names_into(p->a, out);
      return;
    case Process::Kind::RepIn:
      out.insert(p->chan);
      out.insert(p->arg1);
      all_names_into(p->a, out);
      return;
    case Process::Kind::Par:
      all_names_into(p->a, out);
      all_names_into(p->b, out);
      return;
  }
}

}  // namespace

NameSet free_names(const ProcPtr& p) {
  NameSet bound, out;
  free_names_into(p, bound, out);
  return out;
}

NameSet all_proc_names(const ProcPtr& p) {
  NameSet out;
  all_names_into(p, out);
  return out;
}

// --- alpha machinery ---------------------------------------------------------

namespace {

using IEnv = std::map<Name, int>;

bool alpha_eq_rec(const ProcPtr& p, const ProcPtr& q, IEnv& ep, IEnv& eq, int& depth) {
  if (p->kind != q->kind) return false;
  auto names_match = [&](const Name& a, const Name& b) {
    auto ia = ep.find(a), ib = eq.find(b);
    if (ia != ep.end() || ib != eq.end())
      return ia != ep.end() && ib != eq.end() && ia->second == ib->second;
    return a == b;
  };
  switch (p->kind) {
    case Process::Kind::Nil: return true;
    case Process::Kind::OutU:
      return names_match(p->chan, q->chan) && names_match(p->arg1, q->arg1);
    case Process::Kind::OutB:
      return names_match(p->chan, q->chan) && names_match(p->arg1, q->arg1) &&
             names_match(p->arg2, q->arg2);
    case Process::Kind::Nu: {
      if (p->chan.kind != q->chan.kind) return false;
      int d = depth++;
      Bind<int> bp(ep, p->chan, d), bq(eq, q->chan, d);
      return alpha_eq_rec(p->a, q->a, ep, eq, depth);
    }
    case Process::Kind::InB: {
      if (!names_match(p->chan, q->chan)) return false;
      if (p->arg1.kind != q->arg1.kind || p->arg2.kind != q->arg2.kind) return false;
      int d1 = depth++, d2 = depth++;
      Bind<int> b1p(ep, p->arg1, d1), b1q(eq, q->arg1, d1);
      Bind<int> b2p(ep, p->arg2, d2), b2q(eq, q->arg2, d2);
      return alpha_eq_rec(p->a, q->a, ep, eq, depth);
    }
    case Process::Kind::RepIn: {
      if (!names_match(p->chan, q->chan)) return false;
      if (p->arg1.kind != q->arg1.kind) return false;
      int d = depth++;
      Bind<int> bp(ep, p->arg1, d), bq(eq, q->arg1, d);
      return alpha_eq_rec(p->a, q->a, ep, eq, depth);
    }
    case Process::Kind::Par:
      return alpha_eq_rec(p->a, q->a, ep, eq, depth) &&
             alpha_eq_rec(p->b, q->b, ep, eq, depth);
  }
  return false;
}

void key_name(const Name& n, const IEnv& env, std::string& out) {
  auto it = env.find(n);
  if (it != env.end()) {
    out += '#';
    out += std::to_string(it->second);
  } else {
    out += n.kind == NameKind::Special ? 's' : 'v';
    out += ':';
    out += n.id;
  }
}

void alpha_key_rec(const ProcPtr& p, IEnv& env, int& depth, std::string& out) {
  switch (p->kind) {
    case Process::Kind::Nil:
      out += '0';
      return;
    case Process::Kind::OutU:
      out += "o(";
      key_name(p->chan, env, out);
      out += ',';
      key_name(p->arg1, env, out);
      out += ')';
      return;
    case Process::Kind::OutB:
      out += "O(";
      key_name(p->chan, env, out);
      out += ',';
      key_name(p->arg1, env, out);
      out += ',';
      key_name(p->arg2, env, out);
      out += ')';
      return;
    case Process::Kind::Nu: {
      int d = depth++;
      out += p->chan.kind == NameKind::Special ? "ns" : "nv";
      out += std::to_string(d);
      out += '.';
      Bind<int> bind(env, p->chan, d);
      alpha_key_rec(p->a, env, depth, out);
      return;
    }
    case Process::Kind::InB: {
      out += "I(";
      key_name(p->chan, env, out);
      int d1 = depth++, d2 = depth++;
      out += ',';
      out += p->arg1.kind == NameKind::Special ? 's' : 'v';
      out += std::to_string(d1);
      out += ',';
      out += p->arg2.kind == NameKind::Special ? 's' : 'v';
      out += std::to_string(d2);
      out += ").";
      Bind<int> b1(env, p->arg1, d1);
      Bind<int> b2(env, p->arg2, d2);
      alpha_key_rec(p->a, env, depth, out);
      return;
    }
    case Process::Kind::RepIn: {
      out += "R(";
      key_name(p->chan, env, out);
      int d = depth++;
      out += ',';
      out += p->arg1.kind == NameKind::Special ? 's' : 'v';
      out += std::to_string(d);
      out += ").";
      Bind<int> bind(env, p->arg1, d);
      alpha_key_rec(p->a, env, depth, out);
      return;
    }
    case Process::Kind::Par:
      out += '(';
      alpha_key_rec(p->a, env, depth, out);
      out += '|';
      alpha_key_rec(p->b, env, depth, out);
      out += ')';
      return;
  }
}

}  // namespace

bool alpha_eq_process(const ProcPtr& p, const ProcPtr& q) {
  IEnv ep, eq;
  int depth = 0;
  return alpha_eq_rec(p, q, ep, eq, depth);
}

std::string alpha_key_process(const ProcPtr& p) {
  IEnv env;
  int depth = 0;
  std::string out;
  out.reserve(64);
  alpha_key_rec(p, env, depth, out);
  return out;
}

// --- substitution -----------------------------------------------------------

namespace {

// Deterministic fresh name of the given kind not in avoid.
Name det_fresh(NameKind kind, const NameSet& avoid) {
  for (uint64_t k = 1;; ++k) {
    Name candidate{kind, (kind == NameKind::Special ? "f" : "f") + std::to_string(k)};
    if (!avoid.count(candidate)) return candidate;
  }
}

ProcPtr subst_rec(const ProcPtr& p, const std::map<Name, Name>& sigma, NameSet& range) {
  if (sigma.empty()) return p;
  auto apply = [&](const Name& n) {
    auto it = sigma.find(n);
    return it == sigma.end() ? n : it->second;
  };
  switch (p->kind) {
    case Process::Kind::Nil: return p;
    case Process::Kind::OutU: return out_u(apply(p->chan), apply(p->arg1));
    case Process::Kind::OutB:
      return out_b(apply(p->chan), apply(p->arg1), apply(p->arg2));
    case Process::Kind::Par:
      return par(subst_rec(p->a, sigma, range), subst_rec(p->b, sigma, range));
    case Process::Kind::Nu:
    case Process::Kind::InB:
    case Process::Kind::RepIn: {
      // Gather binders of this node.
      std::vector<Name> binders;
      if (p->kind == Process::Kind::Nu)
        binders = {p->chan};
      else if (p->kind == Process::Kind::RepIn)
        binders = {p->arg1};
      else
        binders = {p->arg1, p->arg2};

      // Drop mappings shadowed by the binders.
      std::map<Name, Name> inner = sigma;
      for (const Name& b : binders) inner.erase(b);

      // Rename binders that would capture names in the substitution range.
      std::map<Name, Name> renames;
      ProcPtr body = p->a;
      NameSet avoid = range;
      all_names_into(body, avoid);
      for (const auto& [from, to] : inner) avoid.insert(from);
      for (Name& b : binders) {
        bool relevant = false;
        for (const auto& [from, to] : inner)
          if (to == b) relevant = true;
        if (relevant) {
          Name fresh = det_fresh(b.kind, avoid);
          avoid.insert(fresh);
          renames[b] = fresh;
          b = fresh;
        }
      }
      if (!renames.empty()) {
        NameSet rrange;
        for (auto& [from, to] : renames) rrange.insert(to);
        body = subst_rec(body, renames, rrange);
        // Re-apply shadowing against the renamed binders.
        inner = sigma;
        for (const Name& b : binders) inner.erase(b);
      }
      ProcPtr nbody = subst_rec(body, inner, range);
      if (p->kind == Process::Kind::Nu) return nu(binders[0], nbody);
      if (p->kind == Process::Kind::RepIn) return rep_in(apply(p->chan), binders[0], nbody);
      return in_b(apply(p->chan), binders[0], binders[1], nbody);
    }
  }
  return p;
}

}  // namespace

ProcPtr subst_names(const ProcPtr& p, const std::map<Name, Name>& sigma) {
  NameSet range;
  for (const auto& [from, to] : sigma) range.insert(to);
  return subst_rec(p, sigma, range);
}

// --- paths -------------------------------------------------------------------

ProcPtr proc_at(const ProcPtr& root, const ContextPath& path) {
  ProcPtr cur = root;
  for (Step s : path.steps) {
    switch (s) {
      case Step::ParLeft:
      case Step::NuBody:
      case Step::InBCont:
      case Step::RepInCont: cur = cur->a; break;
      case Step::ParRight: cur = cur->b; break;
      default: throw std::logic_error("term step in process path");
    }
    if (!cur) throw std::logic_error("path does not exist in process");
  }
  return cur;
}

ProcPtr plug_proc(const ProcPtr& root, const ContextPath& path, const ProcPtr& replacement) {
  std::function<ProcPtr(const ProcPtr&, size_t)> go = [&](const ProcPtr& p, size_t i) -> ProcPtr {
    if (i == path.steps.size()) return replacement;
    switch (path.steps[i]) {
      case Step::ParLeft: return par(go(p->a, i + 1), p->b);
      case Step::ParRight: return par(p->a, go(p->b, i + 1));
      case Step::NuBody: return nu(p->chan, go(p->a, i + 1));
      case Step::InBCont: return in_b(p->chan, p->arg1, p->arg2, go(p->a, i + 1));
      case Step::RepInCont: return rep_in(p->chan, p->arg1, go(p->a, i + 1));
      default: throw std::logic_error("term step in process path");
    }
  };
  return go(root, 0);
}

NameSet captured_names(const ProcPtr& root, const ContextPath& path) {
  NameSet out;
  ProcPtr cur = root;
  for (Step s : path.steps) {
    switch (s) {
      case Step::NuBody: out.insert(cur->chan); break;
      case Step::InBCont:
        out.insert(cur->arg1);
        out.insert(cur->arg2);
        break;
      case Step::RepInCont: out.insert(cur->arg1); break;
      default: break;
    }
    cur = (s == Step::ParRight) ? cur->b : cur->a;
  }
  return out;
}

// --- concrete syntax ----------------------------------------------------------
//
//   proc    := par
//   par     := factor { "|" factor }
//   factor  := "0" | restrict | output | input | "(" proc ")"
//   restrict:= "new" NAME "." factor
//   output  := NAME "<" NAME [ "," NAME ] ">"
//   input   := [ "!" ] NAME "(" NAME [ "," NAME ] ")" "." factor
//   NAME    := VAR | "@" [a-z][a-zA-Z0-9_]*

namespace {

struct ProcParser {
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

  Name name() {
    skip_ws();
    if (eat('@')) return special_name(ident());
    return var_name(ident());
  }

  ProcPtr proc() {
    ProcPtr p = factor();
    while (eat('|')) p = par(p, factor());
    return p;
  }

  ProcPtr factor() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    if (eat('0')) return nil();
    if (eat('(')) {
      ProcPtr p = proc();
      expect(')');
      return p;
    }
    if (eat('!')) return input(true);
    // "new" is a keyword; anything else starts a name.
    size_t save = pos;
    if (std::islower(static_cast<unsigned char>(text[pos]))) {
      std::string word = ident();
      if (word == "new") {
        Name binder = name();
        expect('.');
        return nu(binder, factor());
      }
      pos = save;
    }
    return output_or_input();
  }

  ProcPtr input(bool replicated) {
    Name chan = name();
    expect('(');
    Name b1 = name();
    if (replicated) {
      if (eat(','))
        throw ParseError("replicated inputs are unary in this fragment", pos);
      expect(')');
      expect('.');
      return rep_in(chan, b1, factor());
    }
    expect(',');
    Name b2 = name();
    expect(')');
    expect('.');
    return in_b(chan, b1, b2, factor());
  }

  ProcPtr output_or_input() {
    Name chan = name();
    skip_ws();
    if (eat('<')) {
      Name p1 = name();
      if (eat(',')) {
        Name p2 = name();
        expect('>');
        return out_b(chan, p1, p2);
      }
      expect('>');
      return out_u(chan, p1);
    }
    if (eat('(')) {
      Name b1 = name();
      if (!eat(','))
        throw ParseError("non-replicated inputs are binary in this fragment", pos);
      Name b2 = name();
      expect(')');
      expect('.');
      return in_b(chan, b1, b2, factor());
    }
    throw ParseError("expected output or input after name", pos);
  }
};

bool is_factor(const ProcPtr& p) { return p->kind != Process::Kind::Par; }

void print_rec(const ProcPtr& p, std::ostringstream& out, bool need_factor) {
  switch (p->kind) {
    case Process::Kind::Nil:
      out << "0";
      return;
    case Process::Kind::OutU:
      out << show_name(p->chan) << "<" << show_name(p->arg1) << ">";
      return;
    case Process::Kind::OutB:
      out << show_name(p->chan) << "<" << show_name(p->arg1) << "," << show_name(p->arg2) << ">";
      return;
    case Process::Kind::Nu:
      out << "new " << show_name(p->chan) << ". ";
      print_rec(p->a, out, true);
      return;
    case Process::Kind::InB:
      out << show_name(p->chan) << "(" << show_name(p->arg1) << "," << show_name(p->arg2)
          << "). ";
      print_rec(p->a, out, true);
      return;
    case Process::Kind::RepIn:
      out << "!" << show_name(p->chan) << "(" << show_name(p->arg1) << "). ";
      print_rec(p->a, out, true);
      return;
    case Process::Kind::Par:
      if (need_factor) {
        out << "(";
        print_rec(p, out, false);
        out << ")";
      } else {
        // left-associated chains print flat
        print_rec(p->a, out, !is_factor(p->a) && false);
        out << " | ";
        print_rec(p->b, out, true);
      }
      return;
  }
}

}  // namespace

ProcPtr parse_process(std::string_view text) {
  ProcParser p{text};
  ProcPtr result = p.proc();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return result;
}

std::string print_process(const ProcPtr& p) {
  std::ostringstream out;
  print_rec(p, out, false);
  return out.str();
}

}  // namespace lampi
