#include "lampi/generate.hpp"

#include <functional>
#include <map>
#include <random>
#include <tuple>

#include "lampi/congruence.hpp"

namespace lampi {

namespace {

// de-Bruijn-style generation state: binders named b1..bk by depth, free
// variables named u1..un by first occurrence. This yields exactly one
// representative per alpha-class (and per renaming of the free variables).
Name binder_name(int depth) { return var_name("b" + std::to_string(depth)); }
Name free_name(int slot) { return var_name("u" + std::to_string(slot)); }

struct Gen {
  TermMode mode;
  bool closed;

  // Results carry the number of free slots used so far (threaded left to
  // right so that free names are canonical by first occurrence).
  using Out = std::vector<std::pair<TermPtr, int>>;

  std::map<std::tuple<int, int, int, int>, Out> memo;  // (n, depth, used, values_only)

  const Out& gen(int n, int depth, int used, bool values_only) {
    auto key = std::make_tuple(n, depth, used, values_only ? 1 : 0);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Out out;
    if (n >= 1) {
      if (n == 1) {
        for (int d = 1; d <= depth; ++d) out.push_back({var(binder_name(d)), used});
        if (!closed) {
          for (int s = 1; s <= used; ++s) out.push_back({var(free_name(s)), used});
          out.push_back({var(free_name(used + 1)), used + 1});
        }
      } else {
        // Lam
        for (auto& [body, u] : gen(n - 1, depth + 1, used, false))
          out.push_back({lam(binder_name(depth + 1), body), u});
        if (!values_only) {
          for (int i = 1; i <= n - 2; ++i) {
            // App: in vker the function position is a value
            for (auto& [f, uf] : gen(i, depth, used, mode == TermMode::Vker))
              for (auto& [a, ua] : gen(n - 1 - i, depth, uf, false))
                out.push_back({app(f, a), ua});
            // Sub: body under the binder, argument outside it
            for (auto& [body, ub] : gen(i, depth + 1, used, false))
              for (auto& [arg, ua] : gen(n - 1 - i, depth, ub, false))
                out.push_back({sub(body, binder_name(depth + 1), arg), ua});
          }
        }
      }
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace

std::vector<TermPtr> enumerate_terms(int size, TermMode mode, bool closed) {
  Gen g{mode, closed, {}};
  std::vector<TermPtr> out;
  for (auto& [t, used] : g.gen(size, 0, 0, false)) out.push_back(t);
  return out;
}

std::vector<TermPtr> enumerate_terms_up_to(int max_size, TermMode mode, bool closed) {
  std::vector<TermPtr> out;
  for (int n = 1; n <= max_size; ++n)
    for (TermPtr& t : enumerate_terms(n, mode, closed)) out.push_back(std::move(t));
  return out;
}

namespace {

// Counts used to steer the random generator away from dead ends.
struct Counter {
  TermMode mode;
  bool closed;
  std::map<std::tuple<int, int, int>, double> memo;  // (n, depth, values_only)

  double count(int n, int depth, bool values_only) {
    if (n < 1) return 0;
    auto key = std::make_tuple(n, depth, values_only ? 1 : 0);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    double total = 0;
    if (n == 1) {
      total = depth + (closed ? 0 : 1);
    } else {
      total += count(n - 1, depth + 1, false);  // Lam
      if (!values_only) {
        for (int i = 1; i <= n - 2; ++i) {
          total += count(i, depth, mode == TermMode::Vker) * count(n - 1 - i, depth, false);
          total += count(i, depth + 1, false) * count(n - 1 - i, depth, false);
        }
      }
    }
    memo[key] = total;
    return total;
  }
};

TermPtr random_term_rec(Counter& counter, std::mt19937_64& rng, int n, int depth,
                        bool values_only) {
  auto pick = [&](double total) {
    std::uniform_real_distribution<double> dist(0.0, total);
    return dist(rng);
  };
  if (n == 1) {
    int choices = depth + (counter.closed ? 0 : 1);
    int c = static_cast<int>(rng() % choices);
    if (c < depth) return var(binder_name(c + 1));
    // naming free variables from a small pool keeps collisions likely
    return var(var_name(std::string(1, static_cast<char>('u' + rng() % 3)) +
                        std::to_string(1 + rng() % 2)));
  }
  double total = counter.count(n, depth, values_only);
  double r = pick(total);
  double lam_count = counter.count(n - 1, depth + 1, false);
  if (r < lam_count || values_only)
    return lam(binder_name(depth + 1), random_term_rec(counter, rng, n - 1, depth + 1, false));
  r -= lam_count;
  for (int i = 1; i <= n - 2; ++i) {
    double app_count = counter.count(i, depth, counter.mode == TermMode::Vker) *
                       counter.count(n - 1 - i, depth, false);
    if (r < app_count) {
      TermPtr f = random_term_rec(counter, rng, i, depth, counter.mode == TermMode::Vker);
      return app(f, random_term_rec(counter, rng, n - 1 - i, depth, false));
    }
    r -= app_count;
    double sub_count =
        counter.count(i, depth + 1, false) * counter.count(n - 1 - i, depth, false);
    if (r < sub_count) {
      TermPtr body = random_term_rec(counter, rng, i, depth + 1, false);
      return sub(body, binder_name(depth + 1), random_term_rec(counter, rng, n - 1 - i, depth, false));
    }
    r -= sub_count;
  }
  // numeric slack: fall back to a lambda
  return lam(binder_name(depth + 1), random_term_rec(counter, rng, n - 1, depth + 1, false));
}

}  // namespace

TermPtr random_term(int size, uint64_t seed, TermMode mode, bool closed) {
  Counter counter{mode, closed, {}};
  if (counter.count(size, 0, false) <= 0)
    throw std::invalid_argument("no term of the requested size exists");
  std::mt19937_64 rng(seed);
  return random_term_rec(counter, rng, size, 0, false);
}

ProcPtr random_process(int size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<Name> vars = {var_name("x"), var_name("y"), var_name("z"), var_name("w")};
  const std::vector<Name> specials = {special_name("a"), special_name("b"), special_name("c")};
  auto any_name = [&]() -> const Name& {
    if (rng() % 2) return vars[rng() % vars.size()];
    return specials[rng() % specials.size()];
  };

  std::function<ProcPtr(int)> go = [&](int budget) -> ProcPtr {
    if (budget <= 1) {
      switch (rng() % 4) {
        case 0: return nil();
        case 1: return out_b(specials[rng() % specials.size()], any_name(), any_name());
        default: return out_u(vars[rng() % vars.size()], any_name());
      }
    }
    switch (rng() % 8) {
      case 0: {  // restriction
        return nu(any_name(), go(budget - 1));
      }
      case 1:
      case 2: {  // binary input on a special channel
        if (budget < 2) return go(1);
        return in_b(specials[rng() % specials.size()], vars[rng() % vars.size()],
                    any_name(), go(budget - 1));
      }
      case 3: {  // replicated unary input on a variable channel
        if (budget < 2) return go(1);
        return rep_in(vars[rng() % vars.size()], any_name(), go(budget - 1));
      }
      default: {  // parallel
        if (budget < 3) return go(1);
        int left = 1 + static_cast<int>(rng() % static_cast<uint64_t>(budget - 2));
        return par(go(left), go(budget - 1 - left));
      }
    }
  };
  return go(size);
}

std::pair<ProcPtr, int> random_congruent_mutation(const ProcPtr& p, uint64_t seed,
                                                  int max_steps) {
  std::mt19937_64 rng(seed);
  int steps = max_steps > 0 ? static_cast<int>(rng() % (max_steps + 1)) : 0;
  ProcPtr cur = p;
  int applied = 0;
  for (int i = 0; i < steps; ++i) {
    std::vector<ProcPtr> options = congruence_rewrites(cur);
    if (options.empty()) break;
    cur = options[rng() % options.size()];
    applied++;
  }
  return {cur, applied};
}

}  // namespace lampi
