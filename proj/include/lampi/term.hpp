#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lampi/names.hpp"
#include "lampi/path.hpp"

namespace lampi {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Syntax tree shared by the linear substitution calculus and the value
// substitution kernel. Sub(body, x, arg) is the explicit substitution
// body[x/arg]; Lam and Sub bind their name in the first child only.
struct Term {
  enum class Kind : uint8_t { Var, Lam, App, Sub };
  Kind kind;
  Name name;  // Var: the variable; Lam/Sub: the binder
  TermPtr a;  // Lam: body; App: fun; Sub: body
  TermPtr b;  // App: arg; Sub: arg
};

TermPtr var(Name x);
TermPtr var(const std::string& x);
TermPtr lam(Name binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr sub(TermPtr body, Name binder, TermPtr arg);

int term_size(const TermPtr& t);
NameSet free_vars(const TermPtr& t);
// Free and bound names together; the usual avoid-set for freshness.
NameSet all_term_names(const TermPtr& t);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
// Canonical renaming of all binders (deterministic per alpha-class).
TermPtr alpha_canon(const TermPtr& t);
// Printable key such that alpha_key(a) == alpha_key(b) iff alpha_eq(a, b).
std::string alpha_key(const TermPtr& t);

// Capture-avoiding substitution of s for free occurrences of x in t.
TermPtr meta_subst(const TermPtr& t, const Name& x, const TermPtr& s);
// Capture-avoiding renaming of a free variable (a special case used all over).
TermPtr rename_free_var(const TermPtr& t, const Name& from, const Name& to);
// Fresh names for every bound variable; free occurrences untouched.
TermPtr refresh_bound(const TermPtr& t, NameSupply& supply, const NameSet& avoid);

// Subterm access along a ContextPath.
TermPtr term_at(const TermPtr& root, const ContextPath& path);
TermPtr plug_term(const TermPtr& root, const ContextPath& path, const TermPtr& replacement);
NameSet captured_vars(const TermPtr& root, const ContextPath& path);

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& what, size_t pos_) : std::runtime_error(what), pos(pos_) {}
};

// Applications whose function position is not a value break the kernel shape.
struct VkerShapeError : ParseError {
  using ParseError::ParseError;
};

bool is_value(const TermPtr& t);   // Var or Lam
bool is_vker(const TermPtr& t);    // every App has a value in function position
bool is_pure(const TermPtr& t);    // no Sub node anywhere

// A term of the value substitution kernel, validated at construction.
class VTerm {
 public:
  explicit VTerm(TermPtr t);
  const TermPtr& raw() const { return t_; }

 private:
  TermPtr t_;
};

// A term with no explicit substitutions.
class PureTerm {
 public:
  explicit PureTerm(TermPtr t);
  const TermPtr& raw() const { return t_; }

 private:
  TermPtr t_;
};

// Unfolding of explicit substitutions into ordinary meta-substitution.
PureTerm unfold(const TermPtr& t);

TermPtr parse_term(std::string_view text);
VTerm parse_vterm(std::string_view text);
std::string print_term(const TermPtr& t);

}  // namespace lampi
