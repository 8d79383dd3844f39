#pragma once

#include "lampi/process.hpp"
#include "lampi/term.hpp"

namespace lampi {

// Call-by-name translation, parametrized by a special channel name:
//   [x]a      = x<a>
//   [\x.t]a   = a(x,b). [t]b
//   [t s]a    = new b. new x. ([t]b | b<x,a> | !x(c). [s]c)    x fresh
//   [t[x/s]]a = new x. ([t]a | !x(b). [s]b)
// Deterministic given the supply state.
ProcPtr encode_cbn(const TermPtr& t, const Name& a, NameSupply& supply);

// Call-by-value translation, parametrized by a variable name x not free in t,
// with the auxiliary translation of values on a special name:
//   [v]x      = !x(a). [v]a
//   [y]a      = y<a>
//   [\y.s]a   = a(y,z). [s]z
//   [v s]x    = new b. new y. ([v]b | b<y,x> | [s]y)           y fresh
//   [s[y/u]]x = new y. ([s]x | [u]y)
ProcPtr encode_cbv(const VTerm& t, const Name& x, NameSupply& supply);
ProcPtr encode_cbv_value(const TermPtr& v, const Name& a, NameSupply& supply);

// fn([t]a) = fv(t) + {a} for CBN; both CBV equations likewise.
bool check_free_name_lemma_cbn(const TermPtr& t);
bool check_free_name_lemma_cbv(const VTerm& t);

}  // namespace lampi
