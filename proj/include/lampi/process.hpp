#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "lampi/names.hpp"
#include "lampi/path.hpp"
#include "lampi/term.hpp"  // ParseError

namespace lampi {

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

// The asynchronous fragment: nil, unary output, binary output, restriction,
// binary input, replicated unary input, parallel. Nu, InB and RepIn bind
// their binder name(s) in the continuation; the grammar is untyped, names of
// either kind may appear anywhere.
struct Process {
  enum class Kind : uint8_t { Nil, OutU, OutB, Nu, InB, RepIn, Par };
  Kind kind;
  Name chan;  // OutU/OutB/InB/RepIn: channel; Nu: binder
  Name arg1;  // OutU: payload; OutB: first payload; InB: first binder; RepIn: binder
  Name arg2;  // OutB: second payload; InB: second binder
  ProcPtr a;  // Nu: body; InB/RepIn: continuation; Par: left
  ProcPtr b;  // Par: right
};

ProcPtr nil();
ProcPtr out_u(Name chan, Name payload);
ProcPtr out_b(Name chan, Name payload1, Name payload2);
ProcPtr nu(Name binder, ProcPtr body);
ProcPtr in_b(Name chan, Name binder1, Name binder2, ProcPtr cont);
ProcPtr rep_in(Name chan, Name binder, ProcPtr cont);
ProcPtr par(ProcPtr left, ProcPtr right);

int proc_size(const ProcPtr& p);
NameSet free_names(const ProcPtr& p);
NameSet all_proc_names(const ProcPtr& p);

bool alpha_eq_process(const ProcPtr& p, const ProcPtr& q);
// Key such that alpha_key_process(p) == alpha_key_process(q) iff alpha-equal.
std::string alpha_key_process(const ProcPtr& p);

// Simultaneous capture-avoiding renaming of free names.
ProcPtr subst_names(const ProcPtr& p, const std::map<Name, Name>& sigma);

ProcPtr proc_at(const ProcPtr& root, const ContextPath& path);
ProcPtr plug_proc(const ProcPtr& root, const ContextPath& path, const ProcPtr& replacement);
// Binders whose scope the path crosses.
NameSet captured_names(const ProcPtr& root, const ContextPath& path);

ProcPtr parse_process(std::string_view text);
std::string print_process(const ProcPtr& p);

}  // namespace lampi
