#pragma once

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace unreal {

// LTL in negation normal form: negation occurs only on atoms.
// Sugar (->, <->, =, W, G, F, X^n) is eliminated at construction time.
enum class LtlKind {
  True,
  False,
  Atom,
  NegAtom,
  And,
  Or,
  Next,
  Until,
  Release,
};

class Ltl;
using LtlPtr = std::shared_ptr<const Ltl>;

class Ltl {
public:
  LtlKind kind;
  std::string name;  // Atom / NegAtom
  LtlPtr lhs, rhs;   // binary ops; Next uses lhs only

  Ltl(LtlKind k, std::string n, LtlPtr l, LtlPtr r)
      : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
};

LtlPtr ltl_true();
LtlPtr ltl_false();
LtlPtr ltl_atom(const std::string &name);
LtlPtr ltl_natom(const std::string &name);
LtlPtr ltl_and(LtlPtr a, LtlPtr b);
LtlPtr ltl_or(LtlPtr a, LtlPtr b);
LtlPtr ltl_and(const std::vector<LtlPtr> &xs);
LtlPtr ltl_or(const std::vector<LtlPtr> &xs);
LtlPtr ltl_next(LtlPtr a);
LtlPtr ltl_next_n(LtlPtr a, int n);
LtlPtr ltl_until(LtlPtr a, LtlPtr b);
LtlPtr ltl_release(LtlPtr a, LtlPtr b);

// Derived operators, desugared on construction.
LtlPtr ltl_globally(LtlPtr a);
LtlPtr ltl_eventually(LtlPtr a);
LtlPtr ltl_weak_until(LtlPtr a, LtlPtr b);
LtlPtr ltl_implies(LtlPtr a, LtlPtr b);
LtlPtr ltl_iff(LtlPtr a, LtlPtr b);
// Per-step boolean equality of two formulas (same as iff).
LtlPtr ltl_eq(LtlPtr a, LtlPtr b);

// NNF negation. Involution: negate_nnf(negate_nnf(f)) is structurally equal to f.
LtlPtr negate_nnf(const LtlPtr &f);

bool ltl_equal(const LtlPtr &a, const LtlPtr &b);

// Substitute every atom name via fn (applied to Atom and NegAtom nodes).
LtlPtr ltl_rename(const LtlPtr &f, const std::function<std::string(const std::string &)> &fn);

void ltl_atoms(const LtlPtr &f, std::set<std::string> &out);

// Deepest Next nesting.
int ltl_x_depth(const LtlPtr &f);

enum class Fragment { Safety, CoSafety, Both, General };

Fragment classify_fragment(const LtlPtr &f);

const char *fragment_name(Fragment f);

// --- parsing / printing ------------------------------------------------

struct LtlParseError : std::runtime_error {
  int line, column;
  LtlParseError(const std::string &msg, int l, int c)
      : std::runtime_error(msg), line(l), column(c) {}
};

LtlPtr parse_ltl(const std::string &text);

std::string print_ltl(const LtlPtr &f);

// --- bounded evaluation ------------------------------------------------

// Finite trace: steps[i] is the set of atoms true at step i.
struct FiniteTrace {
  std::vector<std::set<std::string>> steps;
  size_t length() const { return steps.size(); }
  bool holds(const std::string &atom, size_t i) const {
    return steps[i].count(atom) > 0;
  }
};

// Truth value of the k-unrolling of f at step i under the trace.
// Next and Until default to false beyond the horizon, Release to true.
bool eval_bounded(const LtlPtr &f, const FiniteTrace &trace, int i, int k);

}  // namespace unreal
