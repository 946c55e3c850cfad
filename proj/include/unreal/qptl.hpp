#pragma once

#include <map>
#include <string>
#include <vector>

#include "unreal/ltl.hpp"
#include "unreal/spec.hpp"

namespace unreal {

// A branch assigns one branch index (1..2^K(c)) to each variable of an
// ordered variable set. Ordering is lexicographic by variable name.
struct BranchVector {
  std::vector<std::string> vars;
  std::vector<int> idx;

  BranchVector sub(const std::vector<std::string> &subset) const;
  bool operator<(const BranchVector &o) const { return idx < o.idx; }
  bool operator==(const BranchVector &o) const {
    return vars == o.vars && idx == o.idx;
  }
};

using BoundFunction = std::map<std::string, int>;

std::vector<BranchVector> branches(const std::set<std::string> &vars,
                                   const BoundFunction &K);

enum class PathVarClass { ExternalInput, Strategy, Internal };

struct PathVarInfo {
  std::string name;  // mangled, e.g. "x[1,2]"
  std::string base;
  BranchVector branch;  // over deps(base)
  PathVarClass cls = PathVarClass::ExternalInput;
};

struct QptlBlock {
  bool exists = true;
  std::vector<std::string> vars;  // mangled path variable names
};

// Structured consistency conjunct for one strategy variable and one
// unordered pair of its branches.
struct ConsistencyPair {
  std::string s1, s2;  // path variable names of the strategy
  std::vector<std::pair<std::string, std::string>> scope_pairs;  // distinct only
};

// Per-step equality G(a = b) instantiated on one branch.
struct EqConstraint {
  std::string a, b;
  bool operator<(const EqConstraint &o) const {
    return std::tie(a, b) < std::tie(o.a, o.b);
  }
};

struct QptlScenario {
  std::string name;
  std::vector<EqConstraint> path_eqs;  // links and aliases, instantiated
  std::vector<LtlPtr> path_other;      // fault shape/duration constraints
  std::vector<LtlPtr> violations;      // negated requirement per branch
};

struct QptlQuery {
  std::vector<QptlBlock> prefix;
  std::map<std::string, PathVarInfo> vars;
  std::vector<ConsistencyPair> consistency;
  std::vector<QptlScenario> scenarios;

  LtlPtr consistency_formula() const;  // conjunction of Release conjuncts
  LtlPtr matrix() const;               // consistency -> scenario disjunction
};

std::string path_var_name(const std::string &base, const BranchVector &pi);

std::vector<QptlBlock> header(const ClFormula &phi, const BoundFunction &K);

std::vector<ConsistencyPair> consistent(const ClFormula &phi,
                                        const BoundFunction &K);

QptlQuery unsat_dist(const ClFormula &phi, const BoundFunction &K);

QptlQuery unsat_fault(const ClFormula &phi,
                      const std::vector<BoundFunction> &Ks);

std::string print_qptl(const QptlQuery &q);

}  // namespace unreal
