#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "unreal/qptl.hpp"

namespace unreal {

// Boolean formula AST over timed variable names ("x[1]@0").
struct BExpr;
using BPtr = std::shared_ptr<const BExpr>;

enum class BKind { True, False, Lit, Not, And, Or, Eq };

struct BExpr {
  BKind kind;
  std::string var;           // Lit
  bool neg = false;          // Lit
  std::vector<BPtr> kids;    // Not/And/Or (Not has one), Eq has two literals
};

BPtr b_true();
BPtr b_false();
BPtr b_lit(const std::string &v, bool neg = false);
BPtr b_not(BPtr a);
BPtr b_and(std::vector<BPtr> xs);
BPtr b_or(std::vector<BPtr> xs);
BPtr b_eq(BPtr a, BPtr b);  // a, b literals; folds otherwise

bool b_eval(const BPtr &e, const std::map<std::string, bool> &asg);
void b_vars(const BPtr &e, std::set<std::string> &out);

std::string timed_name(const std::string &var, int step);

struct QBlock {
  bool exists = true;
  std::vector<std::string> vars;  // timed names
};

// One step of the unrolled consistency condition:
// s1@step <-> s2@step, unless some scope pair differed at an earlier step.
struct ConsStep {
  std::string s1, s2;  // timed strategy variable names at `step`
  int step = 0;
  std::vector<std::pair<std::string, std::string>> diffs;  // timed, steps < step
};

struct ScenarioPart {
  std::string name;
  std::vector<std::array<std::string, 2>> eqs;  // timed equalities
  std::vector<BPtr> other;
  std::vector<BPtr> violations;

  BPtr formula() const;
};

struct PrenexQbf {
  std::vector<QBlock> blocks;
  std::vector<ConsStep> cons;
  std::vector<ScenarioPart> parts;
  int k = 0;

  BPtr cons_formula() const;
  BPtr matrix() const;  // cons -> (part_1 | ... | part_n)
};

BPtr unroll_ltl(const LtlPtr &f, int i, int k);

PrenexQbf unroll(const QptlQuery &q, int k);

PrenexQbf prune_unused(const PrenexQbf &f, const QptlQuery &q);

struct CnfQbf {
  struct Block {
    bool exists = true;
    std::vector<int> vars;
  };
  std::vector<Block> blocks;
  std::vector<std::vector<int>> clauses;
  int num_vars = 0;
  std::map<std::string, int> ids;     // timed name -> id (named vars only)
  std::vector<std::string> names;     // id-1 -> name; aux get "_aux<n>"
};

CnfQbf to_cnf(const PrenexQbf &f);

std::string write_qdimacs(const CnfQbf &f, bool name_comments = false);

CnfQbf parse_qdimacs(const std::string &text);

}  // namespace unreal
