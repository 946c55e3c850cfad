#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unreal/ltl.hpp"

namespace unreal {

struct Process {
  std::string name;
  std::set<std::string> reads;
  std::set<std::string> writes;
};

// A communication link: the reader sees coordination variable `coord`,
// which in fault-free operation equals the writer's strategy variable `strat`.
struct Link {
  std::string coord;
  std::string strat;
  bool operator==(const Link &o) const {
    return coord == o.coord && strat == o.strat;
  }
};

struct Architecture {
  std::vector<Process> processes;
  std::vector<Link> links;

  std::set<std::string> all_vars() const;
  std::set<std::string> env_inputs() const;  // read but fed by no link
  const Process *writer_of(const std::string &strat) const;
};

std::vector<std::string> validate_architecture(const Architecture &a);

struct ForkWitness {
  std::set<std::string> procs;  // P', may contain "env"
  std::set<std::string> vars;   // V'
  std::string p, p2;
};

std::optional<ForkWitness> detect_information_fork(const Architecture &a);

enum class FaultType { StuckAt, FailStop, Omission, Byzantine };
enum class FaultDuration { Permanent, Intermittent, Transient };

struct FaultScenario {
  std::string name;
  std::set<std::string> faulty;  // process names
  FaultType type = FaultType::Byzantine;
  FaultDuration duration = FaultDuration::Permanent;
  bool observable = false;
  LtlPtr requirement;     // holds in this scenario
  int max_fault_len = 0;  // n, transient / bounded intermittent
  int min_correct_len = 0;  // m, intermittent lower bound
};

struct QuantifierGroup {
  std::string process;
  std::vector<std::string> scope;       // coordination variables
  std::vector<std::string> strategies;  // strategy variables
};

// One fault configuration: which links stay intact, which coordination
// variables are instead driven externally, and what must hold.
struct Scenario {
  std::string name;
  std::vector<Link> links;  // kept G(coord = strat)
  std::vector<std::pair<std::string, std::string>> aliases;  // G(c = c_ext)
  // Constraint formulas over {fault var, coord, strat} shaping faulty links,
  // plus fault duration requirements. Conjoined into the path specification.
  std::vector<LtlPtr> constraints;
  // Information-flow records for faulty links: strat and fault feed coord.
  struct FaultFlow {
    std::string coord, strat, fault;
  };
  std::vector<FaultFlow> fault_flows;
  LtlPtr requirement;
};

struct ClFormula {
  std::vector<QuantifierGroup> prefix;
  std::vector<Scenario> scenarios;
  std::set<std::string> coord_vars;
  std::set<std::string> strategy_vars;
  std::set<std::string> external_vars;
  std::set<std::string> internal_vars;
  bool partitioned = false;

  std::vector<std::string> scope_of(const std::string &strat) const;
};

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ClFormula encode_distributed(const Architecture &a, const LtlPtr &req);

ClFormula encode_fault_tolerant(const Architecture &a,
                                const std::vector<FaultScenario> &faults,
                                bool include_fault_free,
                                const LtlPtr &fault_free_req);

ClFormula partition(const ClFormula &phi);

std::set<std::string> deps(const ClFormula &phi, const std::string &v);

Architecture induced_architecture(const ClFormula &phi);

}  // namespace unreal
