#include "unreal/spec.hpp"

#include <algorithm>
#include <queue>

namespace unreal {

std::set<std::string> Architecture::all_vars() const {
  std::set<std::string> vs;
  for (const auto &p : processes) {
    vs.insert(p.reads.begin(), p.reads.end());
    vs.insert(p.writes.begin(), p.writes.end());
  }
  return vs;
}

std::set<std::string> Architecture::env_inputs() const {
  std::set<std::string> linked;
  for (const auto &l : links) linked.insert(l.coord);
  std::set<std::string> env;
  for (const auto &p : processes)
    for (const auto &r : p.reads)
      if (!linked.count(r)) env.insert(r);
  return env;
}

const Process *Architecture::writer_of(const std::string &strat) const {
  for (const auto &p : processes)
    if (p.writes.count(strat)) return &p;
  return nullptr;
}

std::vector<std::string> validate_architecture(const Architecture &a) {
  std::vector<std::string> diags;
  std::map<std::string, int> writers;
  std::set<std::string> names;
  for (const auto &p : a.processes) {
    if (!names.insert(p.name).second)
      diags.push_back("duplicate process name: " + p.name);
    for (const auto &w : p.writes) {
      if (++writers[w] == 2) diags.push_back("overlapping outputs: " + w);
      if (p.reads.count(w))
        diags.push_back("process " + p.name + " reads its own output " + w);
    }
  }
  std::set<std::string> read;
  for (const auto &p : a.processes) read.insert(p.reads.begin(), p.reads.end());
  for (const auto &w : writers)
    if (w.first.size() && !read.count(w.first)) {
      // outputs may be unread when they appear only in the requirement
    }
  std::set<std::string> linked_coords;
  for (const auto &l : a.links) {
    if (!read.count(l.coord))
      diags.push_back("link target " + l.coord + " read by no process");
    if (!writers.count(l.strat))
      diags.push_back("link source " + l.strat + " written by no process");
    if (writers.count(l.coord))
      diags.push_back("link target " + l.coord + " is also a process output");
    if (!linked_coords.insert(l.coord).second)
      diags.push_back("variable " + l.coord + " linked twice");
  }
  return diags;
}

namespace {

// Directed communication graph: label(q,r) = input variables of r fed by q,
// where q is a process name or "env".
using EdgeMap = std::map<std::pair<std::string, std::string>, std::set<std::string>>;

EdgeMap comm_edges(const Architecture &a) {
  EdgeMap edges;
  std::map<std::string, std::string> coord_writer;  // coord var -> writer
  for (const auto &l : a.links)
    if (const Process *w = a.writer_of(l.strat)) coord_writer[l.coord] = w->name;
  for (const auto &p : a.processes)
    for (const auto &r : p.reads) {
      auto it = coord_writer.find(r);
      std::string src = it == coord_writer.end() ? "env" : it->second;
      edges[{src, p.name}].insert(r);
    }
  return edges;
}

bool incomparable(const std::set<std::string> &x, const std::set<std::string> &y) {
  return !std::includes(x.begin(), x.end(), y.begin(), y.end()) &&
         !std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<unsigned> masks_by_popcount(unsigned n) {
  std::vector<unsigned> ms;
  for (unsigned m = 0; m < (1u << n); m++) ms.push_back(m);
  std::stable_sort(ms.begin(), ms.end(), [](unsigned a, unsigned b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  return ms;
}

}  // namespace

std::optional<ForkWitness> detect_information_fork(const Architecture &a) {
  EdgeMap edges = comm_edges(a);
  std::vector<std::string> procs;
  for (const auto &p : a.processes) procs.push_back(p.name);
  std::vector<std::string> vars(a.all_vars().begin(), a.all_vars().end());

  std::map<std::string, std::set<std::string>> inputs;
  for (const auto &p : a.processes) inputs[p.name] = p.reads;

  auto var_masks = masks_by_popcount((unsigned)vars.size());
  auto proc_masks = masks_by_popcount((unsigned)procs.size());

  for (size_t pi = 0; pi < procs.size(); pi++)
    for (size_t pj = 0; pj < procs.size(); pj++) {
      if (pi == pj) continue;
      const std::string &p = procs[pi], &p2 = procs[pj];
      std::set<std::string> forbidden = inputs[p];
      forbidden.insert(inputs[p2].begin(), inputs[p2].end());
      for (unsigned vm : var_masks) {
        std::set<std::string> vprime;
        bool ok = true;
        for (size_t i = 0; i < vars.size() && ok; i++)
          if (vm & (1u << i)) {
            if (forbidden.count(vars[i])) ok = false;
            else vprime.insert(vars[i]);
          }
        if (!ok) continue;
        for (unsigned pm : proc_masks) {
          std::set<std::string> pprime = {"env"};
          bool skip = false;
          for (size_t i = 0; i < procs.size() && !skip; i++)
            if (pm & (1u << i)) {
              if (i == pi || i == pj) skip = true;
              else pprime.insert(procs[i]);
            }
          if (skip) continue;
          // subgraph over P' with edges carrying at least one V' variable
          // must be rooted in the environment
          std::set<std::string> reach = {"env"};
          bool grew = true;
          while (grew) {
            grew = false;
            for (const auto &e : edges) {
              if (!reach.count(e.first.first) || !pprime.count(e.first.second) ||
                  reach.count(e.first.second))
                continue;
              bool labeled = false;
              for (const auto &v : e.second)
                if (vprime.count(v)) labeled = true;
              if (labeled) {
                reach.insert(e.first.second);
                grew = true;
              }
            }
          }
          if (reach.size() != pprime.size()) continue;
          // incomparably labeled edges from P' to p and p'
          for (const auto &q : pprime)
            for (const auto &q2 : pprime) {
              auto e1 = edges.find({q, p});
              auto e2 = edges.find({q2, p2});
              if (e1 == edges.end() || e2 == edges.end()) continue;
              if (incomparable(e1->second, e2->second)) {
                ForkWitness w;
                w.procs = pprime;
                w.vars = vprime;
                w.p = p;
                w.p2 = p2;
                return w;
              }
            }
        }
      }
    }
  return std::nullopt;
}

std::vector<std::string> ClFormula::scope_of(const std::string &strat) const {
  for (const auto &g : prefix)
    for (const auto &s : g.strategies)
      if (s == strat) return g.scope;
  return {};
}

namespace {

std::vector<QuantifierGroup> make_prefix(const Architecture &a) {
  std::vector<QuantifierGroup> prefix;
  for (const auto &p : a.processes) {
    QuantifierGroup g;
    g.process = p.name;
    g.scope.assign(p.reads.begin(), p.reads.end());
    g.strategies.assign(p.writes.begin(), p.writes.end());
    prefix.push_back(std::move(g));
  }
  return prefix;
}

void check_bound(const Architecture &a, const LtlPtr &req,
                 const std::set<std::string> &extra) {
  std::set<std::string> atoms;
  ltl_atoms(req, atoms);
  auto vars = a.all_vars();
  for (const auto &at : atoms)
    if (!vars.count(at) && !extra.count(at))
      throw SpecError("requirement mentions undeclared variable: " + at);
}

}  // namespace

ClFormula encode_distributed(const Architecture &a, const LtlPtr &req) {
  check_bound(a, req, {});
  ClFormula phi;
  phi.prefix = make_prefix(a);
  for (const auto &p : a.processes) {
    phi.coord_vars.insert(p.reads.begin(), p.reads.end());
    phi.strategy_vars.insert(p.writes.begin(), p.writes.end());
  }
  Scenario sc;
  sc.name = "nominal";
  sc.links = a.links;
  sc.requirement = req;
  phi.scenarios.push_back(std::move(sc));
  std::set<std::string> linked;
  for (const auto &l : a.links) linked.insert(l.coord);
  for (const auto &c : phi.coord_vars)
    (linked.count(c) ? phi.internal_vars : phi.external_vars).insert(c);
  phi.partitioned = true;
  return phi;
}

ClFormula encode_fault_tolerant(const Architecture &a,
                                const std::vector<FaultScenario> &faults,
                                bool include_fault_free,
                                const LtlPtr &fault_free_req) {
  ClFormula phi;
  phi.prefix = make_prefix(a);
  for (const auto &p : a.processes) {
    phi.coord_vars.insert(p.reads.begin(), p.reads.end());
    phi.strategy_vars.insert(p.writes.begin(), p.writes.end());
  }

  std::set<std::string> fault_vars;
  for (const auto &f : faults) {
    if (f.type == FaultType::StuckAt || f.type == FaultType::FailStop) {
      if (f.duration != FaultDuration::Permanent)
        throw SpecError("fault " + f.name +
                        ": stuck-at and fail-stop faults are always permanent");
    }
    if (f.faulty.empty()) throw SpecError("fault " + f.name + ": no processes");
    for (const auto &pn : f.faulty) {
      bool found = false;
      for (const auto &p : a.processes) found |= p.name == pn;
      if (!found) throw SpecError("fault " + f.name + ": unknown process " + pn);
    }
    check_bound(a, f.requirement, {});

    Scenario sc;
    sc.name = f.name;
    sc.requirement = f.requirement;
    // Outputs of faulty processes
    std::set<std::string> faulty_out;
    for (const auto &p : a.processes)
      if (f.faulty.count(p.name)) faulty_out.insert(p.writes.begin(), p.writes.end());

    bool simplified = f.type == FaultType::Byzantine &&
                      f.duration == FaultDuration::Permanent && !f.observable;

    std::map<std::string, std::string> fvar;  // faulty process -> fault var
    if (!simplified)
      for (const auto &pn : f.faulty) {
        fvar[pn] = "fault_" + f.name + "_" + pn;
        fault_vars.insert(fvar[pn]);
        phi.coord_vars.insert(fvar[pn]);
      }

    for (const auto &l : a.links) {
      if (!faulty_out.count(l.strat)) {
        sc.links.push_back(l);
        continue;
      }
      if (simplified) continue;  // plain link removal
      const Process *w = a.writer_of(l.strat);
      LtlPtr fa = ltl_atom(fvar[w->name]);
      LtlPtr nf = ltl_natom(fvar[w->name]);
      LtlPtr i = ltl_atom(l.coord);
      LtlPtr o = ltl_atom(l.strat);
      LtlPtr eq = ltl_eq(i, o);
      LtlPtr shape;
      switch (f.type) {
        case FaultType::StuckAt:
          shape = ltl_weak_until(
              ltl_and(nf, eq),
              ltl_and(ltl_globally(fa), ltl_iff(i, ltl_next(ltl_globally(i)))));
          break;
        case FaultType::FailStop:
          shape = ltl_weak_until(ltl_and(nf, eq),
                                 ltl_globally(ltl_and(fa, negate_nnf(i))));
          break;
        case FaultType::Omission:
          shape = ltl_globally(
              ltl_or(ltl_and(fa, negate_nnf(i)), ltl_and(nf, eq)));
          break;
        case FaultType::Byzantine:
          shape = ltl_globally(ltl_or(fa, ltl_and(nf, eq)));
          break;
      }
      sc.constraints.push_back(shape);
      sc.fault_flows.push_back({l.coord, l.strat, fvar[w->name]});
    }

    if (!simplified)
      for (const auto &[pn, fv] : fvar) {
        LtlPtr fa = ltl_atom(fv);
        LtlPtr nf = ltl_natom(fv);
        switch (f.duration) {
          case FaultDuration::Permanent:
            sc.constraints.push_back(ltl_weak_until(nf, ltl_globally(fa)));
            break;
          case FaultDuration::Intermittent:
            if (f.max_fault_len > 0) {
              // G F_{<=n} !fault as a fixed-bound disjunction of X^t
              std::vector<LtlPtr> ds;
              for (int t = 0; t <= f.max_fault_len; t++)
                ds.push_back(ltl_next_n(nf, t));
              sc.constraints.push_back(ltl_globally(ltl_or(ds)));
            } else {
              sc.constraints.push_back(ltl_globally(ltl_eventually(nf)));
            }
            if (f.min_correct_len > 0) {
              // fault -> fault U (!fault U_{>m} fault):
              // correct stretches after a fault are longer than m
              std::vector<LtlPtr> hold;
              for (int j = 0; j <= f.min_correct_len; j++)
                hold.push_back(ltl_next_n(nf, j));
              LtlPtr inner = ltl_and(ltl_and(hold),
                                     ltl_next_n(ltl_until(nf, fa),
                                                f.min_correct_len + 1));
              sc.constraints.push_back(
                  ltl_globally(ltl_implies(fa, ltl_until(fa, inner))));
            }
            break;
          case FaultDuration::Transient: {
            // !fault W (fault U_{<=n} G !fault), bounded until expanded
            LtlPtr tail = ltl_globally(nf);
            LtlPtr bounded = tail;
            for (int t = 0; t < f.max_fault_len; t++)
              bounded = ltl_or(tail, ltl_and(fa, ltl_next(bounded)));
            sc.constraints.push_back(ltl_weak_until(nf, bounded));
            break;
          }
        }
      }

    if (f.observable && !simplified)
      for (auto &g : phi.prefix)
        for (const auto &[pn, fv] : fvar) g.scope.push_back(fv);

    phi.scenarios.push_back(std::move(sc));
  }

  if (include_fault_free) {
    check_bound(a, fault_free_req, {});
    Scenario sc;
    sc.name = "nominal";
    sc.links = a.links;
    sc.requirement = fault_free_req;
    phi.scenarios.push_back(std::move(sc));
  }

  if (phi.scenarios.empty()) throw SpecError("no scenarios");
  return phi;
}

ClFormula partition(const ClFormula &phi_in) {
  ClFormula phi = phi_in;
  phi.external_vars.clear();
  phi.internal_vars.clear();
  std::set<std::string> coords = phi.coord_vars;
  for (const auto &c : coords) {
    size_t defined = 0;  // scenarios where c is driven by a link or alias
    for (const auto &sc : phi.scenarios) {
      bool d = false;
      for (const auto &l : sc.links) d |= l.coord == c;
      for (const auto &al : sc.aliases) d |= al.first == c;
      if (d) defined++;
    }
    if (defined == phi.scenarios.size()) {
      phi.internal_vars.insert(c);
    } else if (defined == 0) {
      phi.external_vars.insert(c);
    } else {
      std::string star = c + "*";
      phi.coord_vars.insert(star);
      phi.external_vars.insert(star);
      phi.internal_vars.insert(c);
      for (auto &sc : phi.scenarios) {
        bool d = false;
        for (const auto &l : sc.links) d |= l.coord == c;
        for (const auto &al : sc.aliases) d |= al.first == c;
        if (!d) sc.aliases.push_back({c, star});
      }
    }
  }
  phi.partitioned = true;
  return phi;
}

std::set<std::string> deps(const ClFormula &phi, const std::string &v) {
  if (!phi.partitioned) throw SpecError("deps requires a partitioned formula");
  // reversed information-flow edges: to -> froms
  std::map<std::string, std::set<std::string>> rev;
  for (const auto &g : phi.prefix)
    for (const auto &s : g.strategies)
      for (const auto &c : g.scope) rev[s].insert(c);
  for (const auto &sc : phi.scenarios) {
    for (const auto &l : sc.links) rev[l.coord].insert(l.strat);
    for (const auto &al : sc.aliases) rev[al.first].insert(al.second);
    for (const auto &ff : sc.fault_flows) {
      rev[ff.coord].insert(ff.strat);
      rev[ff.coord].insert(ff.fault);
    }
  }
  std::set<std::string> seen = {v};
  std::queue<std::string> work;
  work.push(v);
  std::set<std::string> out;
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop();
    if (phi.external_vars.count(cur)) out.insert(cur);
    for (const auto &pre : rev[cur])
      if (seen.insert(pre).second) work.push(pre);
  }
  return out;
}

Architecture induced_architecture(const ClFormula &phi) {
  Architecture a;
  for (const auto &g : phi.prefix) {
    Process p;
    p.name = g.process;
    p.reads.insert(g.scope.begin(), g.scope.end());
    p.writes.insert(g.strategies.begin(), g.strategies.end());
    a.processes.push_back(std::move(p));
  }
  if (!phi.scenarios.empty()) a.links = phi.scenarios.front().links;
  return a;
}

}  // namespace unreal
