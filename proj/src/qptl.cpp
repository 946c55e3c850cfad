#include "unreal/qptl.hpp"

#include <algorithm>
#include <sstream>

namespace unreal {

BranchVector BranchVector::sub(const std::vector<std::string> &subset) const {
  BranchVector r;
  for (const auto &v : subset) {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw std::logic_error("subvector: missing " + v);
    r.vars.push_back(v);
    r.idx.push_back(idx[it - vars.begin()]);
  }
  return r;
}

std::vector<BranchVector> branches(const std::set<std::string> &vars,
                                   const BoundFunction &K) {
  std::vector<std::string> order(vars.begin(), vars.end());
  std::vector<int> limit;
  for (const auto &v : order) {
    auto it = K.find(v);
    int k = it == K.end() ? 0 : it->second;
    limit.push_back(1 << k);
  }
  std::vector<BranchVector> out;
  BranchVector cur;
  cur.vars = order;
  cur.idx.assign(order.size(), 1);
  while (true) {
    out.push_back(cur);
    size_t i = order.size();
    while (i > 0) {
      i--;
      if (cur.idx[i] < limit[i]) {
        cur.idx[i]++;
        std::fill(cur.idx.begin() + i + 1, cur.idx.end(), 1);
        break;
      }
      if (i == 0) return out;
    }
    if (order.empty()) return out;
  }
}

std::string path_var_name(const std::string &base, const BranchVector &pi) {
  std::string s = base + "[";
  for (size_t i = 0; i < pi.idx.size(); i++) {
    if (i) s += ",";
    s += std::to_string(pi.idx[i]);
  }
  return s + "]";
}

namespace {

struct Ctx {
  const ClFormula &phi;
  std::map<std::string, std::vector<std::string>> depcache;

  explicit Ctx(const ClFormula &p) : phi(p) {}

  const std::vector<std::string> &deps_of(const std::string &v) {
    auto it = depcache.find(v);
    if (it != depcache.end()) return it->second;
    auto d = deps(phi, v);
    return depcache.emplace(v, std::vector<std::string>(d.begin(), d.end()))
        .first->second;
  }

  std::string inst(const std::string &v, const BranchVector &pi) {
    return path_var_name(v, pi.sub(deps_of(v)));
  }

  LtlPtr inst_formula(const LtlPtr &f, const BranchVector &pi) {
    return ltl_rename(f, [&](const std::string &v) { return inst(v, pi); });
  }

  std::vector<std::string> sorted_strategies() const {
    std::vector<std::string> ss;
    for (const auto &g : phi.prefix)
      for (const auto &s : g.strategies) ss.push_back(s);
    return ss;
  }
};

std::vector<std::string> strategies_by_deps(Ctx &ctx) {
  auto ss = ctx.sorted_strategies();
  std::stable_sort(ss.begin(), ss.end(),
                   [&](const std::string &a, const std::string &b) {
                     return ctx.deps_of(a).size() < ctx.deps_of(b).size();
                   });
  return ss;
}

}  // namespace

std::vector<QptlBlock> header(const ClFormula &phi, const BoundFunction &K) {
  Ctx ctx(phi);
  std::vector<QptlBlock> blocks;
  std::set<std::string> introduced;

  auto push = [&](bool exists, std::vector<std::string> vars) {
    if (vars.empty()) return;
    blocks.push_back({exists, std::move(vars)});
  };

  for (const auto &s : strategies_by_deps(ctx)) {
    std::vector<std::string> paths;
    for (const auto &c : ctx.deps_of(s)) {
      if (!introduced.insert(c).second) continue;
      for (const auto &pi : branches({c}, K))
        paths.push_back(path_var_name(c, pi));
    }
    push(true, std::move(paths));
    std::vector<std::string> svars;
    std::set<std::string> ds(ctx.deps_of(s).begin(), ctx.deps_of(s).end());
    for (const auto &pi : branches(ds, K))
      svars.push_back(path_var_name(s, pi));
    push(false, std::move(svars));
  }

  // external variables in no strategy dependency set, then internal variables
  std::vector<std::string> tail;
  for (const auto &c : phi.external_vars)
    if (!introduced.count(c))
      for (const auto &pi : branches({c}, K))
        tail.push_back(path_var_name(c, pi));
  for (const auto &c : phi.internal_vars) {
    std::set<std::string> ds(ctx.deps_of(c).begin(), ctx.deps_of(c).end());
    for (const auto &pi : branches(ds, K))
      tail.push_back(path_var_name(c, pi));
  }
  push(true, std::move(tail));
  return blocks;
}

std::vector<ConsistencyPair> consistent(const ClFormula &phi,
                                        const BoundFunction &K) {
  Ctx ctx(phi);
  std::vector<ConsistencyPair> out;
  for (const auto &s : ctx.sorted_strategies()) {
    std::set<std::string> ds(ctx.deps_of(s).begin(), ctx.deps_of(s).end());
    auto bs = branches(ds, K);
    for (size_t i = 0; i < bs.size(); i++)
      for (size_t j = i + 1; j < bs.size(); j++) {
        ConsistencyPair cp;
        cp.s1 = path_var_name(s, bs[i]);
        cp.s2 = path_var_name(s, bs[j]);
        for (const auto &c : phi.scope_of(s)) {
          std::string a = ctx.inst(c, bs[i]);
          std::string b = ctx.inst(c, bs[j]);
          if (a != b) cp.scope_pairs.push_back({a, b});
        }
        out.push_back(std::move(cp));
      }
  }
  return out;
}

LtlPtr QptlQuery::consistency_formula() const {
  std::vector<LtlPtr> cs;
  for (const auto &cp : consistency) {
    LtlPtr eq = ltl_eq(ltl_atom(cp.s1), ltl_atom(cp.s2));
    std::vector<LtlPtr> diffs;
    for (const auto &[a, b] : cp.scope_pairs)
      diffs.push_back(negate_nnf(ltl_eq(ltl_atom(a), ltl_atom(b))));
    cs.push_back(ltl_release(ltl_or(diffs), eq));
  }
  return ltl_and(cs);
}

LtlPtr QptlQuery::matrix() const {
  std::vector<LtlPtr> parts;
  for (const auto &sc : scenarios) {
    std::vector<LtlPtr> conj;
    for (const auto &eq : sc.path_eqs)
      conj.push_back(ltl_globally(ltl_eq(ltl_atom(eq.a), ltl_atom(eq.b))));
    for (const auto &f : sc.path_other) conj.push_back(f);
    LtlPtr viol = ltl_or(sc.violations);
    parts.push_back(ltl_and(ltl_and(conj), viol));
  }
  return ltl_implies(consistency_formula(), ltl_or(parts));
}

QptlQuery unsat_fault(const ClFormula &phi,
                      const std::vector<BoundFunction> &Ks) {
  if (!phi.partitioned) throw SpecError("unsat_fault requires partitioned formula");
  if (Ks.size() != phi.scenarios.size())
    throw SpecError("bound function count does not match scenario count");

  BoundFunction K;
  for (const auto &c : phi.coord_vars) {
    int m = 0;
    for (const auto &Ki : Ks) {
      auto it = Ki.find(c);
      if (it != Ki.end()) m = std::max(m, it->second);
    }
    if (phi.internal_vars.count(c)) m = 0;
    K[c] = m;
  }

  Ctx ctx(phi);
  QptlQuery q;
  q.prefix = header(phi, K);
  q.consistency = consistent(phi, K);

  // path variable metadata
  for (const auto &b : q.prefix)
    for (const auto &name : b.vars) {
      auto lb = name.find('[');
      PathVarInfo info;
      info.name = name;
      info.base = name.substr(0, lb);
      info.branch.vars = ctx.deps_of(info.base);
      std::string ix = name.substr(lb + 1, name.size() - lb - 2);
      std::stringstream ss(ix);
      std::string tok;
      while (std::getline(ss, tok, ',')) info.branch.idx.push_back(std::stoi(tok));
      if (phi.strategy_vars.count(info.base))
        info.cls = PathVarClass::Strategy;
      else if (phi.internal_vars.count(info.base))
        info.cls = PathVarClass::Internal;
      else
        info.cls = PathVarClass::ExternalInput;
      q.vars[name] = std::move(info);
    }

  for (size_t i = 0; i < phi.scenarios.size(); i++) {
    const Scenario &sc = phi.scenarios[i];
    QptlScenario out;
    out.name = sc.name;
    std::set<EqConstraint> eqs;
    std::set<std::string> other_seen, viol_seen;
    LtlPtr nreq = negate_nnf(sc.requirement);
    for (const auto &pi : branches(phi.coord_vars, Ks[i])) {
      for (const auto &l : sc.links)
        eqs.insert({ctx.inst(l.coord, pi), ctx.inst(l.strat, pi)});
      for (const auto &al : sc.aliases)
        eqs.insert({ctx.inst(al.first, pi), ctx.inst(al.second, pi)});
      for (const auto &f : sc.constraints) {
        LtlPtr g = ctx.inst_formula(f, pi);
        if (other_seen.insert(print_ltl(g)).second) out.path_other.push_back(g);
      }
      LtlPtr v = ctx.inst_formula(nreq, pi);
      if (viol_seen.insert(print_ltl(v)).second) out.violations.push_back(v);
    }
    out.path_eqs.assign(eqs.begin(), eqs.end());
    q.scenarios.push_back(std::move(out));
  }
  return q;
}

QptlQuery unsat_dist(const ClFormula &phi, const BoundFunction &K) {
  if (phi.scenarios.size() != 1)
    throw SpecError("unsat_dist requires a single scenario");
  return unsat_fault(phi, {K});
}

std::string print_qptl(const QptlQuery &q) {
  std::ostringstream os;
  for (const auto &b : q.prefix) {
    os << (b.exists ? "exists " : "forall ");
    for (size_t i = 0; i < b.vars.size(); i++)
      os << (i ? ", " : "") << b.vars[i];
    os << " .\n";
  }
  os << print_ltl(q.matrix()) << "\n";
  return os.str();
}

}  // namespace unreal
