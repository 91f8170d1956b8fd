#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atrlab/coding.hpp"
#include "atrlab/config.hpp"
#include "atrlab/hierarchy.hpp"
#include "atrlab/koenig.hpp"
#include "atrlab/machine.hpp"
#include "atrlab/orders.hpp"

namespace atrlab {

class MissingOracle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CompositionDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Surjective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class I, class S>
struct Problem {
  using Instance = I;
  using Solution = S;
  using Visitor = std::function<bool(const S&)>;  // return false to stop

  std::string name;
  std::function<bool(const I&)> instance_check;
  std::function<bool(const I&, const S&)> solution_check;
  std::function<S(const I&)> solve;
  // Every solution of a small instance.
  std::function<void(const I&, const Visitor&)> enumerate_solutions;

  std::vector<S> all_solutions(const I& x) const {
    if (!enumerate_solutions) throw MissingOracle(name + " has no solution enumerator");
    std::vector<S> out;
    enumerate_solutions(x, [&](const S& s) {
      out.push_back(s);
      return true;
    });
    return out;
  }
};

template <class I, class S, class J, class T>
struct Reduction {
  std::string name;
  std::function<J(const I&)> forward;
  std::function<S(const I&, const T&)> backward;
};

enum class VerifyMode { AllSolutions, Oracle };

struct VerifyFailure {
  std::size_t instance = 0;
  std::string reason;
};

struct VerifyReport {
  std::size_t instances = 0;
  std::size_t solutions_checked = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }
};

template <class I, class S, class J, class T>
VerifyReport verify_reduction(const Reduction<I, S, J, T>& red, const Problem<I, S>& P, const Problem<J, T>& Q,
                              const std::vector<I>& instances, VerifyMode mode) {
  if (mode == VerifyMode::AllSolutions && !Q.enumerate_solutions)
    throw MissingOracle(Q.name + " has no solution enumerator");
  if (mode == VerifyMode::Oracle && !Q.solve) throw MissingOracle(Q.name + " has no solver");
  VerifyReport report;
  report.instances = instances.size();
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const I& x = instances[k];
    auto fail = [&](std::string reason) { report.failures.push_back({k, std::move(reason)}); };
    try {
      J y = red.forward(x);
      if (!Q.instance_check(y)) {
        fail("forward image is not a " + Q.name + " instance");
        continue;
      }
      auto check = [&](const T& q) {
        ++report.solutions_checked;
        if (!P.solution_check(x, red.backward(x, q))) {
          fail("backward output is not a " + P.name + " solution");
          return false;
        }
        return true;
      };
      if (mode == VerifyMode::Oracle)
        check(Q.solve(y));
      else
        Q.enumerate_solutions(y, check);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return report;
}

template <class I1, class S1, class I2, class S2>
Problem<std::pair<I1, I2>, std::pair<S1, S2>> parallel(const Problem<I1, S1>& P, const Problem<I2, S2>& Q) {
  using I = std::pair<I1, I2>;
  using S = std::pair<S1, S2>;
  Problem<I, S> out;
  out.name = P.name + "×" + Q.name;
  out.instance_check = [P, Q](const I& x) { return P.instance_check(x.first) && Q.instance_check(x.second); };
  out.solution_check = [P, Q](const I& x, const S& s) {
    return P.solution_check(x.first, s.first) && Q.solution_check(x.second, s.second);
  };
  if (P.solve && Q.solve) out.solve = [P, Q](const I& x) { return S{P.solve(x.first), Q.solve(x.second)}; };
  if (P.enumerate_solutions && Q.enumerate_solutions)
    out.enumerate_solutions = [P, Q](const I& x, const typename Problem<I, S>::Visitor& visit) {
      auto right = Q.all_solutions(x.second);
      bool go = true;
      P.enumerate_solutions(x.first, [&](const S1& a) {
        for (const S2& b : right)
          if (!(go = visit(S{a, b}))) break;
        return go;
      });
    };
  return out;
}

// Q ∘ P: instances of P whose every P-solution is a Q-instance.
template <class I, class M, class S>
Problem<I, S> compose(const Problem<M, S>& Q, const Problem<I, M>& P) {
  Problem<I, S> out;
  out.name = Q.name + "∘" + P.name;
  out.instance_check = [P, Q](const I& x) {
    if (!P.instance_check(x)) return false;
    if (!P.enumerate_solutions) return true;
    bool ok = true;
    P.enumerate_solutions(x, [&](const M& y) { return ok = Q.instance_check(y); });
    return ok;
  };
  out.solution_check = [P, Q](const I& x, const S& z) {
    if (!P.enumerate_solutions) throw MissingOracle(P.name + " has no solution enumerator");
    bool found = false;
    P.enumerate_solutions(x, [&](const M& y) {
      found = Q.instance_check(y) && Q.solution_check(y, z);
      return !found;
    });
    return found;
  };
  if (P.solve && Q.solve)
    out.solve = [P, Q](const I& x) {
      M y = P.solve(x);
      if (!Q.instance_check(y)) throw CompositionDomain(P.name + " solution is not a " + Q.name + " instance");
      return Q.solve(y);
    };
  if (P.enumerate_solutions && Q.enumerate_solutions)
    out.enumerate_solutions = [P, Q](const I& x, const typename Problem<I, S>::Visitor& visit) {
      std::set<S> seen;
      bool go = true;
      P.enumerate_solutions(x, [&](const M& y) {
        if (!Q.instance_check(y)) throw CompositionDomain(P.name + " solution is not a " + Q.name + " instance");
        Q.enumerate_solutions(y, [&](const S& z) {
          if (seen.insert(z).second) go = visit(z);
          return go;
        });
        return go;
      });
    };
  return out;
}

// p(k) = prefix[k] for k < |prefix|, then tail forever.
struct EventualStream {
  std::vector<Nat> prefix;
  Nat tail = 1;

  Nat at(Nat k) const { return k < prefix.size() ? prefix[k] : tail; }
  bool operator==(const EventualStream&) const = default;
};

bool lpo(const EventualStream& p);

// f(k) = prefix[k] for k < |prefix|, f(|prefix| + j) = tail_start + j.
struct ShiftTable {
  std::vector<Nat> prefix;
  Nat tail_start = 0;

  Nat at(Nat k) const { return k < prefix.size() ? prefix[k] : tail_start + (k - prefix.size()); }
  bool in_range(Nat v) const;
};

Nat c_n(const ShiftTable& f);  // least value outside the range; throws Surjective

Problem<EventualStream, bool> lpo_problem();
Problem<ShiftTable, Nat> cn_problem();

struct AtrInstance {
  LabeledOrder order;
  Column start;
  JumpOperator jump;
};

Problem<AtrInstance, Columns> atr_problem();
Problem<BipartiteGraph, KoenigCover> kdt_problem(const EnumerationLimits& limits = {});
// Parallel KDT over a list of graphs; enumeration walks the full product.
Problem<std::vector<BipartiteGraph>, std::vector<KoenigCover>> kdt_family_problem(const EnumerationLimits& limits = {});

struct KdtFamily {
  HierarchyForest forest;
  std::vector<std::pair<Nat, Nat>> ids;  // (b, n) of each graph
  std::vector<BipartiteGraph> graphs;
};

KdtFamily atr_to_kdt_forward(const AtrInstance& x, const Budgets& budgets = {});
// covers[k] is a cover of graphs[k].
Columns atr_to_kdt_backward(const KdtFamily& family, const std::vector<KoenigCover>& covers);
Reduction<AtrInstance, Columns, std::vector<BipartiteGraph>, std::vector<KoenigCover>> atr_to_kdt(
    const Budgets& budgets = {});

struct Atr2Solution {
  enum class Branch { Hierarchy, Descent };
  Branch branch = Branch::Hierarchy;
  Columns columns;
  std::vector<Nat> descent;  // inconsistent elements, <_L-descending
  std::map<Nat, ConsistencyVerdict> verdicts;
  // Inconsistent elements with no smaller inconsistent one whose witness
  // subtree does not carry a valid cover.
  std::vector<Nat> stepping_gaps;

  bool stepping_holds() const { return stepping_gaps.empty(); }
};

// Root membership is read off the covers without validating them.
Atr2Solution atr2_backward_with_consistency(const HierarchyForest& F, const ForestCovers& covers);
bool check_atr2_solution(const AtrInstance& x, const Atr2Solution& s);

enum class Direction { LeqM, GeqM, Equiv };
std::string to_string(Direction d);

// Decides whether M has an element outside `image`.
using CwoOracle = std::function<bool(const FiniteOrder& M, const std::set<Nat>& image)>;
CwoOracle direct_cwo_oracle();

struct CwoResult {
  Direction direction = Direction::Equiv;
  // L -> M for LeqM and Equiv, M -> L for GeqM.
  std::map<Nat, Nat> embedding;
};

CwoResult cwo_solve(const FiniteOrder& L, const FiniteOrder& M, const CwoOracle& oracle = direct_cwo_oracle());
bool check_cwo_solution(const FiniteOrder& L, const FiniteOrder& M, const CwoResult& r);
Problem<std::pair<FiniteOrder, FiniteOrder>, CwoResult> cwo_problem();

struct Kdt2Result {
  bool bipartite = true;
  std::optional<KoenigCover> cover;
  std::vector<Nat> odd_cycle;
};

// Certificate stream for "G has an odd cycle": a 0 at the first edge that closes one.
EventualStream odd_cycle_stream(const BipartiteGraph& G);
Kdt2Result kdt2_via_lpo_kdt(const BipartiteGraph& G);
bool check_kdt2_solution(const BipartiteGraph& G, const Kdt2Result& r);

}  // namespace atrlab
