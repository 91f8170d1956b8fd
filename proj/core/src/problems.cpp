#include "atrlab/problems.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "atrlab/errors.hpp"
#include "atrlab/textio.hpp"

namespace atrlab {

bool lpo(const EventualStream& p) {
  return p.tail == 0 || std::find(p.prefix.begin(), p.prefix.end(), 0) != p.prefix.end();
}

bool ShiftTable::in_range(Nat v) const {
  return v >= tail_start || std::find(prefix.begin(), prefix.end(), v) != prefix.end();
}

Nat c_n(const ShiftTable& f) {
  for (Nat v = 0; v < f.tail_start; ++v)
    if (!f.in_range(v)) return v;
  throw Surjective("the table reaches every natural number");
}

Problem<EventualStream, bool> lpo_problem() {
  Problem<EventualStream, bool> P;
  P.name = "LPO";
  P.instance_check = [](const EventualStream&) { return true; };
  P.solution_check = [](const EventualStream& p, const bool& b) { return b == lpo(p); };
  P.solve = [](const EventualStream& p) { return lpo(p); };
  P.enumerate_solutions = [](const EventualStream& p, const Problem<EventualStream, bool>::Visitor& visit) {
    visit(lpo(p));
  };
  return P;
}

Problem<ShiftTable, Nat> cn_problem() {
  Problem<ShiftTable, Nat> P;
  P.name = "C_N";
  P.instance_check = [](const ShiftTable& f) {
    for (Nat v = 0; v < f.tail_start; ++v)
      if (!f.in_range(v)) return true;
    return false;
  };
  P.solution_check = [](const ShiftTable& f, const Nat& v) { return !f.in_range(v); };
  P.solve = [](const ShiftTable& f) { return c_n(f); };
  P.enumerate_solutions = [](const ShiftTable& f, const Problem<ShiftTable, Nat>::Visitor& visit) {
    for (Nat v = 0; v < f.tail_start; ++v)
      if (!f.in_range(v) && !visit(v)) return;
  };
  return P;
}

Problem<AtrInstance, Columns> atr_problem() {
  Problem<AtrInstance, Columns> P;
  P.name = "ATR";
  P.instance_check = [](const AtrInstance& x) {
    if (x.order.order.empty() || !x.order.order.contains(x.order.first)) return false;
    for (Nat s : x.order.successors)
      if (!x.order.pred.count(s) || !x.order.order.less(x.order.pred.at(s), s)) return false;
    return true;
  };
  P.solution_check = [](const AtrInstance& x, const Columns& c) {
    return verify_hierarchy(Hierarchy{x.order, c, x.jump}, x.start);
  };
  P.solve = [](const AtrInstance& x) { return build_hierarchy(x.order, x.start, x.jump).columns; };
  P.enumerate_solutions = [](const AtrInstance& x, const Problem<AtrInstance, Columns>::Visitor& visit) {
    visit(build_hierarchy(x.order, x.start, x.jump).columns);
  };
  return P;
}

Problem<BipartiteGraph, KoenigCover> kdt_problem(const EnumerationLimits& limits) {
  Problem<BipartiteGraph, KoenigCover> P;
  P.name = "KDT";
  P.instance_check = [](const BipartiteGraph& G) { return check_bipartite(G).bipartite(); };
  P.solution_check = [](const BipartiteGraph& G, const KoenigCover& K) { return is_koenig_cover(G, K); };
  P.solve = [](const BipartiteGraph& G) { return koenig_cover(G); };
  P.enumerate_solutions = [limits](const BipartiteGraph& G, const Problem<BipartiteGraph, KoenigCover>::Visitor& visit) {
    for_each_koenig_cover(G, visit, limits);
  };
  return P;
}

Problem<std::vector<BipartiteGraph>, std::vector<KoenigCover>> kdt_family_problem(const EnumerationLimits& limits) {
  using Graphs = std::vector<BipartiteGraph>;
  using Covers = std::vector<KoenigCover>;
  Problem<Graphs, Covers> P;
  P.name = "KDT-family";
  P.instance_check = [](const Graphs& gs) {
    return std::all_of(gs.begin(), gs.end(), [](const BipartiteGraph& G) { return check_bipartite(G).bipartite(); });
  };
  P.solution_check = [](const Graphs& gs, const Covers& cs) {
    if (gs.size() != cs.size()) return false;
    for (std::size_t k = 0; k < gs.size(); ++k)
      if (!is_koenig_cover(gs[k], cs[k])) return false;
    return true;
  };
  P.solve = [](const Graphs& gs) {
    Covers out;
    for (const auto& G : gs) out.push_back(koenig_cover(G));
    return out;
  };
  P.enumerate_solutions = [limits](const Graphs& gs, const Problem<Graphs, Covers>::Visitor& visit) {
    std::vector<Covers> options;
    for (const auto& G : gs) options.push_back(enumerate_koenig_covers(G, limits));
    Covers current(gs.size());
    bool go = true;
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
      if (!go) return;
      if (k == gs.size()) {
        go = visit(current);
        return;
      }
      for (const auto& K : options[k]) {
        current[k] = K;
        walk(k + 1);
        if (!go) return;
      }
    };
    walk(0);
  };
  return P;
}

KdtFamily atr_to_kdt_forward(const AtrInstance& x, const Budgets& budgets) {
  KdtFamily out{build_forest(x.order, x.start, x.jump, budgets.tree_node_cap), {}, {}};
  out.ids = out.forest.tree_ids();
  for (const auto& [b, n] : out.ids) out.graphs.push_back(tree_graph(out.forest.tree(b, n)));
  return out;
}

Columns atr_to_kdt_backward(const KdtFamily& family, const std::vector<KoenigCover>& covers) {
  if (covers.size() != family.ids.size())
    throw std::invalid_argument("expected " + std::to_string(family.ids.size()) + " covers, got " +
                                std::to_string(covers.size()));
  Columns out;
  for (Nat b : family.forest.order.order.ascending()) out[b];
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto& [b, n] = family.ids[k];
    if (decode_bit(family.forest.tree(b, n), covers[k])) out[b].insert(n);
  }
  return out;
}

Reduction<AtrInstance, Columns, std::vector<BipartiteGraph>, std::vector<KoenigCover>> atr_to_kdt(
    const Budgets& budgets) {
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const KdtFamily>> families;
  };
  auto cache = std::make_shared<Cache>();
  auto family = [cache, budgets](const AtrInstance& x) {
    std::string key = format_labeled_order(x.order) + "|" + format_set(x.start) + "|" + x.jump.describe();
    std::lock_guard<std::mutex> lock(cache->mu);
    auto& slot = cache->families[key];
    if (!slot) slot = std::make_shared<const KdtFamily>(atr_to_kdt_forward(x, budgets));
    return slot;
  };
  Reduction<AtrInstance, Columns, std::vector<BipartiteGraph>, std::vector<KoenigCover>> red;
  red.name = "ATR→KDT";
  red.forward = [family](const AtrInstance& x) { return family(x)->graphs; };
  red.backward = [family](const AtrInstance& x, const std::vector<KoenigCover>& covers) {
    return atr_to_kdt_backward(*family(x), covers);
  };
  return red;
}

Atr2Solution atr2_backward_with_consistency(const HierarchyForest& F, const ForestCovers& covers) {
  Atr2Solution out;
  out.verdicts = testing::check_consistency_unvalidated(F, covers);
  const FiniteOrder& L = F.order.order;
  std::vector<Nat> inconsistent;
  for (Nat a : L.ascending())
    if (!out.verdicts.at(a).consistent) inconsistent.push_back(a);
  if (inconsistent.empty()) {
    out.branch = Atr2Solution::Branch::Hierarchy;
    for (Nat b : L.ascending()) out.columns[b];
    for (const auto& [b, n] : F.tree_ids())
      if (covers.at({b, n}).cover.count(0)) out.columns[b].insert(n);
    return out;
  }
  out.branch = Atr2Solution::Branch::Descent;
  // From the greatest inconsistent element, step to the greatest inconsistent one below.
  std::optional<Nat> current = inconsistent.back();
  while (current) {
    out.descent.push_back(*current);
    std::optional<Nat> next;
    for (Nat a : inconsistent)
      if (L.less(a, *current)) next = a;
    current = next;
  }
  // The least inconsistent element has nothing below it to step to, so its
  // witness subtree must carry a broken cover.
  Nat least = inconsistent.front();
  const ConsistencyWitness& w = *out.verdicts.at(least).witness;
  auto [sub, sub_cover] = restrict_cover(F.tree(w.b, w.n), covers.at({w.b, w.n}), w.r);
  if (!cover_defect(tree_graph(sub), sub_cover)) out.stepping_gaps.push_back(least);
  return out;
}

bool check_atr2_solution(const AtrInstance& x, const Atr2Solution& s) {
  if (s.branch == Atr2Solution::Branch::Hierarchy)
    return verify_hierarchy(Hierarchy{x.order, s.columns, x.jump}, x.start);
  if (s.descent.empty()) return false;
  const FiniteOrder& L = x.order.order;
  for (std::size_t k = 0; k < s.descent.size(); ++k) {
    Nat a = s.descent[k];
    if (!L.contains(a)) return false;
    if (k && !L.less(a, s.descent[k - 1])) return false;
    auto it = s.verdicts.find(a);
    if (it == s.verdicts.end() || it->second.consistent) return false;
  }
  return true;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::LeqM:
      return "L<=M";
    case Direction::GeqM:
      return "L>=M";
    case Direction::Equiv:
      return "L==M";
  }
  return "?";
}

CwoOracle direct_cwo_oracle() {
  return [](const FiniteOrder& M, const std::set<Nat>& image) {
    return std::any_of(M.ascending().begin(), M.ascending().end(), [&](Nat m) { return !image.count(m); });
  };
}

namespace {

class Exhausted : public std::runtime_error {
 public:
  Exhausted() : std::runtime_error("no element of M above the image") {}
};

bool onto_initial_segment(const FiniteOrder& from, const FiniteOrder& to, const std::map<Nat, Nat>& f) {
  if (f.size() != from.size()) return false;
  std::set<Nat> image;
  for (Nat a : from.ascending()) {
    auto it = f.find(a);
    if (it == f.end() || !to.contains(it->second)) return false;
    image.insert(it->second);
  }
  if (image.size() != f.size()) return false;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (f.at(from.ascending()[i]) != to.ascending()[i]) return false;
  }
  return true;
}

}  // namespace

CwoResult cwo_solve(const FiniteOrder& L, const FiniteOrder& M, const CwoOracle& oracle) {
  std::function<Nat(Nat, const std::map<Nat, Nat>&)> step = [&](Nat, const std::map<Nat, Nat>& below) {
    std::set<Nat> image;
    for (const auto& [a, m] : below) image.insert(m);
    if (!oracle(M, image)) throw Exhausted();
    for (Nat m : M.ascending())
      if (!image.count(m)) return m;
    throw Exhausted();
  };
  auto outcome = effective_recursion<Nat>(L, step);
  CwoResult out;
  if (outcome.ok()) {
    out.direction = outcome.table.size() == M.size() ? Direction::Equiv : Direction::LeqM;
    out.embedding = std::move(outcome.table);
    return out;
  }
  out.direction = Direction::GeqM;
  for (const auto& [a, m] : outcome.table) out.embedding[m] = a;
  return out;
}

bool check_cwo_solution(const FiniteOrder& L, const FiniteOrder& M, const CwoResult& r) {
  switch (r.direction) {
    case Direction::LeqM:
      return onto_initial_segment(L, M, r.embedding);
    case Direction::GeqM:
      return onto_initial_segment(M, L, r.embedding);
    case Direction::Equiv:
      return L.size() == M.size() && onto_initial_segment(L, M, r.embedding);
  }
  return false;
}

Problem<std::pair<FiniteOrder, FiniteOrder>, CwoResult> cwo_problem() {
  using I = std::pair<FiniteOrder, FiniteOrder>;
  Problem<I, CwoResult> P;
  P.name = "CWO";
  P.instance_check = [](const I&) { return true; };
  P.solution_check = [](const I& x, const CwoResult& r) { return check_cwo_solution(x.first, x.second, r); };
  P.solve = [](const I& x) { return cwo_solve(x.first, x.second); };
  return P;
}

EventualStream odd_cycle_stream(const BipartiteGraph& G) {
  EventualStream out;
  for (bool closes : odd_cycle_flags(G)) out.prefix.push_back(closes ? 0 : 1);
  out.tail = 1;
  return out;
}

Kdt2Result kdt2_via_lpo_kdt(const BipartiteGraph& G) {
  bool odd = lpo(odd_cycle_stream(G));
  KoenigCover repaired = koenig_cover(bipartite_repair(G));
  Kdt2Result out;
  out.bipartite = !odd;
  if (!odd)
    out.cover = std::move(repaired);
  else
    out.odd_cycle = check_bipartite(G).odd_cycle;
  return out;
}

bool check_kdt2_solution(const BipartiteGraph& G, const Kdt2Result& r) {
  if (r.bipartite) return r.cover && check_bipartite(G).bipartite() && is_koenig_cover(G, *r.cover);
  const auto& c = r.odd_cycle;
  if (c.empty() || c.size() % 2 == 0) return false;
  std::set<Edge> edges;
  for (const Edge& e : G.edges) edges.insert(normalized(e));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!edges.count(normalized({c[k], c[(k + 1) % c.size()]}))) return false;
  return true;
}

}  // namespace atrlab
