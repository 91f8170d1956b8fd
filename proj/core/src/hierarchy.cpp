#include "atrlab/hierarchy.hpp"

#include <mutex>

#include "atrlab/errors.hpp"

namespace atrlab {

StepFailure::StepFailure(Nat element, const std::string& what)
    : std::runtime_error("recursion failed at element " + std::to_string(element) + ": " + what),
      element_(element) {}

Column join(const Columns& columns) {
  Column out;
  for (const auto& [a, col] : columns)
    for (Nat n : col) out.insert(cantor_pair(a, n));
  return out;
}

Column join_below(const Columns& columns, const FiniteOrder& L, Nat b) {
  Column out;
  for (const auto& [a, col] : columns)
    if (L.contains(a) && L.less(a, b))
      for (Nat n : col) out.insert(cantor_pair(a, n));
  return out;
}

Hierarchy build_hierarchy(const LabeledOrder& L, const Column& A, const JumpOperator& J) {
  std::function<Column(Nat, const Columns&)> step = [&](Nat b, const Columns& below) {
    if (b == L.first) return A;
    return J.apply(join_below(below, L.order, b));
  };
  auto outcome = effective_recursion<Column>(L.order, step);
  if (!outcome.ok()) std::rethrow_exception(outcome.error);
  return Hierarchy{L, std::move(outcome.table), J};
}

bool verify_hierarchy(const Hierarchy& H, const Column& A) {
  for (Nat b : H.order.order.ascending()) {
    auto it = H.columns.find(b);
    if (it == H.columns.end()) return false;
    Column expected = b == H.order.first ? A : H.jump.apply(join_below(H.columns, H.order.order, b));
    if (expected != it->second) return false;
  }
  return H.columns.size() == H.order.order.size();
}

Column encode_order(const FiniteOrder& L) {
  Column out;
  for (Nat a : L.ascending())
    for (Nat b : L.ascending())
      if (L.leq(a, b)) out.insert(cantor_pair(a, b));
  return out;
}

Columns build_y_hierarchy(const LabeledOrder& L, const JumpOperator& J) {
  Column first = encode_order(L.order);
  std::function<Column(Nat, const Columns&)> step = [&](Nat b, const Columns& below) {
    if (b == L.first) return first;
    if (L.is_successor(b)) {
      auto p = L.pred.find(b);
      if (p == L.pred.end() || !below.count(p->second))
        throw std::invalid_argument("successor " + std::to_string(b) + " has no predecessor below it");
      return J.apply(below.at(p->second));
    }
    return join_below(below, L.order, b);
  };
  auto outcome = effective_recursion<Column>(L.order, step);
  if (!outcome.ok()) throw StepFailure(*outcome.failed_at, outcome.failure);
  return outcome.table;
}

std::vector<InversionTriple> jump_inversion(const JumpOperator& J, Nat slot) {
  std::vector<InversionTriple> out;
  auto program = J.slot_program(slot);
  if (!program) return out;
  for (const HaltingPair& hp : minimal_halting_pairs(*program, slot, J.step_budget())) {
    InversionTriple t;
    for (const auto& [address, bit] : hp.sigma) (bit ? t.positive : t.negative).insert(address);
    out.push_back(std::move(t));
  }
  return out;
}

struct GHTables::State {
  LabeledOrder order;
  JumpOperator jump;
  Column y_first;
  std::vector<Nat> visit_order;
  mutable std::mutex mu;
  mutable std::map<Nat, std::vector<InversionTriple>> inversion;
  mutable std::map<std::pair<Nat, Nat>, LazyTree> g_cache, h_cache;

  const std::vector<InversionTriple>& triples(Nat n) const {
    std::lock_guard<std::mutex> lock(mu);
    auto it = inversion.find(n);
    if (it == inversion.end()) it = inversion.emplace(n, jump_inversion(jump, n)).first;
    return it->second;
  }

  LazyTree tree(bool want_h, Nat a, Nat n) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto& cache = want_h ? h_cache : g_cache;
      if (auto it = cache.find({a, n}); it != cache.end()) return it->second;
    }
    LazyTree t = compute(want_h, a, n);
    std::lock_guard<std::mutex> lock(mu);
    (want_h ? h_cache : g_cache).emplace(std::pair{a, n}, t);
    return t;
  }

  LazyTree compute(bool want_h, Nat a, Nat n) const {
    if (!order.order.contains(a)) throw std::out_of_range("element " + std::to_string(a) + " not in the order");
    if (a == order.first) {
      bool in_y = y_first.count(n) > 0;
      return in_y == want_h ? zero_path() : leaf_tree();
    }
    if (order.is_successor(a)) {
      Nat p = order.pred.at(a);
      std::vector<LazyTree> outer;
      for (const InversionTriple& t : triples(n)) {
        std::vector<LazyTree> inner;
        for (Nat x : t.positive) inner.push_back(tree(want_h, p, x));
        for (Nat x : t.negative) inner.push_back(tree(!want_h, p, x));
        outer.push_back(want_h ? tree_min_vacuous(inner) : tree_max(inner));
      }
      return want_h ? tree_max(outer) : tree_min_vacuous(outer);
    }
    auto [c, m] = cantor_unpair(n);
    if (order.order.contains(c) && order.order.less(c, a)) return tree(want_h, c, m);
    return want_h ? leaf_tree() : zero_path();
  }
};

LazyTree GHTables::g(Nat a, Nat n) const { return state_->tree(false, a, n); }
LazyTree GHTables::h(Nat a, Nat n) const { return state_->tree(true, a, n); }
const LabeledOrder& GHTables::order() const { return state_->order; }
const std::vector<Nat>& GHTables::visit_order() const { return state_->visit_order; }

GHTables build_gh(const LabeledOrder& L, const JumpOperator& J) {
  if (J.kind() == JumpOperator::Kind::Synthetic)
    throw std::invalid_argument("g/h trees need a jump given by machines");
  GHTables out;
  out.state_ = std::make_shared<GHTables::State>();
  out.state_->order = L;
  out.state_->jump = J;
  out.state_->y_first = encode_order(L.order);
  std::function<bool(Nat, const std::map<Nat, bool>&)> step = [&](Nat b, const std::map<Nat, bool>& below) {
    if (L.is_successor(b) && !below.count(L.pred.at(b)))
      throw std::invalid_argument("predecessor of " + std::to_string(b) + " is not below it");
    return true;
  };
  auto outcome = effective_recursion<bool>(L.order, step);
  if (!outcome.ok()) throw StepFailure(*outcome.failed_at, outcome.failure);
  out.state_->visit_order = outcome.visit_order;
  return out;
}

namespace {

FiniteOrder kb_without_root(const FiniteTree& T) {
  FiniteOrder kb = kb_order(T.nodes());
  std::vector<Nat> ascending;
  for (Nat i : kb.ascending())
    if (i != 0) ascending.push_back(i);
  return FiniteOrder::from_ascending(std::move(ascending));
}

}  // namespace

ChenResult build_chen(const LabeledOrder& L, const ChenBudgets& budgets) {
  ChenResult out;
  std::vector<Nat> ascending;
  for (Nat a : L.order.ascending())
    for (Nat k = 0; k < budgets.copies; ++k) ascending.push_back(cantor_pair(k, a));
  out.omega_l = FiniteOrder::from_ascending(ascending);
  FiniteTree decreasing = materialize(t_of_order(out.omega_l), budgets.node_cap);
  out.fat = materialize(fatten(decreasing, budgets.width), budgets.node_cap);
  out.m = kb_without_root(out.fat);
  out.fat_rank = rank(out.fat).rank;
  return out;
}

ChenEntry chen_entry(const ChenResult& chen, const GHTables& gh, Nat a, Nat n, const ChenBudgets& budgets) {
  ChenEntry out;
  LazyTree h = gh.h(a, n);
  std::vector<LazyTree> family{chen.fat.lazy(), h};
  out.min_tree = materialize(tree_min(family), budgets.node_cap);
  out.k = kb_without_root(out.min_tree);
  out.min_rank = rank(out.min_tree).rank;
  if (h.has_witness()) {
    auto chain = witness_chain(h, chen.fat.height() + 2);
    const Node& descent = chain.back();
    std::map<Node, Node> f;
    for (const Node& tau : chen.fat.nodes())
      f.emplace(tau, min_node_of_paths(family, {tau, descent}, tau.size() + 1));
    out.embedding = std::move(f);
  }
  return out;
}

ChenTables build_chen(const LabeledOrder& L, const JumpOperator& J, Nat n_count, const ChenBudgets& budgets) {
  ChenTables out{build_chen(L, budgets), {}};
  GHTables gh = build_gh(L, J);
  for (Nat a : L.order.ascending())
    for (Nat n = 0; n < n_count; ++n) out.entries.emplace(std::pair{a, n}, chen_entry(out.base, gh, a, n, budgets));
  return out;
}

}  // namespace atrlab
