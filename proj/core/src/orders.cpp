#include "atrlab/orders.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace atrlab {

FiniteOrder FiniteOrder::from_ascending(std::vector<Nat> ascending) {
  FiniteOrder L;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (!L.position_.emplace(ascending[i], i).second) {
      throw std::invalid_argument("order: duplicate element " + std::to_string(ascending[i]));
    }
  }
  L.ascending_ = std::move(ascending);
  return L;
}

FiniteOrder FiniteOrder::from_relation(const std::vector<Nat>& domain,
                                       const std::vector<std::vector<bool>>& leq) {
  std::size_t n = domain.size();
  if (leq.size() != n) throw std::invalid_argument("order: relation has wrong size");
  for (const auto& row : leq) {
    if (row.size() != n) throw std::invalid_argument("order: relation has wrong size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq[i][i]) throw std::invalid_argument("order: relation is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) throw std::invalid_argument("order: relation is not antisymmetric");
      if (!leq[i][j] && !leq[j][i]) throw std::invalid_argument("order: relation is not total");
      for (std::size_t k = 0; k < n; ++k) {
        if (leq[i][j] && leq[j][k] && !leq[i][k]) {
          throw std::invalid_argument("order: relation is not transitive");
        }
      }
    }
  }
  std::vector<std::pair<std::size_t, Nat>> ranked;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < n; ++j) below += leq[j][i] ? 1 : 0;
    ranked.emplace_back(below, domain[i]);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<Nat> asc;
  for (auto& [_, a] : ranked) asc.push_back(a);
  return from_ascending(std::move(asc));
}

FiniteOrder FiniteOrder::chain(Nat n) {
  std::vector<Nat> asc(n);
  for (Nat i = 0; i < n; ++i) asc[i] = i;
  return from_ascending(std::move(asc));
}

std::vector<Nat> FiniteOrder::domain() const {
  std::vector<Nat> d = ascending_;
  std::sort(d.begin(), d.end());
  return d;
}

std::size_t FiniteOrder::position(Nat a) const {
  auto it = position_.find(a);
  if (it == position_.end()) throw std::out_of_range("order: " + std::to_string(a) + " not in domain");
  return it->second;
}

Order::Order(FiniteOrder f) : finite_(std::move(f)) {}
Order::Order(LazyOrder l) : lazy_(std::move(l)) {}

const FiniteOrder& Order::finite() const {
  if (!finite_) throw std::logic_error("order is lazily presented");
  return *finite_;
}

bool Order::member(Nat a) const { return finite_ ? finite_->contains(a) : lazy_->member(a); }

bool Order::leq(Nat a, Nat b) const { return finite_ ? finite_->leq(a, b) : lazy_->leq(a, b); }

std::vector<Nat> Order::enumerate(std::size_t k) const {
  if (!finite_) return lazy_->enumerate(k);
  std::vector<Nat> d = finite_->domain();
  if (d.size() > k) d.resize(k);
  return d;
}

LazyOrder Order::as_lazy() const {
  if (lazy_) return *lazy_;
  auto f = std::make_shared<FiniteOrder>(*finite_);
  return LazyOrder{[f](Nat a) { return f->contains(a); },
                   [f](Nat a, Nat b) { return f->leq(a, b); },
                   [f](std::size_t k) {
                     std::vector<Nat> d = f->domain();
                     if (d.size() > k) d.resize(k);
                     return d;
                   }};
}

std::set<Nat> LabeledOrder::limits() const {
  std::set<Nat> out;
  for (Nat a : order.ascending()) {
    if (is_limit(a)) out.insert(a);
  }
  return out;
}

LabeledOrder LabeledOrder::with_labels(FiniteOrder order, Nat first, std::set<Nat> successors,
                                       std::map<Nat, Nat> pred) {
  if (order.empty()) throw std::invalid_argument("labeled order: empty order");
  if (order.ascending().front() != first) throw std::invalid_argument("labeled order: first is not the minimum");
  for (Nat a : successors) {
    auto it = pred.find(a);
    if (!order.contains(a) || it == pred.end() || !order.contains(it->second) ||
        !order.less(it->second, a)) {
      throw std::invalid_argument("labeled order: bad predecessor label at " + std::to_string(a));
    }
  }
  if (successors.count(first)) throw std::invalid_argument("labeled order: first element labeled successor");
  return LabeledOrder{std::move(order), first, std::move(successors), std::move(pred)};
}

LabeledOrder make_labeled(const FiniteOrder& L) {
  if (L.empty()) throw std::invalid_argument("make_labeled: empty order");
  LabeledOrder out;
  out.order = L;
  out.first = L.ascending().front();
  for (std::size_t i = 1; i < L.size(); ++i) {
    out.successors.insert(L.ascending()[i]);
    out.pred[L.ascending()[i]] = L.ascending()[i - 1];
  }
  return out;
}

namespace {

std::function<std::vector<Nat>(std::size_t)> scan_enumerator(std::function<bool(Nat)> member) {
  return [member](std::size_t k) {
    std::vector<Nat> out;
    for (Nat c = 0; out.size() < k && c < kLazyScanLimit; ++c) {
      if (member(c)) out.push_back(c);
    }
    return out;
  };
}

Order finite_from_ascending(std::vector<Nat> asc) { return Order(FiniteOrder::from_ascending(std::move(asc))); }

}  // namespace

Order sum(const Order& L, const Order& M) {
  if (L.is_finite() && M.is_finite()) {
    std::vector<Nat> asc;
    for (Nat x : L.finite().ascending()) asc.push_back(cantor_pair(0, x));
    for (Nat y : M.finite().ascending()) asc.push_back(cantor_pair(1, y));
    return finite_from_ascending(std::move(asc));
  }
  auto member = [L, M](Nat c) {
    auto [side, x] = cantor_unpair(c);
    if (side == 0) return L.member(x);
    if (side == 1) return M.member(x);
    return false;
  };
  auto leq = [L, M](Nat a, Nat b) {
    auto [sa, x] = cantor_unpair(a);
    auto [sb, y] = cantor_unpair(b);
    if (sa != sb) return sa < sb;
    return sa == 0 ? L.leq(x, y) : M.leq(x, y);
  };
  return Order(LazyOrder{member, leq, scan_enumerator(member)});
}

Order product(const Order& L, const Order& M) {
  if (L.is_finite() && M.is_finite()) {
    std::vector<Nat> asc;
    for (Nat y : M.finite().ascending()) {
      for (Nat x : L.finite().ascending()) asc.push_back(cantor_pair(x, y));
    }
    return finite_from_ascending(std::move(asc));
  }
  auto member = [L, M](Nat c) {
    auto [x, y] = cantor_unpair(c);
    return L.member(x) && M.member(y);
  };
  auto leq = [L, M](Nat a, Nat b) {
    auto [x1, y1] = cantor_unpair(a);
    auto [x2, y2] = cantor_unpair(b);
    if (y1 != y2) return M.leq(y1, y2);
    return L.leq(x1, x2);
  };
  return Order(LazyOrder{member, leq, scan_enumerator(member)});
}

Order sigma_sum(const std::vector<Order>& family) {
  bool all_finite = std::all_of(family.begin(), family.end(), [](const Order& o) { return o.is_finite(); });
  if (all_finite) {
    std::vector<Nat> asc;
    for (Nat i = 0; i < family.size(); ++i) {
      for (Nat x : family[i].finite().ascending()) asc.push_back(cantor_pair(i, x));
    }
    return finite_from_ascending(std::move(asc));
  }
  auto fam = std::make_shared<std::vector<Order>>(family);
  return sigma_sum([fam](Nat i) -> Order {
    if (i < fam->size()) return (*fam)[i];
    return Order(FiniteOrder());
  });
}

Order sigma_sum(std::function<Order(Nat)> family) {
  auto member = [family](Nat c) {
    auto [i, x] = cantor_unpair(c);
    return family(i).member(x);
  };
  auto leq = [family](Nat a, Nat b) {
    auto [i, x] = cantor_unpair(a);
    auto [j, y] = cantor_unpair(b);
    if (i != j) return i < j;
    return family(i).leq(x, y);
  };
  return Order(LazyOrder{member, leq, scan_enumerator(member)});
}

LazyOrder omega_times(const Order& L) {
  auto member = [L](Nat c) { return L.member(cantor_unpair(c).second); };
  auto leq = [L](Nat a, Nat b) {
    auto [n, x] = cantor_unpair(a);
    auto [m, y] = cantor_unpair(b);
    if (x != y) return L.less(x, y);
    return n <= m;
  };
  return LazyOrder{member, leq, scan_enumerator(member)};
}

std::vector<Node> kb_nodes(const std::vector<Node>& tree_nodes) {
  std::vector<Node> nodes = tree_nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty() || !nodes.front().empty()) {
    throw std::invalid_argument("kb_order: tree must contain the empty root");
  }
  for (const Node& n : nodes) {
    if (n.empty()) continue;
    if (!std::binary_search(nodes.begin(), nodes.end(), parent(n))) {
      throw std::invalid_argument("kb_order: not prefix closed at (" + to_string(n) + ")");
    }
  }
  return nodes;
}

FiniteOrder kb_order(const std::vector<Node>& tree_nodes) {
  std::vector<Node> nodes = kb_nodes(tree_nodes);
  std::vector<Nat> idx(nodes.size());
  for (Nat i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](Nat a, Nat b) { return kb_less(nodes[a], nodes[b]); });
  return FiniteOrder::from_ascending(std::move(idx));
}

LabeledOrder restrict_below(const LabeledOrder& L, Nat a, bool plus_top) {
  if (!L.order.contains(a)) throw std::out_of_range("restrict_below: element not in domain");
  std::vector<Nat> asc;
  for (Nat b : L.order.ascending()) {
    if (L.order.leq(b, a)) asc.push_back(b);
  }
  if (plus_top) {
    Nat top = *std::max_element(L.order.ascending().begin(), L.order.ascending().end()) + 1;
    asc.push_back(top);
  }
  return make_labeled(FiniteOrder::from_ascending(std::move(asc)));
}

std::optional<std::vector<Nat>> descending_search(const Order& L, std::size_t budget) {
  if (budget == 0) return std::vector<Nat>{};
  std::vector<Nat> xs = L.enumerate(budget * budget);
  std::size_t n = xs.size();
  // best[i]: length of the longest descending run ending at xs[i]
  std::vector<std::size_t> best(n, 1), prev(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (L.less(xs[i], xs[j]) && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
    }
    if (best[i] >= budget) {
      std::vector<Nat> seq;
      for (std::size_t k = i; k != n && seq.size() < budget; k = prev[k]) seq.push_back(xs[k]);
      std::reverse(seq.begin(), seq.end());
      return seq;
    }
  }
  return std::nullopt;
}

LazyOrder reverse_omega() {
  return LazyOrder{[](Nat) { return true; }, [](Nat a, Nat b) { return a >= b; },
                   [](std::size_t k) {
                     std::vector<Nat> out(k);
                     for (std::size_t i = 0; i < k; ++i) out[i] = i;
                     return out;
                   }};
}

LazyOrder omega() {
  return LazyOrder{[](Nat) { return true; }, [](Nat a, Nat b) { return a <= b; },
                   [](std::size_t k) {
                     std::vector<Nat> out(k);
                     for (std::size_t i = 0; i < k; ++i) out[i] = i;
                     return out;
                   }};
}

std::string to_string(const FiniteOrder& L) {
  std::ostringstream os;
  for (std::size_t i = 0; i < L.size(); ++i) os << (i ? " < " : "") << L.ascending()[i];
  return os.str();
}

}  // namespace atrlab
