#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atrlab/node.hpp"
#include "atrlab/pairing.hpp"

namespace atrlab {

class FiniteOrder {
 public:
  FiniteOrder() = default;

  // Elements listed from least to greatest.
  static FiniteOrder from_ascending(std::vector<Nat> ascending);
  // Validates reflexivity, antisymmetry, transitivity and totality.
  static FiniteOrder from_relation(const std::vector<Nat>& domain,
                                   const std::vector<std::vector<bool>>& leq);
  // 0 < 1 < ... < n-1
  static FiniteOrder chain(Nat n);

  const std::vector<Nat>& ascending() const { return ascending_; }
  std::vector<Nat> domain() const;  // natural-number order
  std::size_t size() const { return ascending_.size(); }
  bool empty() const { return ascending_.empty(); }
  bool contains(Nat a) const { return position_.count(a) > 0; }
  std::size_t position(Nat a) const;
  bool leq(Nat a, Nat b) const { return position(a) <= position(b); }
  bool less(Nat a, Nat b) const { return position(a) < position(b); }

  bool operator==(const FiniteOrder& o) const { return ascending_ == o.ascending_; }

 private:
  std::vector<Nat> ascending_;
  std::map<Nat, std::size_t> position_;
};

struct LazyOrder {
  std::function<bool(Nat)> member;
  std::function<bool(Nat, Nat)> leq;
  // First k members in natural-number order (fewer if the scan limit is hit).
  std::function<std::vector<Nat>(std::size_t)> enumerate;
};

// Either a finite order or a lazily presented one.
class Order {
 public:
  Order(FiniteOrder f);  // NOLINT(google-explicit-constructor)
  Order(LazyOrder l);    // NOLINT(google-explicit-constructor)

  bool is_finite() const { return finite_.has_value(); }
  const FiniteOrder& finite() const;
  bool member(Nat a) const;
  bool leq(Nat a, Nat b) const;
  bool less(Nat a, Nat b) const { return leq(a, b) && a != b; }
  std::vector<Nat> enumerate(std::size_t k) const;
  LazyOrder as_lazy() const;

 private:
  std::optional<FiniteOrder> finite_;
  std::optional<LazyOrder> lazy_;
};

struct LabeledOrder {
  FiniteOrder order;
  Nat first = 0;
  std::set<Nat> successors;
  std::map<Nat, Nat> pred;

  std::set<Nat> limits() const;  // domain minus successors and first
  bool is_successor(Nat a) const { return successors.count(a) > 0; }
  bool is_limit(Nat a) const { return a != first && !is_successor(a); }

  // Explicit labels, checked only for the weaker conditions: first is the
  // minimum, pred(a) <_L a for every a in S. Lets finite test orders carry
  // designated limit elements.
  static LabeledOrder with_labels(FiniteOrder order, Nat first, std::set<Nat> successors,
                                  std::map<Nat, Nat> pred);
};

LabeledOrder make_labeled(const FiniteOrder& L);

// Scan limit used by lazy enumerations built from predicates.
inline constexpr Nat kLazyScanLimit = 1u << 20;

Order sum(const Order& L, const Order& M);      // elements pair(0,x), pair(1,y)
Order product(const Order& L, const Order& M);  // elements pair(x,y), M-coordinate major
Order sigma_sum(const std::vector<Order>& family);  // elements pair(i,x)
Order sigma_sum(std::function<Order(Nat)> family);  // infinite family, lazy result
LazyOrder omega_times(const Order& L);  // elements pair(n,a), a-coordinate major

// KB order on the nodes of a finite tree. Domain element i stands for
// nodes[i] of the lexicographically sorted node list `kb_nodes` returns.
FiniteOrder kb_order(const std::vector<Node>& tree_nodes);
std::vector<Node> kb_nodes(const std::vector<Node>& tree_nodes);

LabeledOrder restrict_below(const LabeledOrder& L, Nat a, bool plus_top);

// Longest <_L-descending subsequence of enumerate(budget^2), read in
// enumeration order; returned when it reaches length `budget`.
std::optional<std::vector<Nat>> descending_search(const Order& L, std::size_t budget);

// Reverse of the natural numbers: n <= m iff n >= m.
LazyOrder reverse_omega();
LazyOrder omega();

std::string to_string(const FiniteOrder& L);

}  // namespace atrlab
