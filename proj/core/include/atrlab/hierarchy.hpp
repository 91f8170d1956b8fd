#pragma once

#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atrlab/machine.hpp"
#include "atrlab/orders.hpp"
#include "atrlab/trees.hpp"

namespace atrlab {

template <class V>
struct RecursionOutcome {
  std::map<Nat, V> table;
  std::vector<Nat> visit_order;
  std::optional<Nat> failed_at;
  std::string failure;
  std::exception_ptr error;

  bool ok() const { return !failed_at.has_value(); }
};

// Evaluates `step(b, results strictly below b)` along L from least to
// greatest. Stops at the first element whose step throws.
template <class V>
RecursionOutcome<V> effective_recursion(
    const FiniteOrder& L, const std::function<V(Nat, const std::map<Nat, V>&)>& step) {
  RecursionOutcome<V> out;
  for (Nat b : L.ascending()) {
    out.visit_order.push_back(b);
    try {
      out.table.emplace(b, step(b, out.table));
    } catch (const std::exception& e) {
      out.failed_at = b;
      out.failure = e.what();
      out.error = std::current_exception();
      break;
    }
  }
  return out;
}

using Column = std::set<Nat>;
using Columns = std::map<Nat, Column>;

// {pair(a, n) : n in columns[a]}
Column join(const Columns& columns);
// Join of the columns strictly below b.
Column join_below(const Columns& columns, const FiniteOrder& L, Nat b);

struct Hierarchy {
  LabeledOrder order;
  Columns columns;
  JumpOperator jump;
};

class StepFailure : public std::runtime_error {
 public:
  StepFailure(Nat element, const std::string& what);
  Nat element() const { return element_; }

 private:
  Nat element_;
};

Hierarchy build_hierarchy(const LabeledOrder& L, const Column& A, const JumpOperator& J);
// Recomputes every column from the columns strictly below it.
bool verify_hierarchy(const Hierarchy& H, const Column& A);

// {pair(a, b) : a <=_L b}
Column encode_order(const FiniteOrder& L);
// First column is the encoded order, a successor applies J to its
// predecessor's column, a limit joins the columns below it.
Columns build_y_hierarchy(const LabeledOrder& L, const JumpOperator& J);

// One (P, Q) entry of the jump inversion for a slot: the slot's machine
// halts on every oracle extending P ↦ 1, Q ↦ 0.
struct InversionTriple {
  std::set<Nat> positive;
  std::set<Nat> negative;
};
std::vector<InversionTriple> jump_inversion(const JumpOperator& J, Nat slot);

// Trees g(a, n), h(a, n) built on demand and cached.
class GHTables {
 public:
  LazyTree g(Nat a, Nat n) const;
  LazyTree h(Nat a, Nat n) const;
  const LabeledOrder& order() const;
  const std::vector<Nat>& visit_order() const;

 private:
  friend GHTables build_gh(const LabeledOrder& L, const JumpOperator& J);
  struct State;
  std::shared_ptr<State> state_;
};

GHTables build_gh(const LabeledOrder& L, const JumpOperator& J);

struct ChenBudgets {
  std::size_t copies = 2;  // copies of L kept from ω·L
  std::size_t width = 1;   // fattening width
  std::size_t node_cap = 200000;
};

struct ChenResult {
  FiniteOrder omega_l;           // truncated ω·L, elements pair(k, a)
  FiniteTree fat;                // fattened decreasing-sequence tree
  FiniteOrder m;                 // KB order of `fat` minus its root, over node indices
  Nat fat_rank = 0;
};

struct ChenEntry {
  FiniteTree min_tree;           // min(fat, h(a, n))
  FiniteOrder k;                 // KB order of `min_tree` minus its root
  Nat min_rank = 0;
  // For witnessed h(a, n): fat node -> min node, τ ↦ ⟨⟨τ↾i, σ_i⟩⟩.
  std::optional<std::map<Node, Node>> embedding;
};

ChenResult build_chen(const LabeledOrder& L, const ChenBudgets& budgets = {});
ChenEntry chen_entry(const ChenResult& chen, const GHTables& gh, Nat a, Nat n,
                     const ChenBudgets& budgets = {});

struct ChenTables {
  ChenResult base;
  std::map<std::pair<Nat, Nat>, ChenEntry> entries;  // (a, n) for n < n_count
};
ChenTables build_chen(const LabeledOrder& L, const JumpOperator& J, Nat n_count,
                      const ChenBudgets& budgets = {});

}  // namespace atrlab
