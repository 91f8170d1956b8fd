#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atrlab/node.hpp"
#include "atrlab/orders.hpp"

namespace atrlab {

class FiniteTree;

// A rooted tree of sequences presented by membership and a finite children
// procedure. Finite trees built by the calculus are always rooted at the
// empty node; a copy r⌢T is handled as the pair (r, T).
struct LazyTree {
  Node root;
  std::function<bool(const Node&)> contains;
  std::function<std::vector<Node>(const Node&)> children;  // sorted by last entry
  Nat depth_budget = 1u << 16;
  Nat width_budget = 1u << 16;
  // d -> chain of d nodes, each properly extending the previous one.
  std::function<std::vector<Node>(std::size_t)> witness;
  // Nodes with equal keys have isomorphic subtrees above them. Optional;
  // lets rank computations share work and detect ill-foundedness.
  std::function<std::vector<Nat>(const Node&)> shape_key;
  // Set when the tree was built from an explicit node set.
  std::shared_ptr<const FiniteTree> explicit_nodes;

  bool has_witness() const { return static_cast<bool>(witness); }
};

class FiniteTree {
 public:
  FiniteTree();  // the single-node tree {ε}
  // Validates that the set is rooted at ε and prefix closed.
  explicit FiniteTree(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }  // lexicographic
  std::size_t size() const { return nodes_.size(); }
  bool contains(const Node& n) const;
  std::optional<std::size_t> index_of(const Node& n) const;
  std::size_t index(const Node& n) const;  // throws when absent
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::optional<std::size_t> parent_index(std::size_t i) const;
  const std::vector<std::size_t>& children_of(std::size_t i) const { return children_[i]; }
  std::size_t depth(std::size_t i) const { return nodes_[i].size(); }
  std::size_t height() const;

  // Nodes σ with r⌢σ in the tree (r must be a node).
  FiniteTree subtree_at(const Node& r) const;

  LazyTree lazy() const;
  bool operator==(const FiniteTree& o) const { return nodes_ == o.nodes_; }

 private:
  std::vector<Node> nodes_;
  std::map<Node, std::size_t> index_;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<std::size_t>> children_;
};

LazyTree leaf_tree();             // {ε}
LazyTree three_node_tree();       // {ε,(0),(1)}
LazyTree zero_path();             // infinite path of 0's, witnessed
FiniteTree full_binary_tree(std::size_t depth);

// Breadth-first expansion; BudgetExceeded above `node_cap` nodes or past the
// tree's depth budget.
FiniteTree materialize(const LazyTree& T, std::size_t node_cap = 200000);

LazyTree tree_max(const std::vector<LazyTree>& family);
// Staggered common descent tree. A level-m node holds, for each i < m in the
// family, a root path of m nodes in T_i; its child labels index the product
// of per-coordinate extensions (coordinate 0 most significant, a newly
// entering coordinate last). The empty family gives {ε}.
LazyTree tree_min(const std::vector<LazyTree>& family);
// Same as tree_min except that the empty family gives the vacuous
// descent tree: one node per level, an infinite witnessed path.
LazyTree tree_min_vacuous(const std::vector<LazyTree>& family);
// The level-`level` node of min(family) whose coordinate i follows the
// prefixes of paths[i]. Each paths[i] must reach depth `level` - 1 and lie
// in family[i].
Node min_node_of_paths(const std::vector<LazyTree>& family, const std::vector<Node>& paths,
                       std::size_t level);
// {ε} ∪ {(pair(i,j))⌢σ : σ ∈ T_i, j < 2}
LazyTree combine(const std::vector<LazyTree>& family);
LazyTree complement(const LazyTree& T);
// Strictly decreasing sequences of elements of L. For lazy L, children are
// drawn from L.enumerate(width_budget); `descent`, if given, supplies an
// infinite descending sequence used as witness.
LazyTree t_of_order(const Order& L, std::size_t width_budget = 64,
                    std::function<std::vector<Nat>(std::size_t)> descent = {});
// Chains of nonempty nodes σ0 ⊊ ... ⊊ σk decorated with n_i < width. The
// label of an entry (σ, n) is n * |T| + index of σ in T's sorted node list,
// so siblings are ordered by decoration first.
LazyTree fatten(const FiniteTree& T, std::size_t width);
std::pair<Node, Nat> fatten_entry(const FiniteTree& T, Nat label);
Nat fatten_label(const FiniteTree& T, const Node& sigma, Nat n);

struct RankedTree {
  FiniteTree tree;
  Nat rank = 0;
  std::vector<Nat> rank_at;  // indexed like tree.nodes()
};

RankedTree rank(const FiniteTree& T);
RankedTree rank(const LazyTree& T, std::size_t node_cap = 200000);
// Rank of the root without materializing, sharing work across equal shape
// keys. BudgetExceeded for ill-founded trees (a key repeats along a branch)
// or when `visit_cap` distinct keys are exceeded.
Nat rank_value(const LazyTree& T, std::size_t visit_cap = 2000000);
Nat rank_value_at(const LazyTree& T, const Node& n, std::size_t visit_cap = 2000000);

// Level, KB and rank preserving injection of T into fatten(T, width).
std::map<Node, Node> kb_embed_fatten(const FiniteTree& T, std::size_t width);

std::vector<Node> witness_chain(const LazyTree& T, std::size_t d);

std::string serialize(const FiniteTree& T);
FiniteTree parse_tree(const std::string& text);

}  // namespace atrlab
