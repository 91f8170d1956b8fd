#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "atrlab/hierarchy.hpp"
#include "atrlab/koenig.hpp"
#include "atrlab/machine.hpp"
#include "atrlab/trees.hpp"

namespace atrlab {

// Covers of finite trees name vertices by node index (see tree_graph).
bool decode_bit(const FiniteTree& T, const KoenigCover& cov);
// Good trees give the bit every cover decodes to; nullopt marks a bad tree.
std::optional<bool> is_good(const FiniteTree& T, const EnumerationLimits& limits = {});
std::vector<KoenigCover> tree_covers(const FiniteTree& T, const EnumerationLimits& limits = {});

std::set<Node> t_star(const FiniteTree& T, const KoenigCover& cov);
// Subtree above r with the cover restricted to it, renamed to the subtree's indices.
std::pair<FiniteTree, KoenigCover> restrict_cover(const FiniteTree& T, const KoenigCover& cov,
                                                  const Node& r);

// For each i < family_size, one of r⌢pair(i,0), r⌢pair(i,1) chosen from the
// matching edges at r and whether r is covered.
std::vector<Node> select_child(const FiniteTree& host, const KoenigCover& cov, const Node& r,
                               std::size_t family_size);

// How one jump tree was assembled: for each minimal halting pair, the
// queried addresses in ascending order, each with its bit and the family
// tree it names (pair(a, j) -> tree j of column a) when there is one.
struct JumpRecord {
  struct Entry {
    Nat address = 0;
    bool bit = false;
    std::optional<std::pair<Nat, Nat>> source;
  };
  struct Branch {
    HaltingPair pair;
    std::vector<Entry> entries;
  };
  std::vector<Branch> branches;
};

struct CodedFamily {
  std::vector<FiniteTree> trees;
  std::vector<JumpRecord> records;  // empty for base families

  bool is_base() const { return records.empty(); }
  static Nat address(Nat column, Nat index) { return cantor_pair(column, index); }
};

// (column, index) -> nodes of the host tree
using RSet = std::map<std::pair<Nat, Nat>, std::set<Node>>;

CodedFamily base_family(const Column& A, Nat n_max);

// Tree n runs the jump's slot-n machine; oracle address pair(a, j) refers
// to tree j of prev[a], and to {ε} when there is no such tree.
CodedFamily jump_family(const std::map<Nat, CodedFamily>& prev, const JumpOperator& J,
                        std::size_t node_cap = 5000);
CodedFamily jump_family(const std::map<Nat, CodedFamily>& prev, Nat e_max, Nat s_max,
                        std::size_t node_cap = 5000);

// R-sets of one jump tree copy rooted at `base` in the host.
RSet extract_r(const FiniteTree& host, const KoenigCover& cov, const JumpRecord& record,
               const Node& base = {});
// Every root of a copy of a family tree in the copy at `base` that lies in T*.
RSet alternative_r(const FiniteTree& host, const KoenigCover& cov, const JumpRecord& record,
                   const Node& base = {});

Column decode_set(const CodedFamily& family, const std::vector<KoenigCover>& covers);

// Trees of every column of a labeled order, built along the order.
struct HierarchyForest {
  LabeledOrder order;
  JumpOperator jump;
  std::map<Nat, CodedFamily> columns;

  const FiniteTree& tree(Nat b, Nat n) const { return columns.at(b).trees.at(n); }
  std::vector<std::pair<Nat, Nat>> tree_ids() const;  // (b, n) in order
};

HierarchyForest build_forest(const LabeledOrder& L, const Column& A, const JumpOperator& J,
                             std::size_t node_cap = 5000);

using ForestCovers = std::map<std::pair<Nat, Nat>, KoenigCover>;

Columns decode_forest(const HierarchyForest& F, const ForestCovers& covers);

// All r reachable from the root of T^b_n by chains of R-sets through
// strictly decreasing columns; keys are (a, i) with a <_L b.
RSet compute_r_ba(const HierarchyForest& F, Nat b, Nat n, const KoenigCover& cov);

struct ConsistencyWitness {
  Nat b = 0;
  Nat n = 0;
  Nat i = 0;
  Node r;

  bool operator==(const ConsistencyWitness&) const = default;
};

struct ConsistencyVerdict {
  bool consistent = true;
  std::optional<ConsistencyWitness> witness;
};

std::map<Nat, ConsistencyVerdict> check_consistency(const HierarchyForest& F, const ForestCovers& covers);

namespace testing {
// Skips cover validation so that deliberately broken covers can be examined.
std::map<Nat, ConsistencyVerdict> check_consistency_unvalidated(const HierarchyForest& F,
                                                                const ForestCovers& covers);
KoenigCover flip_membership(const KoenigCover& cov, Nat vertex);
}  // namespace testing

}  // namespace atrlab
