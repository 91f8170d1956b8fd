#include <gtest/gtest.h>

#include "atrlab/coding.hpp"
#include "atrlab/errors.hpp"
#include "oracles.hpp"

using namespace atrlab;

namespace {

const EnumerationLimits kWide{64, 1u << 22};

FiniteTree leaf() { return FiniteTree(); }
FiniteTree three() { return FiniteTree({{}, {0}, {1}}); }
FiniteTree edge() { return FiniteTree({{}, {0}}); }

std::set<Nat> join_of(const std::vector<std::set<Nat>>& cols) {
  std::set<Nat> out;
  for (Nat a = 0; a < cols.size(); ++a)
    for (Nat n : cols[a]) out.insert(cantor_pair(a, n));
  return out;
}

ForestCovers genuine_covers(const HierarchyForest& F) {
  ForestCovers out;
  for (const auto& [b, n] : F.tree_ids()) out[{b, n}] = koenig_cover(tree_graph(F.tree(b, n)));
  return out;
}

// The first `cap` covers in enumeration order.
std::vector<KoenigCover> some_covers(const FiniteTree& T, std::size_t cap) {
  std::vector<KoenigCover> out;
  for_each_koenig_cover(tree_graph(T), [&](const KoenigCover& K) {
    out.push_back(K);
    return out.size() < cap;
  }, kWide);
  return out;
}

// Good trees with their bits.
std::vector<std::pair<FiniteTree, bool>> good_corpus() {
  return {{leaf(), false},
          {three(), true},
          {materialize(combine({leaf_tree()})), true},
          {materialize(complement(three_node_tree())), false},
          {materialize(combine({leaf_tree(), leaf_tree()})), true}};
}

}  // namespace

TEST(DecodeBit, Examples) {
  EXPECT_FALSE(decode_bit(leaf(), {}));
  for (const KoenigCover& K : tree_covers(three())) EXPECT_TRUE(decode_bit(three(), K));
  EXPECT_TRUE(decode_bit(edge(), {{0}, {{0, 1}}}));
  EXPECT_FALSE(decode_bit(edge(), {{1}, {{0, 1}}}));
  EXPECT_THROW(decode_bit(edge(), {}), InvalidCover);
}

TEST(IsGood, Examples) {
  EXPECT_EQ(is_good(leaf()), false);
  EXPECT_EQ(is_good(three()), true);
  EXPECT_EQ(is_good(edge()), std::nullopt);
  EXPECT_EQ(is_good(materialize(combine({leaf_tree()}))), true);
}

TEST(TStar, Examples) {
  EXPECT_EQ(t_star(leaf(), {}), (std::set<Node>{{}}));
  EXPECT_EQ(t_star(three(), {{0}, {{0, 1}}}), (std::set<Node>{{}, {0}, {1}}));
  EXPECT_EQ(t_star(edge(), {{1}, {{0, 1}}}), (std::set<Node>{{}}));
}

TEST(TStar, RestrictionAndNesting) {
  std::vector<FiniteTree> corpus;
  for (const auto& [t, bit] : good_corpus()) corpus.push_back(t);
  corpus.push_back(full_binary_tree(2));
  corpus.push_back(FiniteTree({{}, {0}, {0, 0}, {0, 1}, {1}, {1, 0}, {1, 0, 0}}));
  for (const FiniteTree& T : corpus)
    for (const KoenigCover& K : tree_covers(T, kWide)) {
      auto star = t_star(T, K);
      EXPECT_TRUE(star.count(Node{}));
      for (const Node& t : star) {
        auto [S, KS] = restrict_cover(T, K, t);
        ASSERT_TRUE(is_koenig_cover(tree_graph(S), KS)) << to_string(t);
        for (const Node& s : t_star(S, KS)) EXPECT_TRUE(star.count(concat(t, s)));
      }
    }
}

TEST(SelectChild, Examples) {
  auto C1 = materialize(combine({leaf_tree()}));
  for (const KoenigCover& K : tree_covers(C1)) {
    auto picks = select_child(C1, K, {}, 1);
    ASSERT_EQ(picks.size(), 1u);
    EXPECT_EQ(!K.cover.count(0), K.cover.count(C1.index(picks[0])) > 0);
  }
  FiniteTree C0 = materialize(combine({}));
  EXPECT_TRUE(select_child(C0, {}, {}, 0).empty());
  EXPECT_THROW(select_child(C1, tree_covers(C1)[0], {}, 2), ShapeMismatch);
  EXPECT_THROW(select_child(C1, tree_covers(C1)[0], {7}, 1), std::invalid_argument);
}

TEST(SelectChild, RejectsNodesOutsideTStar) {
  auto T = materialize(combine({three_node_tree()}));
  bool saw = false;
  for (const KoenigCover& K : tree_covers(T, kWide)) {
    auto star = t_star(T, K);
    for (const Node& n : T.nodes())
      if (!star.count(n) && n.size() == 1) {
        EXPECT_THROW(select_child(T, K, n, 1), std::invalid_argument);
        saw = true;
      }
  }
  EXPECT_TRUE(saw);
}

TEST(Combine, TruthTableOverGoodTrees) {
  auto corpus = good_corpus();
  std::function<void(std::vector<std::size_t>&)> rec = [&](std::vector<std::size_t>& pick) {
    std::vector<LazyTree> fam;
    bool all_one = true;
    for (std::size_t k : pick) {
      fam.push_back(corpus[k].first.lazy());
      all_one = all_one && corpus[k].second;
    }
    FiniteTree T = materialize(combine(fam));
    for (const KoenigCover& K : tree_covers(T, kWide)) {
      EXPECT_EQ(decode_bit(T, K), !all_one);
      auto picks = select_child(T, K, {}, fam.size());
      bool all_covered = std::all_of(picks.begin(), picks.end(), [&](const Node& r) { return K.cover.count(T.index(r)) > 0; });
      EXPECT_EQ(!K.cover.count(0), all_covered);
      auto star = t_star(T, K);
      for (const Node& r : picks) EXPECT_TRUE(star.count(r));
    }
    if (pick.size() == 3) return;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      if (pick.size() == 2 && corpus[k].first.size() > 3) continue;
      pick.push_back(k);
      rec(pick);
      pick.pop_back();
    }
  };
  std::vector<std::size_t> pick;
  rec(pick);
}

TEST(BaseFamily, Examples) {
  auto F = base_family({1}, 2);
  ASSERT_EQ(F.trees.size(), 2u);
  EXPECT_EQ(F.trees[0], leaf());
  EXPECT_EQ(F.trees[1], three());
  EXPECT_TRUE(F.is_base());
  for (const FiniteTree& t : base_family({}, 4).trees) EXPECT_EQ(t.size(), 1u);
}

TEST(BaseFamily, EveryCoverDecodesTheSet) {
  for (Nat n = 0; n <= 4; ++n)
    for (const auto& A : oracle::subsets(4)) {
      auto F = base_family(A, n);
      std::set<Nat> expect;
      for (Nat a : A)
        if (a < n) expect.insert(a);
      std::vector<std::vector<KoenigCover>> per_tree;
      for (const FiniteTree& t : F.trees) per_tree.push_back(tree_covers(t));
      std::vector<KoenigCover> pick(F.trees.size());
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == pick.size()) {
          EXPECT_EQ(decode_set(F, pick), expect);
          return;
        }
        for (const KoenigCover& K : per_tree[k]) {
          pick[k] = K;
          rec(k + 1);
        }
      };
      rec(0);
    }
  EXPECT_THROW(decode_set(base_family({1}, 2), {}), std::invalid_argument);
}

TEST(JumpFamily, NeverHaltingAndImmediateHalt) {
  auto J = JumpOperator::suite({programs::loop_forever(), programs::halt_now()}, 20);
  auto F = jump_family({{0, base_family({}, 2)}}, J);
  EXPECT_EQ(F.trees[0], leaf());
  EXPECT_EQ(F.trees[1], materialize(combine({combine({})})));
  EXPECT_EQ(is_good(F.trees[1]), true);
}

TEST(JumpFamily, SingleQueryTracksTheQueriedTree) {
  auto J = JumpOperator::suite({programs::halt_on_one(0)}, 10);
  for (const auto& A : oracle::subsets(2)) {
    auto F = jump_family({{0, base_family(A, 2)}}, J);
    for (const KoenigCover& K : tree_covers(F.trees[0])) EXPECT_EQ(decode_bit(F.trees[0], K), A.count(0) > 0);
  }
}

TEST(JumpFamily, BoundedOverEmptyBase) {
  auto F = jump_family({{0, base_family({}, 4)}}, 4, 5);
  std::vector<KoenigCover> covers;
  for (const FiniteTree& t : F.trees) covers.push_back(koenig_cover(tree_graph(t)));
  EXPECT_EQ(decode_set(F, covers), apply_jump(JumpOperator::bounded(4, 5), {}));
  EXPECT_THROW(jump_family({}, JumpOperator::synthetic({})), std::invalid_argument);
}

TEST(JumpFamily, SuiteCodesTheJumpForEveryOracle) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  for (const auto& A0 : oracle::subsets(3))
    for (const std::set<Nat>& A1 : {std::set<Nat>{}, std::set<Nat>{2}}) {
      auto F = jump_family({{0, base_family(A0, 3)}, {1, base_family(A1, 3)}}, J);
      auto expect = apply_jump(J, join_of({A0, A1}));
      for (Nat e = 0; e < F.trees.size(); ++e) {
        auto bit = is_good(F.trees[e], kWide);
        ASSERT_TRUE(bit.has_value()) << e;
        EXPECT_EQ(*bit, expect.count(e) > 0) << e;
      }
    }
}

TEST(JumpFamily, NodeCap) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  EXPECT_THROW(jump_family({{0, base_family({0, 1, 2}, 3)}}, J, 3), BudgetExceeded);
}

TEST(ExtractR, StructureOfRSets) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  for (const auto& A : oracle::subsets(3)) {
    std::map<Nat, CodedFamily> prev{{0, base_family(A, 3)}, {1, base_family({2}, 3)}};
    auto F = jump_family(prev, J);
    for (Nat e = 0; e < F.trees.size(); ++e) {
      const FiniteTree& T = F.trees[e];
      for (const KoenigCover& K : some_covers(T, 2000)) {
        auto R = extract_r(T, K, F.records[e]);
        auto alt = alternative_r(T, K, F.records[e]);
        auto star = t_star(T, K);
        for (const auto& [key, nodes] : R)
          for (const Node& r : nodes) {
            EXPECT_TRUE(r.size() == 2 || r.size() == 3);
            EXPECT_TRUE(star.count(r));
            EXPECT_EQ(T.subtree_at(r), prev.at(key.first).trees.at(key.second));
            EXPECT_TRUE(alt[key].count(r));
          }
      }
    }
  }
}

TEST(ExtractR, EmptyForMachinesWithoutQueries) {
  auto J = JumpOperator::suite({programs::halt_now()}, 5);
  auto F = jump_family({{0, base_family({0}, 1)}}, J);
  for (const KoenigCover& K : tree_covers(F.trees[0])) EXPECT_TRUE(extract_r(F.trees[0], K, F.records[0]).empty());
}

TEST(Forest, SizeOneHasNoRSets) {
  auto F = build_forest(make_labeled(FiniteOrder::chain(1)), {0}, JumpOperator::bounded(3, 10));
  auto covers = genuine_covers(F);
  for (const auto& [id, K] : covers) EXPECT_TRUE(compute_r_ba(F, id.first, id.second, K).empty());
  for (const auto& [a, v] : check_consistency(F, covers)) EXPECT_TRUE(v.consistent);
}

TEST(Forest, OneStepRSetsMatchTheExtractor) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  auto F = build_forest(make_labeled(FiniteOrder::chain(2)), {0, 2}, J);
  for (Nat n = 0; n < F.columns.at(1).trees.size(); ++n) {
    const FiniteTree& T = F.tree(1, n);
    for (const KoenigCover& K : some_covers(T, 5000))
      EXPECT_EQ(compute_r_ba(F, 1, n, K), extract_r(T, K, F.columns.at(1).records.at(n)));
  }
}

TEST(Forest, DecodesTheHierarchy) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  for (const auto& A : oracle::subsets(3)) {
    auto L = make_labeled(FiniteOrder::chain(3));
    auto F = build_forest(L, A, J);
    auto H = build_hierarchy(L, A, J);
    EXPECT_EQ(decode_forest(F, genuine_covers(F)), H.columns);
  }
}

TEST(Consistency, GenuineCoversAreConsistent) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  for (const auto& A : oracle::subsets(3)) {
    auto F = build_forest(make_labeled(FiniteOrder::chain(2)), A, J);
    auto base = genuine_covers(F);
    for (const auto& [b, n] : F.tree_ids()) {
      for (const KoenigCover& K : some_covers(F.tree(b, n), 2000)) {
        auto covers = base;
        covers[{b, n}] = K;
        for (const auto& [a, v] : check_consistency(F, covers)) EXPECT_TRUE(v.consistent) << a;
      }
    }
  }
}

TEST(Consistency, FlippedRNodeIsDetected) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  std::size_t sites = 0;
  for (const auto& A : oracle::subsets(3)) {
    auto F = build_forest(make_labeled(FiniteOrder::chain(2)), A, J);
    auto covers = genuine_covers(F);
    EXPECT_THROW(check_consistency(F, {}), std::invalid_argument);
    for (Nat n = 0; n < F.columns.at(1).trees.size(); ++n) {
      const FiniteTree& T = F.tree(1, n);
      const KoenigCover& K = covers.at({1, n});
      for (const auto& [key, nodes] : compute_r_ba(F, 1, n, K))
        for (const Node& r : nodes) {
          auto broken = covers;
          broken[{1, n}] = atrlab::testing::flip_membership(K, T.index(r));
          EXPECT_THROW(check_consistency(F, broken), InvalidCover);
          auto verdicts = atrlab::testing::check_consistency_unvalidated(F, broken);
          ASSERT_FALSE(verdicts.at(0).consistent);
          EXPECT_EQ(*verdicts.at(0).witness, (ConsistencyWitness{1, n, key.second, r}));
          EXPECT_TRUE(verdicts.at(1).consistent);
          for (const auto& [k2, n2] : compute_r_ba(F, 1, n, broken.at({1, n})))
            for (const Node& s : n2) EXPECT_EQ(T.subtree_at(s), F.tree(k2.first, k2.second));
          ++sites;
        }
    }
  }
  EXPECT_GT(sites, 0u);
}
