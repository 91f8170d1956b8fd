#include <gtest/gtest.h>

#include <random>

#include "atrlab/errors.hpp"
#include "atrlab/trees.hpp"
#include "oracles.hpp"

using namespace atrlab;

namespace {

std::set<Node> node_set(const FiniteTree& T) { return {T.nodes().begin(), T.nodes().end()}; }

FiniteTree tree_of(std::vector<Node> nodes) { return FiniteTree(std::move(nodes)); }

void expect_valid_chain(const LazyTree& T, std::size_t d) {
  auto chain = witness_chain(T, d);
  ASSERT_EQ(chain.size(), d);
  for (std::size_t i = 0; i < d; ++i) {
    EXPECT_TRUE(T.contains(chain[i]));
    for (std::size_t k = 0; k <= chain[i].size(); ++k) EXPECT_TRUE(T.contains(Node(chain[i].begin(), chain[i].begin() + k)));
    if (i) EXPECT_TRUE(is_proper_prefix(chain[i - 1], chain[i]));
  }
}

}  // namespace

TEST(FiniteTree, Validation) {
  EXPECT_THROW(tree_of({{0}}), std::invalid_argument);
  EXPECT_THROW(tree_of({{}, {0, 1}}), std::invalid_argument);
  FiniteTree T = tree_of({{}, {0}, {0, 1}, {2}});
  EXPECT_EQ(T.size(), 4u);
  EXPECT_EQ(T.height(), 2u);
  EXPECT_EQ(T.subtree_at({0}).nodes(), (std::vector<Node>{{}, {1}}));
  EXPECT_EQ(*T.parent_index(T.index({0, 1})), T.index({0}));
}

TEST(TreeMax, Examples) {
  auto T = materialize(tree_max({leaf_tree(), leaf_tree()}));
  EXPECT_EQ(T.nodes(), (std::vector<Node>{{}, {0}, {1}}));
  EXPECT_EQ(materialize(tree_max({})).size(), 1u);
  auto W = tree_max({zero_path(), leaf_tree()});
  expect_valid_chain(W, 7);
  auto W2 = tree_max({leaf_tree(), zero_path()});
  expect_valid_chain(W2, 10);
}

TEST(TreeMin, SingleLeafHasRankOne) {
  auto T = materialize(tree_min({leaf_tree()}));
  EXPECT_EQ(T.size(), 2u);
  EXPECT_EQ(rank(T).rank, 1u);
}

TEST(TreeMin, EmptyFamilyIsTheLeaf) {
  EXPECT_EQ(materialize(tree_min({})).size(), 1u);
  auto V = tree_min_vacuous({});
  EXPECT_TRUE(V.has_witness());
  expect_valid_chain(V, 12);
}

TEST(TreeMin, TwoWitnessedTreesGiveAWitness) {
  auto M = tree_min({zero_path(), complement(zero_path())});
  ASSERT_TRUE(M.has_witness());
  expect_valid_chain(M, 10);
}

TEST(TreeMin, AnyFiniteMemberMakesItFinite) {
  auto M = tree_min({zero_path(), tree_of({{}, {0}, {0, 0}}).lazy()});
  EXPECT_FALSE(M.has_witness());
  EXPECT_LE(rank_value(M), 4u);
}

TEST(Combine, Examples) {
  EXPECT_EQ(materialize(combine({})).size(), 1u);
  auto one = materialize(combine({leaf_tree()}));
  EXPECT_EQ(one.nodes(), (std::vector<Node>{{}, {cantor_pair(0, 0)}, {cantor_pair(0, 1)}}));
  EXPECT_EQ(materialize(combine({leaf_tree(), leaf_tree()})).size(), 5u);
}

TEST(Combine, NodeCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LazyTree> fam;
    std::size_t total = 0;
    std::size_t k = trial % 4;
    for (std::size_t i = 0; i < k; ++i) {
      FiniteTree t = tree_of(oracle::random_tree(rng, 10));
      total += t.size();
      fam.push_back(t.lazy());
    }
    EXPECT_EQ(materialize(combine(fam)).size(), 1 + 2 * total);
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(materialize(complement(leaf_tree())), materialize(combine({leaf_tree()})));
  EXPECT_EQ(materialize(complement(three_node_tree())).size(), 7u);
  auto C = complement(zero_path());
  ASSERT_TRUE(C.has_witness());
  expect_valid_chain(C, 9);
}

TEST(TOfOrder, Examples) {
  auto T2 = materialize(t_of_order(FiniteOrder::chain(2)));
  EXPECT_EQ(T2.nodes(), (std::vector<Node>{{}, {0}, {1}, {1, 0}}));
  EXPECT_EQ(rank(T2).rank, 2u);
  EXPECT_EQ(rank(materialize(t_of_order(FiniteOrder::chain(3)))).rank, 3u);
  EXPECT_EQ(materialize(t_of_order(FiniteOrder())).size(), 1u);
}

TEST(TOfOrder, RankIsTheLengthOfTheOrder) {
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& asc : oracle::all_orders(n)) {
      auto T = materialize(t_of_order(FiniteOrder::from_ascending(asc)));
      EXPECT_EQ(rank(T).rank, n);
      EXPECT_EQ(T.size(), std::size_t{1} << n);
      if (n > 3) break;
    }
}

TEST(Fatten, Examples) {
  EXPECT_EQ(materialize(fatten(FiniteTree(), 3)).size(), 1u);
  FiniteTree P = tree_of({{}, {0}});
  auto F = materialize(fatten(P, 2));
  EXPECT_EQ(F.size(), 3u);
  EXPECT_EQ(rank(F).rank, 1u);
  EXPECT_EQ(fatten_entry(P, F.node(1)[0]), std::make_pair(Node{0}, Nat{0}));
  EXPECT_EQ(fatten_entry(P, F.node(2)[0]), std::make_pair(Node{0}, Nat{1}));
  EXPECT_EQ(fatten_label(P, {0}, 1), F.node(2)[0]);
  EXPECT_THROW(fatten(P, 0), std::invalid_argument);
}

TEST(Fatten, RankInvarianceAcrossWidths) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    FiniteTree T = tree_of(oracle::random_tree(rng, 15));
    Nat r = oracle::height(node_set(T));
    for (std::size_t w : {1, 2, 3}) EXPECT_EQ(rank_value(fatten(T, w)), r);
  }
}

TEST(Fatten, MaterializedRankMatchesOnSmallTrees) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteTree T = tree_of(oracle::random_tree(rng, 7));
    auto F = materialize(fatten(T, 2));
    EXPECT_EQ(oracle::height(node_set(F)), oracle::height(node_set(T)));
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(FiniteTree()).rank, 0u);
  EXPECT_EQ(rank(tree_of({{}, {0}, {1}})).rank, 1u);
  EXPECT_EQ(rank(t_of_order(FiniteOrder::chain(3))).rank, 3u);
  EXPECT_THROW(rank_value(zero_path()), BudgetExceeded);
}

TEST(Rank, AgreesWithReferenceHeight) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteTree T = tree_of(oracle::random_tree(rng, 25));
    RankedTree R = rank(T);
    auto nodes = node_set(T);
    EXPECT_EQ(R.rank, oracle::height(nodes));
    EXPECT_EQ(rank_value(T.lazy()), R.rank);
    for (std::size_t i = 0; i < T.size(); ++i) EXPECT_EQ(R.rank_at[i], oracle::height(nodes, T.node(i)));
  }
}

TEST(KbEmbedFatten, Examples) {
  auto f0 = kb_embed_fatten(FiniteTree(), 2);
  EXPECT_EQ(f0, (std::map<Node, Node>{{{}, {}}}));
  FiniteTree T = tree_of({{}, {0}, {1}});
  auto f = kb_embed_fatten(T, 2);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_NE(f.at({0}), f.at({1}));
  EXPECT_TRUE(kb_less(f.at({0}), f.at({1})));
  auto F = fatten(T, 2);
  EXPECT_EQ(rank_value_at(F, f.at({0})), 0u);
  EXPECT_EQ(rank_value_at(F, f.at({1})), 0u);
}

TEST(KbEmbedFatten, PreservesLevelKbAndRank) {
  std::mt19937_64 rng(6);
  std::vector<FiniteTree> corpus{full_binary_tree(2)};
  for (int trial = 0; trial < 150; ++trial) corpus.push_back(tree_of(oracle::random_tree(rng, 20)));
  for (const FiniteTree& T : corpus) {
    for (std::size_t w : {1, 2, 4}) {
      auto f = kb_embed_fatten(T, w);
      auto F = fatten(T, w);
      RankedTree R = rank(T);
      ASSERT_EQ(f.size(), T.size());
      for (std::size_t i = 0; i < T.size(); ++i) {
        const Node& s = T.node(i);
        const Node& fs = f.at(s);
        EXPECT_TRUE(F.contains(fs));
        EXPECT_EQ(fs.size(), s.size());
        EXPECT_EQ(rank_value_at(F, fs), R.rank_at[i]);
        for (std::size_t j = 0; j < T.size(); ++j) EXPECT_EQ(kb_less(s, T.node(j)), kb_less(fs, f.at(T.node(j))));
      }
    }
  }
}

TEST(WitnessChain, ZeroPath) {
  auto chain = witness_chain(zero_path(), 5);
  EXPECT_EQ(chain, (std::vector<Node>{{0}, {0, 0}, {0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
  EXPECT_THROW(witness_chain(three_node_tree(), 3), NoWitness);
}

TEST(WitnessChain, DepthFifty) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    LazyTree t = tree_of(oracle::random_tree(rng, 12)).lazy();
    expect_valid_chain(tree_max({t, zero_path()}), 50);
    expect_valid_chain(tree_min({zero_path(), tree_max({t, complement(zero_path())})}), 50);
    expect_valid_chain(combine({t, zero_path()}), 50);
  }
}

TEST(MaxMinLaws, Randomized) {
  std::mt19937_64 rng(9);
  Nat worst_excess = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t k = 1 + trial % 3;
    std::vector<LazyTree> fam;
    std::vector<Nat> ranks;
    for (std::size_t i = 0; i < k; ++i) {
      FiniteTree t = tree_of(oracle::random_tree(rng, 25));
      ranks.push_back(oracle::height(node_set(t)));
      fam.push_back(t.lazy());
    }
    EXPECT_EQ(rank_value(tree_max(fam)), 1 + *std::max_element(ranks.begin(), ranks.end()));
    Nat bound = ranks[0];
    for (std::size_t i = 0; i < k; ++i) bound = std::min(bound, ranks[i] + i);
    Nat r = rank_value(tree_min(fam));
    if (r > bound) worst_excess = std::max(worst_excess, r - bound);
    EXPECT_LE(r, bound + 1);
  }
  RecordProperty("min_rank_excess", static_cast<int>(worst_excess));
}

TEST(Serialize, RoundTrip) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteTree T = tree_of(oracle::random_tree(rng, 20));
    EXPECT_EQ(parse_tree(serialize(T)), T);
  }
  EXPECT_THROW(parse_tree("tree 2\n\n0,1\n"), ParseError);
}

TEST(Materialize, RespectsNodeCap) {
  EXPECT_THROW(materialize(zero_path(), 100), BudgetExceeded);
  EXPECT_THROW(materialize(t_of_order(FiniteOrder::chain(12)), 100), BudgetExceeded);
}
