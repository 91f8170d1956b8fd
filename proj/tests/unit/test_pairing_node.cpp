#include <gtest/gtest.h>

#include <stdexcept>

#include "atrlab/node.hpp"
#include "atrlab/pairing.hpp"
#include "oracles.hpp"

using namespace atrlab;

TEST(Pairing, SmallValues) {
  EXPECT_EQ(cantor_pair(0, 0), 0u);
  EXPECT_EQ(cantor_pair(1, 0), 1u);
  EXPECT_EQ(cantor_pair(0, 1), 2u);
  EXPECT_EQ(cantor_pair(2, 0), 3u);
  EXPECT_EQ(cantor_pair(1, 1), 4u);
  EXPECT_EQ(cantor_pair(0, 2), 5u);
  EXPECT_EQ(cantor_pair(1, 2), 8u);
}

TEST(Pairing, RoundTripOnAGrid) {
  for (Nat x = 0; x < 200; ++x)
    for (Nat y = 0; y < 200; ++y) {
      Nat z = cantor_pair(x, y);
      EXPECT_EQ(z, (x + y) * (x + y + 1) / 2 + y);
      EXPECT_EQ(cantor_unpair(z), std::make_pair(x, y));
    }
}

TEST(Pairing, UnpairIsOntoAnInitialSegment) {
  for (Nat z = 0; z < 5000; ++z) {
    auto [x, y] = cantor_unpair(z);
    EXPECT_EQ(cantor_pair(x, y), z);
  }
}

TEST(Pairing, LargeArgumentsRoundTrip) {
  Nat x = 3'000'000'000ull, y = 1'234'567ull;
  EXPECT_EQ(cantor_unpair(cantor_pair(x, y)), std::make_pair(x, y));
  EXPECT_THROW(cantor_pair(Nat{1} << 40, Nat{1} << 40), std::overflow_error);
}

TEST(Node, PrefixRelations) {
  EXPECT_TRUE(is_prefix({}, {1, 2}));
  EXPECT_TRUE(is_prefix({1}, {1, 2}));
  EXPECT_TRUE(is_prefix({1, 2}, {1, 2}));
  EXPECT_FALSE(is_proper_prefix({1, 2}, {1, 2}));
  EXPECT_FALSE(is_prefix({2}, {1, 2}));
  EXPECT_EQ(concat({1}, {2, 3}), (Node{1, 2, 3}));
  EXPECT_EQ(child({1}, 5), (Node{1, 5}));
  EXPECT_EQ(parent({1, 5}), (Node{1}));
}

TEST(Node, KbMatchesDefinition) {
  std::vector<Node> nodes{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {2}, {0, 0, 3}};
  for (const Node& a : nodes)
    for (const Node& b : nodes) EXPECT_EQ(kb_less(a, b), oracle::kb_before(a, b));
}

TEST(Node, TextRoundTrip) {
  EXPECT_EQ(to_string(Node{}), "");
  EXPECT_EQ(to_string(Node{3, 0, 12}), "3,0,12");
  EXPECT_EQ(parse_node("3,0,12"), (Node{3, 0, 12}));
  EXPECT_EQ(parse_node("(3, 0)"), (Node{3, 0}));
  EXPECT_EQ(parse_node(""), Node{});
}
