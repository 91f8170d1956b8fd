#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atrlab/pairing.hpp"
#include "atrlab/trees.hpp"

namespace atrlab {

using Edge = std::pair<Nat, Nat>;

inline Edge normalized(Edge e) { return e.first <= e.second ? e : Edge{e.second, e.first}; }

// A finite simple graph with an optional X side. Edges keep the order they
// were given in; that order is the enumeration order used by repairs.
struct BipartiteGraph {
  std::vector<Nat> vertices;  // ascending, distinct
  std::vector<Edge> edges;
  std::optional<std::set<Nat>> x_side;

  // Throws std::invalid_argument on loops, duplicate edges, unknown
  // endpoints, or a given X side that some edge does not cross.
  static BipartiteGraph make(std::vector<Nat> vertices, std::vector<Edge> edges,
                             std::optional<std::set<Nat>> x_side = std::nullopt);

  std::size_t index(Nat v) const;
  bool has_vertex(Nat v) const;
  std::vector<std::vector<std::size_t>> adjacency() const;  // by vertex index, ascending
  std::vector<Nat> neighbors(Nat v) const;
  std::size_t size() const { return vertices.size(); }
};

struct KoenigCover {
  std::set<Nat> cover;
  std::set<Edge> matching;  // normalized edges

  auto operator<=>(const KoenigCover&) const = default;
};

struct Bipartition {
  std::set<Nat> x;
  std::set<Nat> y;
};

struct BipartiteCheck {
  std::optional<Bipartition> partition;
  std::vector<Nat> odd_cycle;  // closed walk v0 ... vk with an edge vk-v0

  bool bipartite() const { return partition.has_value(); }
};

class NotBipartite : public std::invalid_argument {
 public:
  explicit NotBipartite(std::vector<Nat> cycle);
  const std::vector<Nat>& cycle() const { return cycle_; }

 private:
  std::vector<Nat> cycle_;
};

BipartiteCheck check_bipartite(const BipartiteGraph& G);
// The given X side, or the 2-colouring that puts the least vertex of each
// component in X. Throws NotBipartite.
Bipartition partition_of(const BipartiteGraph& G);

// Reason the pair fails the cover invariants, or nullopt when it passes.
std::optional<std::string> cover_defect(const BipartiteGraph& G, const KoenigCover& K);
bool is_koenig_cover(const BipartiteGraph& G, const KoenigCover& K);
void validate_cover(const BipartiteGraph& G, const KoenigCover& K);  // throws InvalidCover

// Maximum matching by augmenting paths; cover from alternating reachability.
KoenigCover koenig_cover(const BipartiteGraph& G);

struct EnumerationLimits {
  std::size_t vertex_bound = 16;
  std::size_t result_cap = 1u << 22;
};

// Calls `visit` for every pair satisfying the cover invariants until it
// returns false. Returns the number of pairs visited.
std::size_t for_each_koenig_cover(const BipartiteGraph& G,
                                  const std::function<bool(const KoenigCover&)>& visit,
                                  const EnumerationLimits& limits = {});
// Sorted. TooLarge above the vertex bound or the result cap.
std::vector<KoenigCover> enumerate_koenig_covers(const BipartiteGraph& G,
                                                 const EnumerationLimits& limits = {});

std::set<Nat> demand_set(const BipartiteGraph& G, const std::set<Nat>& A);

struct SimpsonTrace {
  std::set<Nat> a_star;
  std::set<Edge> f_star;
  std::set<Nat> x_star;
  std::set<Nat> y_star;
  std::vector<Edge> removed_pairs;  // (x, y) in removal order
};

KoenigCover simpson_cover(const BipartiteGraph& G, std::size_t vertex_bound = 10,
                          SimpsonTrace* trace = nullptr);

BipartiteGraph bipartite_repair(const BipartiteGraph& G);
// For each edge in order: true when admitting it would close an odd cycle
// among the edges admitted so far.
std::vector<bool> odd_cycle_flags(const BipartiteGraph& G);

// Vertex i is node i of T; X holds the nodes of even depth.
BipartiteGraph tree_graph(const FiniteTree& T);

std::string to_string(const KoenigCover& K);

}  // namespace atrlab
