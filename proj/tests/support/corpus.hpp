#pragma once

#include <map>
#include <set>
#include <vector>

#include "atrlab/orders.hpp"
#include "oracles.hpp"

namespace corpus {

// Every linear order on {0..n-1} for n in [1, max_size], each with every
// choice of which non-first elements are limits.
inline std::vector<atrlab::LabeledOrder> labeled_orders(std::size_t max_size) {
  using atrlab::Nat;
  std::vector<atrlab::LabeledOrder> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const auto& asc : oracle::all_orders(n)) {
      auto L = atrlab::FiniteOrder::from_ascending(asc);
      for (Nat mask = 0; mask < (Nat{1} << (n - 1)); ++mask) {
        std::set<Nat> succ;
        std::map<Nat, Nat> pred;
        for (std::size_t k = 1; k < n; ++k)
          if (!(mask >> (k - 1) & 1)) {
            succ.insert(asc[k]);
            pred[asc[k]] = asc[k - 1];
          }
        out.push_back(atrlab::LabeledOrder::with_labels(L, asc[0], succ, pred));
      }
    }
  }
  return out;
}

}  // namespace corpus
