#include "atrlab/pairing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace atrlab {

Nat cantor_pair(Nat x, Nat y) {
  using detail::Wide;
  Wide s = static_cast<Wide>(x) + y;
  Wide v = s * (s + 1) / 2 + y;
  if (v > std::numeric_limits<Nat>::max()) {
    throw std::overflow_error("cantor_pair: result exceeds 64 bits");
  }
  return static_cast<Nat>(v);
}

std::pair<Nat, Nat> cantor_unpair(Nat z) {
  using detail::Wide;
  // w is the largest integer with w(w+1)/2 <= z
  auto tri = [](Wide w) { return w * (w + 1) / 2; };
  Wide w = static_cast<Wide>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (w > 0 && tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  Nat y = static_cast<Nat>(z - tri(w));
  Nat x = static_cast<Nat>(w - y);
  return {x, y};
}

}  // namespace atrlab
