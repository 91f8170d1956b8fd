#pragma once

#include <cstdint>
#include <utility>

namespace atrlab {

using Nat = std::uint64_t;

namespace detail {
__extension__ typedef unsigned __int128 Wide;
}

// Cantor pairing (x+y)(x+y+1)/2 + y. Throws std::overflow_error when the
// result does not fit in 64 bits.
Nat cantor_pair(Nat x, Nat y);
std::pair<Nat, Nat> cantor_unpair(Nat z);

}  // namespace atrlab
