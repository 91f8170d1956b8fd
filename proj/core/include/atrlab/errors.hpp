#pragma once

#include <stdexcept>
#include <string>

namespace atrlab {

// A size or step budget was exceeded; nothing was truncated silently.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search was refused because the input is above its bound.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntheticMiss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCover : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoWitness : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace atrlab
