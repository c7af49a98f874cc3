#pragma once

#include <stdexcept>
#include <string>

namespace taut {

/// Malformed gwi text or an ill-formed graph handed to an operation.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needs relations for an ambient (g, n, k) that the registry
/// cannot generate.
class InductiveDataMissing : public std::runtime_error {
 public:
  InductiveDataMissing(int g, int n, int k)
      : std::runtime_error("inductive data missing for (g,n,k)=(" + std::to_string(g) + "," +
                           std::to_string(n) + "," + std::to_string(k) + ")"),
        genus(g),
        points(n),
        codim(k) {}

  int genus;
  int points;
  int codim;
};

}  // namespace taut
