#pragma once

#include <cstddef>
#include <string>

#include "gw/error.hpp"
#include "gw/numeric.hpp"

namespace gw {

/// Size limits applied by constructions, enumerations and checks. Each
/// rejection names the guard that fired.
struct Guards
{
  BigInt max_order = ipow(2, 256);
  std::size_t max_degree = 10'000;
  std::size_t max_regular_degree = 1'000'000;
  std::size_t oracle_bound = 5'000;
  std::size_t low_index_bound = 12;

  void check_degree(std::size_t degree, std::string const &what) const
  {
    if (degree > max_degree)
      throw GuardError("guard-degree", what + " needs degree " +
                                           std::to_string(degree) + " > " +
                                           std::to_string(max_degree));
  }

  void check_order(BigInt const &order, std::string const &what) const
  {
    if (order > max_order)
      throw GuardError("guard-order", what + " has order " + to_string(order) +
                                          " > " + to_string(max_order));
  }

  void check_oracle(BigInt const &order, std::string const &what) const
  {
    if (order > oracle_bound)
      throw GuardError("oracle-bound", what + " has order " +
                                           to_string(order) + " > " +
                                           std::to_string(oracle_bound));
  }
};

} // namespace gw
