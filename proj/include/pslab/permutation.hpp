#pragma once

#include <cstdint>
#include <vector>

#include "pslab/errors.hpp"

namespace pslab {

/// m! as a 64-bit value; throws BoundExceeded for m > 20.
std::uint64_t factorial(int m);

/// Lexicographic rank of a permutation of {0..m-1}.
std::uint64_t perm_rank(const std::vector<int>& perm);

/// Inverse of perm_rank.
std::vector<int> perm_unrank(std::uint64_t rank, int m);

/// In-place lexicographic successor; returns false after wrapping to sorted.
bool perm_next(std::vector<int>& perm);

}  // namespace pslab
