#include "pslab/permutation.hpp"

#include <algorithm>

namespace pslab {

std::uint64_t factorial(int m) {
    if (m < 0 || m > 20) throw BoundExceeded("factorial: m out of 64-bit range");
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t perm_rank(const std::vector<int>& perm) {
    const int m = static_cast<int>(perm.size());
    std::uint64_t rank = 0;
    std::uint64_t f = factorial(m);
    std::uint64_t used = 0;  // bitmask of consumed values
    for (int i = 0; i < m; ++i) {
        f /= static_cast<std::uint64_t>(m - i);
        int v = perm[i];
        int smaller = v - __builtin_popcountll(used & ((1ull << v) - 1));
        rank += static_cast<std::uint64_t>(smaller) * f;
        used |= 1ull << v;
    }
    return rank;
}

std::vector<int> perm_unrank(std::uint64_t rank, int m) {
    std::vector<int> pool(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m));
    std::uint64_t f = factorial(m);
    for (int i = 0; i < m; ++i) {
        f /= static_cast<std::uint64_t>(m - i);
        std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

bool perm_next(std::vector<int>& perm) {
    return std::next_permutation(perm.begin(), perm.end());
}

}  // namespace pslab
