#include "pslab/cultures.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pslab/permutation.hpp"

namespace pslab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("rng: zero bound");
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t Rng::dyadic_bits() { return next() >> 11; }

Rational Rng::unit_dyadic() {
    return Rational(BigInt(dyadic_bits()), BigInt(std::uint64_t{1} << 53));
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t s = index;
    std::uint64_t mixed = splitmix64(s);
    std::uint64_t t = root ^ mixed;
    return splitmix64(t);
}

CultureModel culture_from_name(const std::string& name) {
    if (name == "ic") return CultureModel::IC;
    if (name == "sp-ic" || name == "spic") return CultureModel::SPIC;
    if (name == "mallows") return CultureModel::Mallows;
    if (name == "urn") return CultureModel::Urn;
    throw DomainError("unknown culture model: " + name);
}

std::string culture_name(CultureModel model) {
    switch (model) {
        case CultureModel::IC: return "ic";
        case CultureModel::SPIC: return "sp-ic";
        case CultureModel::Mallows: return "mallows";
        case CultureModel::Urn: return "urn";
    }
    return "?";
}

namespace {

void check_nm(int n, int m) {
    if (n < 1 || m < 1) throw DomainError("culture: need n >= 1 and m >= 1");
}

LinearOrder uniform_order(int m, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i) {
        std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return LinearOrder{std::move(perm)};
}

}  // namespace

Instance gen_ic(int n, int m, std::uint64_t seed) {
    check_nm(n, m);
    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    for (int i = 0; i < n; ++i) inst.profile.push_back(uniform_order(m, rng));
    return inst;
}

Instance gen_sp_ic(int n, int m, std::uint64_t seed) {
    check_nm(n, m);
    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    for (int i = 0; i < n; ++i) {
        // Build worst-to-best: each flip takes the left or right end of the
        // remaining axis interval; the last survivor is the peak.
        int lo = 0;
        int hi = m - 1;
        std::vector<int> worst_first;
        worst_first.reserve(static_cast<std::size_t>(m));
        while (lo < hi) {
            if (rng.next() & 1) {
                worst_first.push_back(hi--);
            } else {
                worst_first.push_back(lo++);
            }
        }
        worst_first.push_back(lo);
        std::reverse(worst_first.begin(), worst_first.end());
        inst.profile.push_back(LinearOrder{std::move(worst_first)});
    }
    return inst;
}

Instance gen_mallows(int n, int m, const Rational& phi, const std::vector<int>& reference,
                     std::uint64_t seed) {
    check_nm(n, m);
    if (phi.sign() <= 0 || phi > Rational(1))
        throw DomainError("mallows: phi must lie in (0, 1]");
    std::vector<int> ref = reference;
    if (ref.empty()) {
        ref.resize(static_cast<std::size_t>(m));
        std::iota(ref.begin(), ref.end(), 0);
    }
    if (!LinearOrder{ref}.is_permutation_of(m))
        throw DomainError("mallows: reference must rank the m houses");

    // Integer insertion weights: with phi = p/q, inserting the k-th item at
    // position j (1-indexed from the top) weighs p^(k-j) * q^(j-1).
    const BigInt p = phi.num();
    const BigInt q = phi.den();
    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    for (int i = 0; i < n; ++i) {
        std::vector<int> current;
        current.reserve(static_cast<std::size_t>(m));
        for (int k = 1; k <= m; ++k) {
            std::vector<BigInt> weights(static_cast<std::size_t>(k));
            BigInt pj(1);
            for (int j = k; j >= 1; --j) {
                weights[static_cast<std::size_t>(j - 1)] = pj;
                pj *= p;
            }
            BigInt total(0);
            BigInt qj(1);
            for (int j = 1; j <= k; ++j) {
                weights[static_cast<std::size_t>(j - 1)] *= qj;
                qj *= q;
                total += weights[static_cast<std::size_t>(j - 1)];
            }
            if (!total.fits_uint64_abs())
                throw BoundExceeded("mallows: insertion weights overflow 64 bits; "
                                    "use a coarser phi or fewer houses");
            std::uint64_t pick = rng.below(total.to_uint64_abs());
            BigInt acc(0);
            int chosen = k;
            for (int j = 1; j <= k; ++j) {
                acc += weights[static_cast<std::size_t>(j - 1)];
                if (BigInt(pick) < acc) {
                    chosen = j;
                    break;
                }
            }
            current.insert(current.begin() + (chosen - 1), ref[static_cast<std::size_t>(k - 1)]);
        }
        inst.profile.push_back(LinearOrder{std::move(current)});
    }
    return inst;
}

Instance gen_urn(int n, int m, std::uint64_t seed) {
    check_nm(n, m);
    const std::uint64_t fact = factorial(m);
    // Calibrated so P(second order == first) = (1 + a) / (m! + a) = 1/2.
    const std::uint64_t a = fact >= 2 ? fact - 2 : 0;
    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    std::map<std::uint64_t, std::uint64_t> extra;  // rank -> accumulated bonus weight
    std::uint64_t total = fact;
    for (int i = 0; i < n; ++i) {
        std::uint64_t pick = rng.below(total);
        std::uint64_t rank;
        if (pick < fact) {
            rank = pick;
        } else {
            pick -= fact;
            auto it = extra.begin();
            while (pick >= it->second) {
                pick -= it->second;
                ++it;
            }
            rank = it->first;
        }
        inst.profile.push_back(LinearOrder{perm_unrank(rank, m)});
        extra[rank] += a;
        if (total > ~std::uint64_t{0} - a)
            throw BoundExceeded("urn: accumulated weights overflow 64 bits");
        total += a;
    }
    return inst;
}

Instance generate(const CultureConfig& config) {
    switch (config.model) {
        case CultureModel::IC: return gen_ic(config.n, config.m, config.seed);
        case CultureModel::SPIC: return gen_sp_ic(config.n, config.m, config.seed);
        case CultureModel::Mallows:
            return gen_mallows(config.n, config.m, config.mallows_phi, config.mallows_reference,
                               config.seed);
        case CultureModel::Urn: return gen_urn(config.n, config.m, config.seed);
    }
    throw DomainError("culture: unknown model");
}

std::vector<Rational> gen_random_utilities(const LinearOrder& order, std::uint64_t seed) {
    const int m = order.size();
    Rng rng(seed);
    std::vector<std::uint64_t> draws(static_cast<std::size_t>(m));
    for (;;) {
        for (auto& d : draws) d = rng.dyadic_bits();
        std::vector<std::uint64_t> sorted = draws;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
        // Equal draws: the whole list is regenerated.
    }
    std::sort(draws.begin(), draws.end(), std::greater<>());
    // value_j = draw_j / 2^53 scaled by m / sum = m * draw_j / sum_of_draws.
    BigInt sum(0);
    for (std::uint64_t d : draws) sum += BigInt(d);
    std::vector<Rational> row(static_cast<std::size_t>(m));
    for (int pos = 0; pos < m; ++pos) {
        row[static_cast<std::size_t>(order.ranking[static_cast<std::size_t>(pos)])] =
            Rational(BigInt(m) * BigInt(draws[static_cast<std::size_t>(pos)]), sum);
    }
    return row;
}

UtilityProfile gen_random_utility_profile(const Instance& inst, std::uint64_t seed) {
    UtilityProfile u(inst.n, inst.m);
    for (int i = 0; i < inst.n; ++i) {
        std::vector<Rational> row = gen_random_utilities(
            inst.profile[static_cast<std::size_t>(i)], derive_seed(seed, static_cast<std::uint64_t>(i)));
        for (int j = 0; j < inst.m; ++j) u.at(i, j) = std::move(row[static_cast<std::size_t>(j)]);
    }
    return u;
}

int kendall_tau(const std::vector<int>& a, const std::vector<int>& b) {
    const int m = static_cast<int>(a.size());
    std::vector<int> pos_b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pos_b[static_cast<std::size_t>(b[static_cast<std::size_t>(i)])] = i;
    int inversions = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (pos_b[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] >
                pos_b[static_cast<std::size_t>(a[static_cast<std::size_t>(j)])])
                ++inversions;
        }
    }
    return inversions;
}

}  // namespace pslab
