#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pslab/model.hpp"

namespace pslab {

/// Deterministic, portable randomness: xoshiro256** seeded through splitmix64.
/// Never backed by platform RNGs, so identical seeds reproduce identical
/// draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform in [0, bound) without modulo bias (Lemire rejection).
    std::uint64_t below(std::uint64_t bound);

    /// 53-bit dyadic fraction k/2^53 in [0, 1) as an exact rational.
    Rational unit_dyadic();

    /// 53-bit numerator of the dyadic draw.
    std::uint64_t dyadic_bits();

private:
    std::uint64_t s_[4];
};

/// Child-stream derivation: splitmix64 applied to root ^ mix(index). Distinct
/// indices give independent streams, so samples can generate concurrently.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

enum class CultureModel { IC, SPIC, Mallows, Urn };

CultureModel culture_from_name(const std::string& name);
std::string culture_name(CultureModel model);

struct CultureConfig {
    CultureModel model = CultureModel::IC;
    int n = 1;
    int m = 1;
    std::uint64_t seed = 0;
    Rational mallows_phi = Rational(BigInt(1), BigInt(2));  // dispersion in (0, 1]
    std::vector<int> mallows_reference;                     // defaults to identity
};

/// Every agent draws an independent uniformly random order (Fisher-Yates).
Instance gen_ic(int n, int m, std::uint64_t seed);

/// Uniform over the 2^(m-1) orders single-peaked on the axis h1 < ... < hm:
/// m-1 fair coin flips pick the least-preferred remaining axis endpoint.
Instance gen_sp_ic(int n, int m, std::uint64_t seed);

/// Repeated-insertion sampling of the Mallows distribution:
/// P(order) proportional to phi^(kendall-tau distance to the reference).
/// phi = 1 degenerates to impartial culture.
Instance gen_mallows(int n, int m, const Rational& phi, const std::vector<int>& reference,
                     std::uint64_t seed);

/// Polya urn over all m! orders, every order starting at weight 1 and each
/// drawn order gaining m! - 2 so that P(second draw == first) == 1/2.
Instance gen_urn(int n, int m, std::uint64_t seed);

Instance generate(const CultureConfig& config);

/// Random utility model: m distinct uniform dyadic draws, sorted strictly
/// decreasing, laid along `order`, scaled to sum exactly m. Equal draws force
/// a full redraw. Exact rationals end to end.
std::vector<Rational> gen_random_utilities(const LinearOrder& order, std::uint64_t seed);

/// One utility row per agent, seeds derived per agent index.
UtilityProfile gen_random_utility_profile(const Instance& inst, std::uint64_t seed);

int kendall_tau(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace pslab
