#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pslab/strategy.hpp"

namespace pslab {

struct PneWitness {
    int agent = 0;
    LinearOrder report;          // the improving deviation
    std::string old_value;       // EU value or allocation row, rendered
    std::string new_value;
};

struct PneVerdict {
    bool is_pne = false;
    std::optional<PneWitness> witness;  // present exactly when is_pne is false
};

/// Exhaustive deviation check: all n*(m!-1) unilateral deviations, agents in
/// index order and reports in lexicographic order; the first strictly
/// improving deviation becomes the witness. Improvement is judged against the
/// agent's true preferences (EU needs `utils`; DL uses the instance orders).
PneVerdict verify_pne(const Instance& inst, PreferenceRelation relation,
                      const UtilityProfile* utils, const Profile& reported,
                      const SearchLimits& limits = {});

struct PneEntry {
    std::uint64_t profile_id = 0;  // lexicographic rank of the reported profile
    Profile profile;
    Assignment assignment;
    Rational social_welfare;
};

struct EnumerateResult {
    std::uint64_t profiles_scanned = 0;
    std::vector<PneEntry> equilibria;  // ascending profile_id
};

/// Scans all (m!)^n reported profiles and returns every pure Nash
/// equilibrium under the chosen relation. One eating run per profile; each
/// agent's per-fiber argmax set is accumulated so deviation checks never
/// rerun the rule. Workers split the leading agent's reports and merge
/// deterministically, so output is independent of `jobs`.
/// `utils` always feeds the social-welfare column; under EU it also defines
/// the equilibrium condition.
EnumerateResult enumerate_pne(const Instance& inst, PreferenceRelation relation,
                              const UtilityProfile& utils, int jobs = 1,
                              const SearchLimits& limits = {});

/// Streams every profile id in ascending order with its PNE verdict and
/// social welfare.
void scan_profiles(const Instance& inst, PreferenceRelation relation,
                   const UtilityProfile& utils, int jobs, const SearchLimits& limits,
                   const std::function<void(std::uint64_t, bool, const Rational&)>& sink);

std::uint64_t profile_rank(const Profile& p, int m);
Profile profile_unrank(std::uint64_t id, int n, int m);

struct GranularityResult {
    Rational g;                         // GCD of all finish-time gaps
    Rational quantum;                   // (1/n) * gcd(g, 1); divides g and 1
    std::uint64_t event_gap_count = 0;  // gaps folded into the GCD
};

/// Runs the eating rule on every reported profile and folds all consecutive
/// house-finish gaps (including the gap from time zero to the first finish)
/// into a rational GCD.
GranularityResult compute_granularity(const Instance& inst, const SearchLimits& limits = {});

struct SpneResult {
    Profile profile;            // extracted from the equilibrium path
    PneVerdict verdict;         // verify_pne of the extracted profile
    Assignment path_allocation; // total consumption along the equilibrium path
    Rational quantum;           // per-sub-stage consumption
    std::uint64_t depth = 0;            // total sub-stages, m / quantum
    std::uint64_t states_expanded = 0;  // memoized game states
};

/// Discretizes the eating run into sub-stages of `quantum` units, one agent
/// eating per sub-stage in cyclic order and staying on his house until it is
/// exhausted, then solves the resulting perfect-information game by backward
/// induction. Leaves are compared as full final allocations; ties at a choice
/// node keep the mover's more-preferred house. The equilibrium path is read
/// back out as a preference profile (first-eaten order, with never-eaten
/// houses appended in ascending index order).
SpneResult spne_construct(const Instance& inst, PreferenceRelation relation,
                          const UtilityProfile* utils,
                          std::optional<Rational> quantum_override = std::nullopt,
                          const SearchLimits& limits = {});

}  // namespace pslab
