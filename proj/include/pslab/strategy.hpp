#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pslab/ps.hpp"
#include "pslab/relations.hpp"

namespace pslab {

/// Budgets for the exhaustive searches. `max_enum_m` caps the m! report
/// enumerations inside a single best-response call; `profile_budget` caps
/// whole-space scans of (m!)^n profiles.
struct SearchLimits {
    int max_enum_m = 8;                           // 8! = 40320 reports
    std::uint64_t profile_budget = 10'000'000;    // (m!)^n cap
};

void check_enum_bound(int m, const SearchLimits& limits);
std::uint64_t checked_profile_space(const Instance& inst, const SearchLimits& limits);

/// Result of an exhaustive best-response search. `order` is the
/// lexicographically smallest maximizer (by house index sequence); the
/// search scans reports in lexicographic order and keeps the first best.
struct BestResponse {
    LinearOrder order;
    Rational value;             // expected utility of `row` (EU search)
    std::vector<Rational> row;  // the PS row the report earns the agent
    bool improves = false;      // strictly better than the truthful report
};

/// Maximizes expected utility over all m! reports of `agent`, holding the
/// others fixed at their instance preferences.
BestResponse eu_best_response(const Instance& inst, const UtilityProfile& utils, int agent,
                              const SearchLimits& limits = {});

/// DL-maximal row over all m! reports of `agent`, judged by the agent's true
/// order. The DL relation totally orders distinct rows, so the maximal row is
/// unique even when several reports achieve it.
BestResponse dl_best_response(const Instance& inst, int agent, const SearchLimits& limits = {});

enum class MoverPolicy { RoundRobin, FirstImproving };

struct DynamicsOutcome {
    enum class Kind { FixedPoint, Cycle, StepsExhausted };
    Kind kind = Kind::FixedPoint;
    std::vector<Profile> trajectory;  // trajectory[0] is the start profile
    std::size_t cycle_start = 0;
    std::size_t cycle_period = 0;
};

/// Best-response dynamics from the truthful profile: the mover adopts his
/// best response whenever it strictly improves him. Every visited profile is
/// hashed, so an exact repetition is reported as a cycle the moment it occurs.
DynamicsOutcome run_dynamics(const Instance& inst, const UtilityProfile* utils,
                             MoverPolicy policy, PreferenceRelation relation, int max_steps,
                             const SearchLimits& limits = {});

struct ReplayStep {
    int agent = 0;
    LinearOrder report;
    std::vector<Rational> eu_after;  // all agents' expected utilities after the step
    bool eu_is_best_response = false;
    bool eu_strictly_improves = false;
    bool dl_is_best_response = false;
    bool dl_strictly_improves = false;
};

struct ReplayResult {
    std::vector<Rational> eu_initial;
    std::vector<ReplayStep> steps;
    /// Index k when the final profile equals the profile after step k
    /// (0 = the initial profile); unset when all profiles are distinct.
    std::optional<std::size_t> repeats_step;
};

/// Replays a scripted deviation sequence, checking each step against the
/// full exhaustive search in both the EU and DL senses.
ReplayResult replay_path(const Instance& inst, const UtilityProfile& utils,
                         const std::vector<std::pair<int, LinearOrder>>& steps,
                         const SearchLimits& limits = {});

}  // namespace pslab
