#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pslab/equilibria.hpp"

namespace pslab {

/// Builds the two-agent threat profile (Q1, Q2): walk both true preference
/// lists from the top, each agent keeps his own favourite first and the
/// opponent's favourite immediately after, and both houses leave both lists.
/// Runs in O(m); `op_count`, when given, receives the loop operation count so
/// tests can pin the linear bound.
std::pair<LinearOrder, LinearOrder> threat_profile(const LinearOrder& order1,
                                                   const LinearOrder& order2,
                                                   std::uint64_t* op_count = nullptr);

struct ThreatCheckReport {
    bool same_assignment = false;  // PS(Q1,Q2) equals PS of the truthful orders
    bool dl_equilibrium = false;   // (Q1,Q2) survives exhaustive DL deviations
    int eu_profiles_checked = 0;
    int eu_failures = 0;           // sampled utility profiles where PNE failed
    bool all_hold() const { return same_assignment && dl_equilibrium && eu_failures == 0; }
};

/// Checks the three guarantees of the construction: identical assignment,
/// DL equilibrium, and EU equilibrium for each sampled consistent utility
/// profile. Failures are reported, not thrown.
ThreatCheckReport check_threat_guarantees(const LinearOrder& order1, const LinearOrder& order2,
                                          const std::vector<UtilityProfile>& sampled_utils,
                                          const SearchLimits& limits = {});

}  // namespace pslab
