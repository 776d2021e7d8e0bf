#pragma once

#include <vector>

#include "pslab/model.hpp"

namespace pslab {

/// Three-valued comparison so ties stay explicit downstream.
enum class Comparison { FirstPreferred, SecondPreferred, Indifferent };

/// Downward-lexicographic comparison of two allocation rows: scan the houses
/// in preference order; the first house where the rows differ decides.
Comparison dl_compare(const std::vector<Rational>& row_p,
                      const std::vector<Rational>& row_q,
                      const LinearOrder& order);

/// Exact expected utility of a row.
Rational eu_value(const std::vector<Rational>& row, const std::vector<Rational>& agent_utils);

Comparison eu_compare(const std::vector<Rational>& row_p,
                      const std::vector<Rational>& row_q,
                      const std::vector<Rational>& agent_utils);

enum class PreferenceRelation { EU, DL };

}  // namespace pslab
