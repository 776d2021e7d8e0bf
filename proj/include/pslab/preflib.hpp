#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pslab/model.hpp"

namespace pslab {

struct PrefLibRow {
    std::uint64_t multiplicity = 1;
    std::vector<int> order;  // 0-based alternative indices, best first

    bool operator==(const PrefLibRow& o) const {
        return multiplicity == o.multiplicity && order == o.order;
    }
};

/// A strict-complete-orders (SOC) preference file. Only SOC is accepted;
/// tied or incomplete rows are rejected rather than repaired.
struct PrefLibDocument {
    int alternative_count = 0;
    std::vector<std::string> names;     // empty when the file declares none
    std::vector<std::string> metadata;  // '#' header lines, verbatim
    std::vector<PrefLibRow> rows;

    bool operator==(const PrefLibDocument& o) const {
        return alternative_count == o.alternative_count && names == o.names &&
               metadata == o.metadata && rows == o.rows;
    }
};

/// Parses the current PrefLib convention: '#'-prefixed metadata, then
/// "count: id,id,..." rows with 1-based alternative ids. With `legacy`, the
/// pre-2020 header layout (alternative count, id,name lines, voter summary
/// line, then "count,id,id,..." rows) is accepted and normalized.
/// Malformed lines are hard errors, never skipped.
PrefLibDocument parse_soc(const std::string& text, bool legacy = false);

/// Normative rendering: metadata verbatim, one "count: id,id,..." line per row.
std::string render_soc(const PrefLibDocument& doc);

/// Uniform random m-subset of alternatives, then n voters drawn with
/// replacement (weighted by multiplicity) and restricted to the subset with
/// relative ranking preserved. Houses are the chosen alternatives in
/// ascending id order.
Instance sample_instance(const PrefLibDocument& doc, int n, int m, std::uint64_t seed);

}  // namespace pslab
