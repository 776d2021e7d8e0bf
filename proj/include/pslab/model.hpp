#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pslab/errors.hpp"
#include "pslab/rational.hpp"

namespace pslab {

/// Strict ranking over houses, most-preferred first. Houses are 0-indexed
/// internally; rendering uses 1-indexed names h1..hm.
struct LinearOrder {
    std::vector<int> ranking;

    LinearOrder() = default;
    explicit LinearOrder(std::vector<int> r) : ranking(std::move(r)) {}

    int size() const { return static_cast<int>(ranking.size()); }
    bool is_permutation_of(int m) const;

    bool operator==(const LinearOrder& o) const = default;
    auto operator<=>(const LinearOrder& o) const = default;

    std::string to_string() const;  // "h2,h1,h3"
};

using Profile = std::vector<LinearOrder>;

struct Instance {
    int n = 0;
    int m = 0;
    Profile profile;

    /// Throws DomainError unless n,m >= 1 and every order ranks exactly the
    /// m houses. Equal n and m is not required.
    void validate() const;
};

std::string house_name(int index);            // 0 -> "h1"
std::string profile_to_string(const Profile& p);

/// Row-major n-by-m matrix of exact fractions; the output of the eating run.
struct Assignment {
    int n = 0;
    int m = 0;
    std::vector<Rational> cells;

    Assignment() = default;
    Assignment(int n_, int m_) : n(n_), m(m_), cells(static_cast<std::size_t>(n_) * m_) {}

    Rational& at(int i, int j) { return cells[static_cast<std::size_t>(i) * m + j]; }
    const Rational& at(int i, int j) const { return cells[static_cast<std::size_t>(i) * m + j]; }

    std::vector<Rational> row(int i) const;

    bool operator==(const Assignment& o) const {
        return n == o.n && m == o.m && cells == o.cells;
    }

    /// Column sums exactly 1, row sums exactly m/n, entries within [0, 1].
    /// Throws DomainError naming the first violated condition.
    void validate() const;
};

/// Cardinal utilities u_i(h_j), row-major.
struct UtilityProfile {
    int n = 0;
    int m = 0;
    std::vector<Rational> cells;

    UtilityProfile() = default;
    UtilityProfile(int n_, int m_) : n(n_), m(m_), cells(static_cast<std::size_t>(n_) * m_) {}

    Rational& at(int i, int j) { return cells[static_cast<std::size_t>(i) * m + j]; }
    const Rational& at(int i, int j) const { return cells[static_cast<std::size_t>(i) * m + j]; }

    std::vector<Rational> row(int i) const;

    /// True when every agent's utilities strictly decrease along his ranking.
    /// A validation step rather than a construction invariant, so tests can
    /// build inconsistent profiles on purpose.
    bool consistent_with(const Instance& inst) const;
};

/// Borda utilities: m-1 for the top house down to 0 for the last.
UtilityProfile borda_utilities(const Instance& inst);

enum class WelfareClass { Equal, Increase, Decrease };

std::string welfare_class_name(WelfareClass c);

struct WelfareRecord {
    std::uint64_t profile_id = 0;
    Rational social_welfare;
    WelfareClass cls = WelfareClass::Equal;
    Rational pct_change;  // |sw - sw_truthful| / sw_truthful * 100
};

struct WelfareReport {
    Rational sw_truthful;
    std::vector<WelfareRecord> records;

    /// Classifies by exact comparison against sw_truthful.
    WelfareRecord classify(std::uint64_t profile_id, const Rational& sw) const;
};

/// Sum over agents and houses of u_i(h_j) * p(i)(h_j), exact.
/// Checks dimensions only; utility consistency is not enforced here.
Rational social_welfare(const Assignment& p, const UtilityProfile& u);

/// JSON interchange: {"n":…, "m":…, "preferences":[[…]], "utilities":[["p/q",…]]}.
std::string instance_to_json(const Instance& inst, const UtilityProfile* utils = nullptr);
struct ParsedInstance {
    Instance instance;
    std::optional<UtilityProfile> utilities;
};
ParsedInstance instance_from_json(const std::string& text);

}  // namespace pslab
