#include "pslab/model.hpp"

#include <json.hpp>

namespace pslab {

bool LinearOrder::is_permutation_of(int m) const {
    if (static_cast<int>(ranking.size()) != m) return false;
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int h : ranking) {
        if (h < 0 || h >= m || seen[static_cast<std::size_t>(h)]) return false;
        seen[static_cast<std::size_t>(h)] = true;
    }
    return true;
}

std::string house_name(int index) { return "h" + std::to_string(index + 1); }

std::string LinearOrder::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (i) out += ",";
        out += house_name(ranking[i]);
    }
    return out;
}

std::string profile_to_string(const Profile& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += " | ";
        out += p[i].to_string();
    }
    return out;
}

void Instance::validate() const {
    if (n < 1 || m < 1) throw DomainError("instance: need n >= 1 and m >= 1");
    if (static_cast<int>(profile.size()) != n)
        throw DomainError("instance: profile size differs from n");
    for (int i = 0; i < n; ++i) {
        if (!profile[static_cast<std::size_t>(i)].is_permutation_of(m))
            throw DomainError("instance: agent " + std::to_string(i + 1) +
                              " does not rank exactly the m houses");
    }
}

std::vector<Rational> Assignment::row(int i) const {
    return {cells.begin() + static_cast<std::ptrdiff_t>(i) * m,
            cells.begin() + static_cast<std::ptrdiff_t>(i + 1) * m};
}

void Assignment::validate() const {
    const Rational zero;
    const Rational one(1);
    for (const Rational& c : cells) {
        if (c < zero || c > one) throw DomainError("assignment: entry outside [0, 1]");
    }
    for (int j = 0; j < m; ++j) {
        Rational col;
        for (int i = 0; i < n; ++i) col += at(i, j);
        if (col != one) throw DomainError("assignment: column " + std::to_string(j + 1) +
                                          " does not sum to 1");
    }
    const Rational share{BigInt(m), BigInt(n)};
    for (int i = 0; i < n; ++i) {
        Rational row_sum;
        for (int j = 0; j < m; ++j) row_sum += at(i, j);
        if (row_sum != share) throw DomainError("assignment: row " + std::to_string(i + 1) +
                                                " does not sum to m/n");
    }
}

std::vector<Rational> UtilityProfile::row(int i) const {
    return {cells.begin() + static_cast<std::ptrdiff_t>(i) * m,
            cells.begin() + static_cast<std::ptrdiff_t>(i + 1) * m};
}

bool UtilityProfile::consistent_with(const Instance& inst) const {
    if (n != inst.n || m != inst.m) return false;
    for (int i = 0; i < n; ++i) {
        const auto& rk = inst.profile[static_cast<std::size_t>(i)].ranking;
        for (int pos = 0; pos + 1 < m; ++pos) {
            if (!(at(i, rk[static_cast<std::size_t>(pos)]) >
                  at(i, rk[static_cast<std::size_t>(pos) + 1])))
                return false;
        }
        for (int j = 0; j < m; ++j) {
            if (at(i, j).sign() < 0) return false;
        }
    }
    return true;
}

UtilityProfile borda_utilities(const Instance& inst) {
    UtilityProfile u(inst.n, inst.m);
    for (int i = 0; i < inst.n; ++i) {
        const auto& rk = inst.profile[static_cast<std::size_t>(i)].ranking;
        for (int pos = 0; pos < inst.m; ++pos)
            u.at(i, rk[static_cast<std::size_t>(pos)]) = Rational(inst.m - 1 - pos);
    }
    return u;
}

std::string welfare_class_name(WelfareClass c) {
    switch (c) {
        case WelfareClass::Equal: return "equal";
        case WelfareClass::Increase: return "increase";
        case WelfareClass::Decrease: return "decrease";
    }
    return "?";
}

WelfareRecord WelfareReport::classify(std::uint64_t profile_id, const Rational& sw) const {
    WelfareRecord rec;
    rec.profile_id = profile_id;
    rec.social_welfare = sw;
    int cmp = sw.compare(sw_truthful);
    rec.cls = cmp == 0  ? WelfareClass::Equal
              : cmp > 0 ? WelfareClass::Increase
                        : WelfareClass::Decrease;
    if (cmp != 0) rec.pct_change = (sw - sw_truthful).abs() / sw_truthful * Rational(100);
    return rec;
}

Rational social_welfare(const Assignment& p, const UtilityProfile& u) {
    if (p.n != u.n || p.m != u.m) throw DomainError("social_welfare: dimension mismatch");
    Rational total;
    for (std::size_t k = 0; k < p.cells.size(); ++k) total += u.cells[k] * p.cells[k];
    return total;
}

std::string instance_to_json(const Instance& inst, const UtilityProfile* utils) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["m"] = inst.m;
    nlohmann::json prefs = nlohmann::json::array();
    for (const auto& order : inst.profile) prefs.push_back(order.ranking);
    j["preferences"] = std::move(prefs);
    if (utils) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < utils->n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jx = 0; jx < utils->m; ++jx) row.push_back(utils->at(i, jx).to_string());
            rows.push_back(std::move(row));
        }
        j["utilities"] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

ParsedInstance instance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance json: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("m") || !j.contains("preferences"))
        throw ParseError("instance json: need fields n, m, preferences");
    ParsedInstance out;
    try {
        out.instance.n = j.at("n").get<int>();
        out.instance.m = j.at("m").get<int>();
        for (const auto& row : j.at("preferences")) {
            LinearOrder order;
            for (const auto& v : row) order.ranking.push_back(v.get<int>());
            out.instance.profile.push_back(std::move(order));
        }
        if (j.contains("utilities")) {
            UtilityProfile u(out.instance.n, out.instance.m);
            const auto& rows = j.at("utilities");
            if (static_cast<int>(rows.size()) != out.instance.n)
                throw ParseError("instance json: utilities row count differs from n");
            for (int i = 0; i < out.instance.n; ++i) {
                const auto& row = rows[static_cast<std::size_t>(i)];
                if (static_cast<int>(row.size()) != out.instance.m)
                    throw ParseError("instance json: utilities column count differs from m");
                for (int jx = 0; jx < out.instance.m; ++jx)
                    u.at(i, jx) = Rational::parse(row[static_cast<std::size_t>(jx)].get<std::string>());
            }
            out.utilities = std::move(u);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("instance json: ") + e.what());
    }
    out.instance.validate();
    return out;
}

}  // namespace pslab
