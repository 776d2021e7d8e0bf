#include "pslab/preflib.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pslab/cultures.hpp"

namespace pslab {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::uint64_t parse_count(const std::string& text, const std::string& what) {
    std::string t = strip(text);
    if (t.empty()) throw ParseError("soc: empty " + what);
    for (char c : t)
        if (c < '0' || c > '9') throw ParseError("soc: non-integer " + what + ": '" + t + "'");
    try {
        return std::stoull(t);
    } catch (const std::exception&) {
        throw ParseError("soc: " + what + " out of range: '" + t + "'");
    }
}

// Parses "id,id,..." into a complete strict order; ids are 1-based.
// alternative_count of 0 means "infer from this row".
std::vector<int> parse_order(const std::string& text, int& alternative_count, int line_no) {
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (text.find('{') != std::string::npos || text.find('}') != std::string::npos)
        throw ParseError("soc: ties are not allowed, strict orders only" + where);
    std::vector<std::string> parts = split(text, ',');
    std::vector<int> order;
    order.reserve(parts.size());
    for (const std::string& part : parts) {
        std::string t = strip(part);
        if (t.empty()) throw ParseError("soc: empty alternative id" + where);
        std::uint64_t v = parse_count(t, "alternative id");
        if (v == 0) throw ParseError("soc: alternative ids are 1-based" + where);
        order.push_back(static_cast<int>(v - 1));
    }
    if (alternative_count == 0) alternative_count = static_cast<int>(order.size());
    std::vector<bool> seen(static_cast<std::size_t>(alternative_count), false);
    for (int v : order) {
        if (v >= alternative_count)
            throw ParseError("soc: unknown alternative id " + std::to_string(v + 1) + where);
        if (seen[static_cast<std::size_t>(v)])
            throw ParseError("soc: duplicate alternative id " + std::to_string(v + 1) + where);
        seen[static_cast<std::size_t>(v)] = true;
    }
    if (static_cast<int>(order.size()) != alternative_count)
        throw ParseError("soc: incomplete order, expected " + std::to_string(alternative_count) +
                         " alternatives" + where);
    return order;
}

PrefLibDocument parse_modern(const std::string& text) {
    PrefLibDocument doc;
    std::istringstream in(text);
    std::string line;
    int declared = 0;
    int line_no = 0;
    std::vector<std::pair<int, std::string>> named;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = strip(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            doc.metadata.push_back(t);
            std::string body = strip(t.substr(1));
            std::size_t colon = body.find(':');
            if (colon == std::string::npos) continue;
            std::string key = strip(body.substr(0, colon));
            std::string value = strip(body.substr(colon + 1));
            if (key == "NUMBER ALTERNATIVES") {
                declared = static_cast<int>(parse_count(value, "alternative count"));
            } else if (key == "DATA TYPE") {
                if (value != "soc")
                    throw ParseError("soc: unsupported data type '" + value +
                                     "'; only strict complete orders are handled");
            } else if (key.rfind("ALTERNATIVE NAME ", 0) == 0) {
                int idx = static_cast<int>(parse_count(key.substr(17), "alternative name index"));
                named.emplace_back(idx, value);
            }
            continue;
        }
        std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw ParseError("soc: expected 'count: order' (line " + std::to_string(line_no) + ")");
        PrefLibRow row;
        row.multiplicity = parse_count(t.substr(0, colon), "multiplicity");
        if (row.multiplicity == 0)
            throw ParseError("soc: multiplicity must be at least 1 (line " +
                             std::to_string(line_no) + ")");
        int count = declared;
        row.order = parse_order(t.substr(colon + 1), count, line_no);
        if (declared == 0) declared = count;
        doc.rows.push_back(std::move(row));
    }
    doc.alternative_count = declared;
    if (!named.empty()) {
        doc.names.assign(static_cast<std::size_t>(doc.alternative_count), "");
        for (auto& [idx, name] : named) {
            if (idx < 1 || idx > doc.alternative_count)
                throw ParseError("soc: alternative name index out of range");
            doc.names[static_cast<std::size_t>(idx - 1)] = name;
        }
    }
    return doc;
}

PrefLibDocument parse_legacy(const std::string& text) {
    PrefLibDocument doc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            out = strip(line);
            if (!out.empty()) return true;
        }
        return false;
    };

    std::string t;
    if (!next_line(t)) throw ParseError("soc: empty legacy file");
    doc.alternative_count = static_cast<int>(parse_count(t, "alternative count"));
    for (int i = 1; i <= doc.alternative_count; ++i) {
        if (!next_line(t)) throw ParseError("soc: missing alternative name line");
        std::size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw ParseError("soc: expected 'id,name' (line " + std::to_string(line_no) + ")");
        int id = static_cast<int>(parse_count(t.substr(0, comma), "alternative id"));
        if (id != i)
            throw ParseError("soc: alternative names must appear in id order (line " +
                             std::to_string(line_no) + ")");
        doc.names.push_back(strip(t.substr(comma + 1)));
    }
    if (!next_line(t)) throw ParseError("soc: missing voter summary line");
    std::vector<std::string> summary = split(t, ',');
    if (summary.size() != 3) throw ParseError("soc: voter summary needs three fields");
    std::uint64_t declared_voters = parse_count(summary[0], "voter count");
    std::uint64_t declared_unique = parse_count(summary[2], "unique order count");

    std::uint64_t voters = 0;
    while (next_line(t)) {
        std::size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw ParseError("soc: expected 'count,order' (line " + std::to_string(line_no) + ")");
        PrefLibRow row;
        row.multiplicity = parse_count(t.substr(0, comma), "multiplicity");
        if (row.multiplicity == 0)
            throw ParseError("soc: multiplicity must be at least 1 (line " +
                             std::to_string(line_no) + ")");
        int count = doc.alternative_count;
        row.order = parse_order(t.substr(comma + 1), count, line_no);
        voters += row.multiplicity;
        doc.rows.push_back(std::move(row));
    }
    if (voters != declared_voters)
        throw ParseError("soc: voter summary declares " + std::to_string(declared_voters) +
                         " voters but rows sum to " + std::to_string(voters));
    if (declared_unique != doc.rows.size())
        throw ParseError("soc: voter summary declares " + std::to_string(declared_unique) +
                         " unique orders but file has " + std::to_string(doc.rows.size()));

    // Normalize the header into the current convention so rendering and
    // re-parsing fix on the same document.
    doc.metadata.push_back("# DATA TYPE: soc");
    doc.metadata.push_back("# NUMBER ALTERNATIVES: " + std::to_string(doc.alternative_count));
    for (int i = 0; i < doc.alternative_count; ++i)
        doc.metadata.push_back("# ALTERNATIVE NAME " + std::to_string(i + 1) + ": " +
                               doc.names[static_cast<std::size_t>(i)]);
    return doc;
}

}  // namespace

PrefLibDocument parse_soc(const std::string& text, bool legacy) {
    return legacy ? parse_legacy(text) : parse_modern(text);
}

std::string render_soc(const PrefLibDocument& doc) {
    std::string out;
    for (const std::string& meta : doc.metadata) {
        out += meta;
        out += "\n";
    }
    for (const PrefLibRow& row : doc.rows) {
        out += std::to_string(row.multiplicity);
        out += ": ";
        for (std::size_t i = 0; i < row.order.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(row.order[i] + 1);
        }
        out += "\n";
    }
    return out;
}

Instance sample_instance(const PrefLibDocument& doc, int n, int m, std::uint64_t seed) {
    if (doc.rows.empty()) throw DomainError("sample: document has no preference rows");
    if (n < 1) throw DomainError("sample: need n >= 1");
    if (m < 1 || m > doc.alternative_count)
        throw DomainError("sample: m must lie in [1, alternative count]");

    Rng rng(seed);

    // Uniform m-subset via partial Fisher-Yates, then sorted so house j is
    // the j-th smallest chosen alternative.
    std::vector<int> pool(static_cast<std::size_t>(doc.alternative_count));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < m; ++i) {
        std::uint64_t j = static_cast<std::uint64_t>(i) +
                          rng.below(static_cast<std::uint64_t>(doc.alternative_count - i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> chosen(pool.begin(), pool.begin() + m);
    std::sort(chosen.begin(), chosen.end());
    std::vector<int> house_of(static_cast<std::size_t>(doc.alternative_count), -1);
    for (int h = 0; h < m; ++h) house_of[static_cast<std::size_t>(chosen[static_cast<std::size_t>(h)])] = h;

    std::uint64_t total_weight = 0;
    for (const PrefLibRow& row : doc.rows) total_weight += row.multiplicity;

    Instance inst;
    inst.n = n;
    inst.m = m;
    for (int i = 0; i < n; ++i) {
        std::uint64_t pick = rng.below(total_weight);
        std::size_t r = 0;
        while (pick >= doc.rows[r].multiplicity) {
            pick -= doc.rows[r].multiplicity;
            ++r;
        }
        LinearOrder order;
        order.ranking.reserve(static_cast<std::size_t>(m));
        for (int alt : doc.rows[r].order) {
            int h = house_of[static_cast<std::size_t>(alt)];
            if (h >= 0) order.ranking.push_back(h);
        }
        inst.profile.push_back(std::move(order));
    }
    return inst;
}

}  // namespace pslab
