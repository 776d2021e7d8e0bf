#include "pslab/relations.hpp"

namespace pslab {

Comparison dl_compare(const std::vector<Rational>& row_p,
                      const std::vector<Rational>& row_q,
                      const LinearOrder& order) {
    if (row_p.size() != row_q.size() ||
        order.ranking.size() != row_p.size())
        throw DomainError("dl_compare: length mismatch");
    for (int h : order.ranking) {
        int cmp = row_p[static_cast<std::size_t>(h)].compare(row_q[static_cast<std::size_t>(h)]);
        if (cmp > 0) return Comparison::FirstPreferred;
        if (cmp < 0) return Comparison::SecondPreferred;
    }
    return Comparison::Indifferent;
}

Rational eu_value(const std::vector<Rational>& row, const std::vector<Rational>& agent_utils) {
    if (row.size() != agent_utils.size()) throw DomainError("eu_value: length mismatch");
    Rational total;
    for (std::size_t j = 0; j < row.size(); ++j) total += row[j] * agent_utils[j];
    return total;
}

Comparison eu_compare(const std::vector<Rational>& row_p,
                      const std::vector<Rational>& row_q,
                      const std::vector<Rational>& agent_utils) {
    int cmp = eu_value(row_p, agent_utils).compare(eu_value(row_q, agent_utils));
    if (cmp > 0) return Comparison::FirstPreferred;
    if (cmp < 0) return Comparison::SecondPreferred;
    return Comparison::Indifferent;
}

}  // namespace pslab
