#include "pslab/threat.hpp"

namespace pslab {

std::pair<LinearOrder, LinearOrder> threat_profile(const LinearOrder& order1,
                                                   const LinearOrder& order2,
                                                   std::uint64_t* op_count) {
    const int m = order1.size();
    if (order2.size() != m || !order1.is_permutation_of(m) || !order2.is_permutation_of(m))
        throw DomainError("threat_profile: orders must rank the same m houses");

    std::uint64_t ops = 0;
    std::vector<bool> deleted(static_cast<std::size_t>(m), false);
    std::size_t c1 = 0;
    std::size_t c2 = 0;
    LinearOrder q1;
    LinearOrder q2;
    q1.ranking.reserve(static_cast<std::size_t>(m));
    q2.ranking.reserve(static_cast<std::size_t>(m));

    while (static_cast<int>(q1.ranking.size()) < m) {
        while (c1 < order1.ranking.size() &&
               deleted[static_cast<std::size_t>(order1.ranking[c1])]) {
            ++c1;
            ++ops;
        }
        while (c2 < order2.ranking.size() &&
               deleted[static_cast<std::size_t>(order2.ranking[c2])]) {
            ++c2;
            ++ops;
        }
        int h = order1.ranking[c1];
        int hp = order2.ranking[c2];
        q1.ranking.push_back(h);
        q2.ranking.push_back(hp);
        deleted[static_cast<std::size_t>(h)] = true;
        deleted[static_cast<std::size_t>(hp)] = true;
        if (h != hp) {
            q1.ranking.push_back(hp);
            q2.ranking.push_back(h);
        }
        ++ops;
    }
    if (op_count) *op_count = ops;
    return {std::move(q1), std::move(q2)};
}

ThreatCheckReport check_threat_guarantees(const LinearOrder& order1, const LinearOrder& order2,
                                          const std::vector<UtilityProfile>& sampled_utils,
                                          const SearchLimits& limits) {
    auto [q1, q2] = threat_profile(order1, order2);
    const int m = order1.size();

    Instance truthful;
    truthful.n = 2;
    truthful.m = m;
    truthful.profile = {order1, order2};
    truthful.validate();

    Profile threat = {q1, q2};

    ThreatCheckReport report;
    PsEngine engine(2, m);
    Assignment truthful_assignment = engine.run(truthful.profile);
    report.same_assignment = engine.run(threat) == truthful_assignment;
    report.dl_equilibrium =
        verify_pne(truthful, PreferenceRelation::DL, nullptr, threat, limits).is_pne;
    for (const UtilityProfile& u : sampled_utils) {
        ++report.eu_profiles_checked;
        if (!verify_pne(truthful, PreferenceRelation::EU, &u, threat, limits).is_pne)
            ++report.eu_failures;
    }
    return report;
}

}  // namespace pslab
