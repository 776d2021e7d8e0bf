#include "pslab/strategy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pslab/permutation.hpp"

namespace pslab {

void check_enum_bound(int m, const SearchLimits& limits) {
    if (m > limits.max_enum_m)
        throw BoundExceeded("best response enumeration: m = " + std::to_string(m) +
                            " exceeds bound " + std::to_string(limits.max_enum_m));
}

std::uint64_t checked_profile_space(const Instance& inst, const SearchLimits& limits) {
    std::uint64_t fact = factorial(inst.m);
    std::uint64_t total = 1;
    for (int i = 0; i < inst.n; ++i) {
        if (total > limits.profile_budget / fact)
            throw BoundExceeded("profile space (m!)^n exceeds budget " +
                                std::to_string(limits.profile_budget));
        total *= fact;
    }
    return total;
}

BestResponse eu_best_response(const Instance& inst, const UtilityProfile& utils, int agent,
                              const SearchLimits& limits) {
    inst.validate();
    check_enum_bound(inst.m, limits);
    std::vector<Rational> my_utils = utils.row(agent);

    PsEngine engine(inst.n, inst.m);
    Profile work = inst.profile;
    const LinearOrder truthful = inst.profile[static_cast<std::size_t>(agent)];

    std::vector<int> report(static_cast<std::size_t>(inst.m));
    std::iota(report.begin(), report.end(), 0);

    BestResponse best;
    Rational truthful_value;
    bool first = true;
    do {
        work[static_cast<std::size_t>(agent)].ranking = report;
        const Assignment& a = engine.run(work);
        std::vector<Rational> row = a.row(agent);
        Rational value = eu_value(row, my_utils);
        if (report == truthful.ranking) truthful_value = value;
        if (first || value > best.value) {
            best.order.ranking = report;
            best.value = value;
            best.row = std::move(row);
            first = false;
        }
    } while (perm_next(report));
    best.improves = best.value > truthful_value;
    return best;
}

BestResponse dl_best_response(const Instance& inst, int agent, const SearchLimits& limits) {
    inst.validate();
    check_enum_bound(inst.m, limits);
    const LinearOrder truthful = inst.profile[static_cast<std::size_t>(agent)];

    PsEngine engine(inst.n, inst.m);
    Profile work = inst.profile;

    std::vector<int> report(static_cast<std::size_t>(inst.m));
    std::iota(report.begin(), report.end(), 0);

    BestResponse best;
    std::vector<Rational> truthful_row;
    bool first = true;
    do {
        work[static_cast<std::size_t>(agent)].ranking = report;
        const Assignment& a = engine.run(work);
        std::vector<Rational> row = a.row(agent);
        if (report == truthful.ranking) truthful_row = row;
        if (first || dl_compare(row, best.row, truthful) == Comparison::FirstPreferred) {
            best.order.ranking = report;
            best.row = std::move(row);
            first = false;
        }
    } while (perm_next(report));
    best.improves = dl_compare(best.row, truthful_row, truthful) == Comparison::FirstPreferred;
    return best;
}

DynamicsOutcome run_dynamics(const Instance& inst, const UtilityProfile* utils,
                             MoverPolicy policy, PreferenceRelation relation, int max_steps,
                             const SearchLimits& limits) {
    inst.validate();
    check_enum_bound(inst.m, limits);
    if (relation == PreferenceRelation::EU && utils == nullptr)
        throw DomainError("dynamics: EU relation needs a utility profile");

    DynamicsOutcome out;
    Instance current = inst;
    out.trajectory.push_back(current.profile);
    std::map<Profile, std::size_t> seen;
    seen.emplace(current.profile, 0);

    auto best_for = [&](int agent) {
        return relation == PreferenceRelation::EU ? eu_best_response(current, *utils, agent, limits)
                                                  : dl_best_response(current, agent, limits);
    };

    int rr_next = 0;
    for (int step = 0; step < max_steps; ++step) {
        int mover = -1;
        BestResponse br;
        if (policy == MoverPolicy::RoundRobin) {
            for (int tried = 0; tried < current.n; ++tried) {
                int candidate = (rr_next + tried) % current.n;
                BestResponse c = best_for(candidate);
                if (c.improves) {
                    mover = candidate;
                    br = std::move(c);
                    rr_next = (candidate + 1) % current.n;
                    break;
                }
            }
        } else {
            for (int candidate = 0; candidate < current.n; ++candidate) {
                BestResponse c = best_for(candidate);
                if (c.improves) {
                    mover = candidate;
                    br = std::move(c);
                    break;
                }
            }
        }
        if (mover < 0) {
            out.kind = DynamicsOutcome::Kind::FixedPoint;
            return out;
        }
        current.profile[static_cast<std::size_t>(mover)] = br.order;
        out.trajectory.push_back(current.profile);
        auto [it, inserted] = seen.emplace(current.profile, out.trajectory.size() - 1);
        if (!inserted) {
            out.kind = DynamicsOutcome::Kind::Cycle;
            out.cycle_start = it->second;
            out.cycle_period = out.trajectory.size() - 1 - it->second;
            return out;
        }
    }
    out.kind = DynamicsOutcome::Kind::StepsExhausted;
    return out;
}

ReplayResult replay_path(const Instance& inst, const UtilityProfile& utils,
                         const std::vector<std::pair<int, LinearOrder>>& steps,
                         const SearchLimits& limits) {
    inst.validate();
    check_enum_bound(inst.m, limits);
    for (const auto& [agent, report] : steps) {
        if (agent < 0 || agent >= inst.n) throw DomainError("replay: agent out of range");
        if (!report.is_permutation_of(inst.m)) throw DomainError("replay: malformed report");
    }

    ReplayResult out;
    Instance current = inst;
    PsEngine engine(inst.n, inst.m);

    auto eu_vector = [&](const Profile& p) {
        const Assignment& a = engine.run(p);
        std::vector<Rational> eu;
        eu.reserve(static_cast<std::size_t>(inst.n));
        for (int i = 0; i < inst.n; ++i) eu.push_back(eu_value(a.row(i), utils.row(i)));
        return eu;
    };

    out.eu_initial = eu_vector(current.profile);
    std::vector<Profile> visited{current.profile};

    for (const auto& [agent, report] : steps) {
        const Assignment& before = engine.run(current.profile);
        std::vector<Rational> old_row = before.row(agent);
        const LinearOrder true_order = inst.profile[static_cast<std::size_t>(agent)];

        // Exhaustive maxima in the profile *before* the move.
        BestResponse eu_best = eu_best_response(current, utils, agent, limits);
        BestResponse dl_best = dl_best_response(current, agent, limits);

        current.profile[static_cast<std::size_t>(agent)] = report;
        const Assignment& after = engine.run(current.profile);
        std::vector<Rational> new_row = after.row(agent);

        ReplayStep rec;
        rec.agent = agent;
        rec.report = report;
        rec.eu_after = eu_vector(current.profile);
        Rational new_value = eu_value(new_row, utils.row(agent));
        rec.eu_is_best_response = new_value == eu_best.value;
        rec.eu_strictly_improves = new_value > eu_value(old_row, utils.row(agent));
        rec.dl_is_best_response =
            dl_compare(dl_best.row, new_row, true_order) != Comparison::FirstPreferred;
        rec.dl_strictly_improves =
            dl_compare(new_row, old_row, true_order) == Comparison::FirstPreferred;
        out.steps.push_back(std::move(rec));
        visited.push_back(current.profile);
    }

    if (!steps.empty()) {
        for (std::size_t k = 0; k + 1 < visited.size(); ++k) {
            if (visited[k] == visited.back()) {
                out.repeats_step = k;
                break;
            }
        }
    }
    return out;
}

}  // namespace pslab
