#include "pslab/equilibria.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "pslab/permutation.hpp"

namespace pslab {

namespace {

std::string render_row(const std::vector<Rational>& row) {
    std::string out = "(";
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ", ";
        out += row[j].to_string();
    }
    return out + ")";
}

// Iterates reported profiles in ascending lexicographic id while keeping the
// per-agent reports materialized.
struct ProfileOdometer {
    int n;
    int m;
    std::uint64_t fact;
    std::vector<std::uint64_t> digits;  // digits[i] = rank of agent i's report
    Profile profile;

    ProfileOdometer(int n_, int m_) : n(n_), m(m_), fact(factorial(m_)) { reset(0); }

    void reset(std::uint64_t id) {
        digits.assign(static_cast<std::size_t>(n), 0);
        profile.assign(static_cast<std::size_t>(n), LinearOrder{});
        std::uint64_t rest = id;
        for (int i = n - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = rest % fact;
            rest /= fact;
            profile[static_cast<std::size_t>(i)].ranking =
                perm_unrank(digits[static_cast<std::size_t>(i)], m);
        }
    }

    // Advances to the next id; returns false on wraparound.
    bool advance() {
        for (int i = n - 1; i >= 0; --i) {
            auto& d = digits[static_cast<std::size_t>(i)];
            if (perm_next(profile[static_cast<std::size_t>(i)].ranking)) {
                ++d;
                return true;
            }
            d = 0;  // ranking wrapped back to sorted
        }
        return false;
    }
};

}  // namespace

std::uint64_t profile_rank(const Profile& p, int m) {
    std::uint64_t fact = factorial(m);
    std::uint64_t id = 0;
    for (const auto& order : p) id = id * fact + perm_rank(order.ranking);
    return id;
}

Profile profile_unrank(std::uint64_t id, int n, int m) {
    std::uint64_t fact = factorial(m);
    Profile p(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        p[static_cast<std::size_t>(i)].ranking = perm_unrank(id % fact, m);
        id /= fact;
    }
    return p;
}

PneVerdict verify_pne(const Instance& inst, PreferenceRelation relation,
                      const UtilityProfile* utils, const Profile& reported,
                      const SearchLimits& limits) {
    inst.validate();
    check_enum_bound(inst.m, limits);
    if (static_cast<int>(reported.size()) != inst.n)
        throw DomainError("verify_pne: reported profile size differs from n");
    for (const auto& order : reported)
        if (!order.is_permutation_of(inst.m)) throw DomainError("verify_pne: malformed report");
    if (relation == PreferenceRelation::EU && utils == nullptr)
        throw DomainError("verify_pne: EU relation needs a utility profile");

    PsEngine engine(inst.n, inst.m);
    const Assignment& current = engine.run(reported);
    std::vector<std::vector<Rational>> current_rows;
    current_rows.reserve(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i) current_rows.push_back(current.row(i));

    Profile work = reported;
    for (int agent = 0; agent < inst.n; ++agent) {
        const LinearOrder& true_order = inst.profile[static_cast<std::size_t>(agent)];
        std::vector<Rational> agent_utils;
        Rational current_eu;
        if (relation == PreferenceRelation::EU) {
            agent_utils = utils->row(agent);
            current_eu = eu_value(current_rows[static_cast<std::size_t>(agent)], agent_utils);
        }
        std::vector<int> report(static_cast<std::size_t>(inst.m));
        std::iota(report.begin(), report.end(), 0);
        do {
            if (report == reported[static_cast<std::size_t>(agent)].ranking) continue;
            work[static_cast<std::size_t>(agent)].ranking = report;
            const Assignment& dev = engine.run(work);
            std::vector<Rational> new_row = dev.row(agent);
            bool improves;
            std::string old_str;
            std::string new_str;
            if (relation == PreferenceRelation::EU) {
                Rational new_eu = eu_value(new_row, agent_utils);
                improves = new_eu > current_eu;
                if (improves) {
                    old_str = current_eu.to_string();
                    new_str = new_eu.to_string();
                }
            } else {
                improves = dl_compare(new_row, current_rows[static_cast<std::size_t>(agent)],
                                      true_order) == Comparison::FirstPreferred;
                if (improves) {
                    old_str = render_row(current_rows[static_cast<std::size_t>(agent)]);
                    new_str = render_row(new_row);
                }
            }
            if (improves) {
                PneVerdict verdict;
                verdict.is_pne = false;
                verdict.witness = PneWitness{agent, LinearOrder{report}, old_str, new_str};
                return verdict;
            }
        } while (perm_next(report));
        work[static_cast<std::size_t>(agent)] = reported[static_cast<std::size_t>(agent)];
    }
    return PneVerdict{true, std::nullopt};
}

namespace {

// Per-agent stability masks: for agent i and each combination of the other
// agents' reports, the set of i's reports whose outcome is maximal within
// that fiber. A profile is a PNE iff every agent's report bit is set.
struct StabilityMasks {
    int n = 0;
    int m = 0;
    std::uint64_t fact = 1;
    std::uint64_t total = 1;
    std::uint64_t fiber_count = 1;      // total / fact
    std::size_t words = 1;              // mask words per fiber
    std::vector<std::vector<std::uint64_t>> masks;  // [agent][fiber * words + w]

    bool stable(int agent, std::uint64_t fiber, std::uint64_t report) const {
        const std::uint64_t word =
            masks[static_cast<std::size_t>(agent)][fiber * words + report / 64];
        return (word >> (report % 64)) & 1;
    }
};

// Fiber key of `id` for `agent`: the mixed-radix id with that digit removed.
inline std::uint64_t fiber_key(std::uint64_t id, std::uint64_t weight, std::uint64_t fact) {
    std::uint64_t hi = id / (weight * fact);
    std::uint64_t lo = id % weight;
    return hi * weight + lo;
}

// One worker's partial view of a single agent's fibers.
struct FiberAccumulator {
    // EU mode: best value per fiber; DL mode: best row per fiber (flat m-wide).
    std::vector<Rational> best_value;
    std::vector<Rational> best_row;
    std::vector<std::uint64_t> mask;  // argmax set; all-zero means untouched
    std::size_t words = 1;
    int m = 0;

    void init(std::uint64_t fibers, std::size_t words_, int m_, bool dl) {
        words = words_;
        m = m_;
        mask.assign(fibers * words, 0);
        if (dl)
            best_row.assign(fibers * static_cast<std::uint64_t>(m), Rational());
        else
            best_value.assign(fibers, Rational());
    }

    void offer_eu(std::uint64_t fiber, std::uint64_t report, const Rational& value) {
        std::uint64_t* mk = mask.data() + fiber * words;
        bool untouched = true;
        for (std::size_t w = 0; w < words; ++w) untouched &= mk[w] == 0;
        if (!untouched) {
            int cmp = value.compare(best_value[fiber]);
            if (cmp < 0) return;
            if (cmp > 0) std::fill(mk, mk + words, 0);
        }
        best_value[fiber] = value;
        mk[report / 64] |= 1ull << (report % 64);
    }

    void offer_dl(std::uint64_t fiber, std::uint64_t report, const std::vector<Rational>& row,
                  const LinearOrder& true_order) {
        std::uint64_t* mk = mask.data() + fiber * words;
        bool untouched = true;
        for (std::size_t w = 0; w < words; ++w) untouched &= mk[w] == 0;
        Rational* stored = best_row.data() + fiber * static_cast<std::uint64_t>(m);
        if (!untouched) {
            std::vector<Rational> cur(stored, stored + m);
            Comparison cmp = dl_compare(row, cur, true_order);
            if (cmp == Comparison::SecondPreferred) return;
            if (cmp == Comparison::FirstPreferred) std::fill(mk, mk + words, 0);
        }
        for (int j = 0; j < m; ++j) stored[j] = row[static_cast<std::size_t>(j)];
        mk[report / 64] |= 1ull << (report % 64);
    }

    // Folds another worker's partial accumulator in; associative and
    // commutative, so the merged result is schedule-independent.
    void merge_from(FiberAccumulator& o, const LinearOrder& true_order, bool dl) {
        const std::uint64_t fibers = mask.size() / words;
        for (std::uint64_t f = 0; f < fibers; ++f) {
            std::uint64_t* om = o.mask.data() + f * words;
            bool o_untouched = true;
            for (std::size_t w = 0; w < words; ++w) o_untouched &= om[w] == 0;
            if (o_untouched) continue;
            std::uint64_t* mk = mask.data() + f * words;
            bool untouched = true;
            for (std::size_t w = 0; w < words; ++w) untouched &= mk[w] == 0;
            int cmp;
            if (untouched) {
                cmp = 1;
            } else if (dl) {
                std::vector<Rational> theirs(o.best_row.begin() + static_cast<std::ptrdiff_t>(f * m),
                                             o.best_row.begin() + static_cast<std::ptrdiff_t>((f + 1) * m));
                std::vector<Rational> ours(best_row.begin() + static_cast<std::ptrdiff_t>(f * m),
                                           best_row.begin() + static_cast<std::ptrdiff_t>((f + 1) * m));
                Comparison c = dl_compare(theirs, ours, true_order);
                cmp = c == Comparison::FirstPreferred ? 1 : c == Comparison::SecondPreferred ? -1 : 0;
            } else {
                cmp = o.best_value[f].compare(best_value[f]);
            }
            if (cmp < 0) continue;
            if (cmp > 0) {
                if (dl) {
                    for (int j = 0; j < m; ++j)
                        best_row[f * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(j)] =
                            std::move(o.best_row[f * static_cast<std::uint64_t>(m) +
                                                 static_cast<std::uint64_t>(j)]);
                } else {
                    best_value[f] = std::move(o.best_value[f]);
                }
                for (std::size_t w = 0; w < words; ++w) mk[w] = om[w];
            } else {
                for (std::size_t w = 0; w < words; ++w) mk[w] |= om[w];
            }
        }
    }
};

StabilityMasks compute_stability_masks(const Instance& inst, PreferenceRelation relation,
                                       const UtilityProfile& utils, int jobs,
                                       const SearchLimits& limits) {
    inst.validate();
    const std::uint64_t total = checked_profile_space(inst, limits);
    const int n = inst.n;
    const int m = inst.m;
    const std::uint64_t fact = factorial(m);
    const bool dl = relation == PreferenceRelation::DL;

    StabilityMasks result;
    result.n = n;
    result.m = m;
    result.fact = fact;
    result.total = total;
    result.fiber_count = total / fact;
    result.words = static_cast<std::size_t>((fact + 63) / 64);

    // Digit weights: agent i's report has weight fact^(n-1-i).
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(n));
    {
        std::uint64_t w = 1;
        for (int i = n - 1; i >= 0; --i) {
            weight[static_cast<std::size_t>(i)] = w;
            w *= fact;
        }
    }

    if (jobs < 1) jobs = 1;
    const std::uint64_t lead_block = weight[0];  // profiles per leading report
    std::uint64_t worker_count = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), fact);
    if (total < 4096) worker_count = 1;

    // Leading-agent fibers overlap across workers and are merged afterwards;
    // every other agent's fiber range is private to one worker because the
    // leading report is part of its key.
    std::vector<FiberAccumulator> shared(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i)
        shared[static_cast<std::size_t>(i)].init(result.fiber_count, result.words, m, dl);
    std::vector<FiberAccumulator> lead_parts(static_cast<std::size_t>(worker_count));

    auto worker = [&](std::uint64_t widx, std::uint64_t lead_lo, std::uint64_t lead_hi) {
        FiberAccumulator& lead = lead_parts[widx];
        lead.init(result.fiber_count, result.words, m, dl);
        PsEngine engine(n, m);
        ProfileOdometer odo(n, m);
        odo.reset(lead_lo * lead_block);
        std::vector<std::vector<Rational>> agent_utils(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) agent_utils[static_cast<std::size_t>(i)] = utils.row(i);
        for (std::uint64_t id = lead_lo * lead_block; id < lead_hi * lead_block;
             ++id, odo.advance()) {
            const Assignment& a = engine.run(odo.profile);
            for (int i = 0; i < n; ++i) {
                std::uint64_t fiber = fiber_key(id, weight[static_cast<std::size_t>(i)], fact);
                std::uint64_t report = odo.digits[static_cast<std::size_t>(i)];
                FiberAccumulator& acc = i == 0 ? lead : shared[static_cast<std::size_t>(i)];
                if (dl) {
                    acc.offer_dl(fiber, report, a.row(i),
                                 inst.profile[static_cast<std::size_t>(i)]);
                } else {
                    acc.offer_eu(fiber, report,
                                 eu_value(a.row(i), agent_utils[static_cast<std::size_t>(i)]));
                }
            }
        }
    };

    if (worker_count == 1) {
        worker(0, 0, fact);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < worker_count; ++w) {
            std::uint64_t lo = fact * w / worker_count;
            std::uint64_t hi = fact * (w + 1) / worker_count;
            pool.emplace_back(worker, w, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    FiberAccumulator& lead_final = lead_parts[0];
    for (std::uint64_t w = 1; w < worker_count; ++w)
        lead_final.merge_from(lead_parts[static_cast<std::size_t>(w)], inst.profile[0], dl);

    result.masks.resize(static_cast<std::size_t>(n));
    result.masks[0] = std::move(lead_final.mask);
    for (int i = 1; i < n; ++i)
        result.masks[static_cast<std::size_t>(i)] = std::move(shared[static_cast<std::size_t>(i)].mask);
    return result;
}

bool masks_say_pne(const StabilityMasks& sm, const std::vector<std::uint64_t>& weight,
                   const std::vector<std::uint64_t>& digits, std::uint64_t id) {
    for (int i = 0; i < sm.n; ++i) {
        std::uint64_t fiber = fiber_key(id, weight[static_cast<std::size_t>(i)], sm.fact);
        if (!sm.stable(i, fiber, digits[static_cast<std::size_t>(i)])) return false;
    }
    return true;
}

std::vector<std::uint64_t> digit_weights(int n, std::uint64_t fact) {
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(n));
    std::uint64_t w = 1;
    for (int i = n - 1; i >= 0; --i) {
        weight[static_cast<std::size_t>(i)] = w;
        w *= fact;
    }
    return weight;
}

}  // namespace

EnumerateResult enumerate_pne(const Instance& inst, PreferenceRelation relation,
                              const UtilityProfile& utils, int jobs,
                              const SearchLimits& limits) {
    StabilityMasks sm = compute_stability_masks(inst, relation, utils, jobs, limits);
    const auto weight = digit_weights(inst.n, sm.fact);

    EnumerateResult out;
    out.profiles_scanned = sm.total;
    PsEngine engine(inst.n, inst.m);
    ProfileOdometer odo(inst.n, inst.m);
    std::uint64_t id = 0;
    do {
        if (masks_say_pne(sm, weight, odo.digits, id)) {
            PneEntry entry;
            entry.profile_id = id;
            entry.profile = odo.profile;
            entry.assignment = engine.run(odo.profile);
            entry.social_welfare = social_welfare(entry.assignment, utils);
            out.equilibria.push_back(std::move(entry));
        }
        ++id;
    } while (odo.advance());
    return out;
}

void scan_profiles(const Instance& inst, PreferenceRelation relation,
                   const UtilityProfile& utils, int jobs, const SearchLimits& limits,
                   const std::function<void(std::uint64_t, bool, const Rational&)>& sink) {
    StabilityMasks sm = compute_stability_masks(inst, relation, utils, jobs, limits);
    const auto weight = digit_weights(inst.n, sm.fact);

    PsEngine engine(inst.n, inst.m);
    ProfileOdometer odo(inst.n, inst.m);
    std::uint64_t id = 0;
    do {
        const Assignment& a = engine.run(odo.profile);
        sink(id, masks_say_pne(sm, weight, odo.digits, id), social_welfare(a, utils));
        ++id;
    } while (odo.advance());
}

GranularityResult compute_granularity(const Instance& inst, const SearchLimits& limits) {
    inst.validate();
    checked_profile_space(inst, limits);

    GranularityResult out;
    PsEngine engine(inst.n, inst.m);
    ProfileOdometer odo(inst.n, inst.m);
    do {
        engine.run(odo.profile);
        Rational prev;
        for (const Rational& t : engine.event_times()) {
            Rational gap = t - prev;
            out.g = Rational::gcd(out.g, gap);
            ++out.event_gap_count;
            prev = t;
        }
    } while (odo.advance());
    out.quantum = Rational(BigInt(1), BigInt(inst.n)) * Rational::gcd(out.g, Rational(1));
    return out;
}

namespace {

struct StateHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct GameNode {
    std::vector<Rational> future;  // n*m future consumption along equilibrium play
    int chosen = -1;               // house the mover eats here (-1 at leaves)
};

// The discretized eating game. One agent per sub-stage eats `quantum` units;
// an agent keeps eating the same house across his turns until it is
// exhausted, choosing a fresh house only at the start and when the previous
// one runs out. Paths therefore correspond exactly to eating runs and read
// back out as preference lists. State = remaining quanta per house plus each
// agent's live commitment; the sub-stage index is implied by the mass eaten.
struct SubStageGame {
    const Instance& inst;
    PreferenceRelation relation;
    const UtilityProfile* utils;
    Rational quantum;
    int n;
    int m;
    std::uint64_t total_substages;
    std::unordered_map<std::vector<std::uint32_t>, GameNode, StateHash> memo;

    // state layout: [0, m) remaining quanta, [m, m + n) commitment + 1 (0 = none)
    std::uint64_t consumed_so_far(const std::vector<std::uint32_t>& state) const {
        std::uint64_t quanta_left = 0;
        for (int h = 0; h < m; ++h) quanta_left += state[static_cast<std::size_t>(h)];
        return total_substages - quanta_left;
    }

    // Exhausted commitments are cleared so transposed states coincide.
    void canonicalize(std::vector<std::uint32_t>& state) const {
        for (int i = 0; i < n; ++i) {
            std::uint32_t& cur = state[static_cast<std::size_t>(m + i)];
            if (cur != 0 && state[cur - 1] == 0) cur = 0;
        }
    }

    const GameNode& solve(const std::vector<std::uint32_t>& state) {
        auto it = memo.find(state);
        if (it != memo.end()) return it->second;

        std::uint64_t t = consumed_so_far(state);
        GameNode node;
        node.future.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), Rational());
        if (t == total_substages) {
            return memo.emplace(state, std::move(node)).first->second;
        }
        const int mover = static_cast<int>(t % static_cast<std::uint64_t>(n));
        const LinearOrder& true_order = inst.profile[static_cast<std::size_t>(mover)];
        std::vector<Rational> mover_utils;
        if (relation == PreferenceRelation::EU) mover_utils = utils->row(mover);

        // A live commitment forces the move; a fresh choice scans the houses
        // with mass left in the mover's true preference order, so ties
        // resolve toward the more-preferred house.
        std::vector<int> candidates;
        std::uint32_t committed = state[static_cast<std::size_t>(m + mover)];
        if (committed != 0) {
            candidates.push_back(static_cast<int>(committed) - 1);
        } else {
            for (int h : true_order.ranking)
                if (state[static_cast<std::size_t>(h)] > 0) candidates.push_back(h);
        }

        std::vector<Rational> best_future;
        std::vector<Rational> best_mover_row;
        int best_house = -1;
        for (int h : candidates) {
            std::vector<std::uint32_t> child = state;
            --child[static_cast<std::size_t>(h)];
            child[static_cast<std::size_t>(m + mover)] = static_cast<std::uint32_t>(h) + 1;
            canonicalize(child);
            std::vector<Rational> future = solve(child).future;
            future[static_cast<std::size_t>(mover) * static_cast<std::size_t>(m) +
                   static_cast<std::size_t>(h)] += quantum;
            std::vector<Rational> mover_row(
                future.begin() + static_cast<std::ptrdiff_t>(mover) * m,
                future.begin() + static_cast<std::ptrdiff_t>(mover + 1) * m);
            bool better;
            if (best_house < 0) {
                better = true;
            } else if (relation == PreferenceRelation::EU) {
                better = eu_compare(mover_row, best_mover_row, mover_utils) ==
                         Comparison::FirstPreferred;
            } else {
                better = dl_compare(mover_row, best_mover_row, true_order) ==
                         Comparison::FirstPreferred;
            }
            if (better) {
                best_future = std::move(future);
                best_mover_row = std::move(mover_row);
                best_house = h;
            }
        }
        node.future = std::move(best_future);
        node.chosen = best_house;
        return memo.emplace(state, std::move(node)).first->second;
    }
};

}  // namespace

SpneResult spne_construct(const Instance& inst, PreferenceRelation relation,
                          const UtilityProfile* utils,
                          std::optional<Rational> quantum_override,
                          const SearchLimits& limits) {
    inst.validate();
    if (relation == PreferenceRelation::EU && utils == nullptr)
        throw DomainError("spne: EU relation needs a utility profile");

    Rational quantum;
    if (quantum_override) {
        quantum = *quantum_override;
        if (quantum.sign() <= 0) throw DomainError("spne: quantum must be positive");
        if (quantum.num() != BigInt(1))
            throw DomainError("spne: quantum must divide 1 (use 1/k)");
    } else {
        quantum = compute_granularity(inst, limits).quantum;
    }

    const std::uint64_t per_house = quantum.den().to_uint64_abs();  // quanta per unit mass
    const std::uint64_t total_substages = per_house * static_cast<std::uint64_t>(inst.m);
    if (total_substages % static_cast<std::uint64_t>(inst.n) != 0)
        throw DomainError("spne: m/quantum must be divisible by n for even turns");

    // With memoization the cost is the count of distinct states,
    // (per_house+1)^m * (m+1)^n, not the naive tree size.
    {
        std::uint64_t states = 1;
        for (int h = 0; h < inst.m; ++h) {
            if (states > limits.profile_budget / (per_house + 1))
                throw BoundExceeded("spne: state space exceeds budget");
            states *= per_house + 1;
        }
        for (int i = 0; i < inst.n; ++i) {
            if (states > limits.profile_budget / static_cast<std::uint64_t>(inst.m + 1))
                throw BoundExceeded("spne: state space exceeds budget");
            states *= static_cast<std::uint64_t>(inst.m + 1);
        }
    }

    SubStageGame game{inst,    relation,
                      utils,   quantum,
                      inst.n,  inst.m,
                      total_substages,
                      {}};
    std::vector<std::uint32_t> state(static_cast<std::size_t>(inst.m + inst.n), 0);
    for (int h = 0; h < inst.m; ++h)
        state[static_cast<std::size_t>(h)] = static_cast<std::uint32_t>(per_house);
    const GameNode& root = game.solve(state);
    Assignment path_allocation(inst.n, inst.m);
    path_allocation.cells = root.future;

    // Walk the equilibrium path. A fresh choice pins the list down only
    // partially: the chosen house must precede every other house available at
    // that moment. Houses the path never disambiguates (never eaten, or taken
    // as the only option left) are ordered by true preference afterwards;
    // parking them blindly at the end can mis-rank the off-path houses an
    // equilibrium needs for deterrence.
    std::vector<std::vector<bool>> precedes(
        static_cast<std::size_t>(inst.n * inst.m),
        std::vector<bool>(static_cast<std::size_t>(inst.m), false));
    auto before = [&](int agent, int a) -> std::vector<bool>& {
        return precedes[static_cast<std::size_t>(agent * inst.m + a)];
    };
    for (std::uint64_t t = 0; t < total_substages; ++t) {
        const GameNode& node = game.memo.at(state);
        const int mover = static_cast<int>(t % static_cast<std::uint64_t>(inst.n));
        const int h = node.chosen;
        if (state[static_cast<std::size_t>(inst.m + mover)] == 0) {
            for (int other = 0; other < inst.m; ++other)
                if (other != h && state[static_cast<std::size_t>(other)] > 0)
                    before(mover, h)[static_cast<std::size_t>(other)] = true;
        }
        --state[static_cast<std::size_t>(h)];
        state[static_cast<std::size_t>(inst.m + mover)] = static_cast<std::uint32_t>(h) + 1;
        game.canonicalize(state);
    }

    SpneResult out;
    out.path_allocation = std::move(path_allocation);
    out.quantum = quantum;
    out.depth = total_substages;
    out.states_expanded = game.memo.size();
    out.profile.resize(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i) {
        // Most-preferred-first completion of the path's precedence constraints.
        std::vector<bool> placed(static_cast<std::size_t>(inst.m), false);
        std::vector<int> ranking;
        ranking.reserve(static_cast<std::size_t>(inst.m));
        while (static_cast<int>(ranking.size()) < inst.m) {
            for (int h : inst.profile[static_cast<std::size_t>(i)].ranking) {
                if (placed[static_cast<std::size_t>(h)]) continue;
                bool blocked = false;
                for (int g = 0; g < inst.m; ++g)
                    if (!placed[static_cast<std::size_t>(g)] &&
                        before(i, g)[static_cast<std::size_t>(h)])
                        blocked = true;
                if (!blocked) {
                    ranking.push_back(h);
                    placed[static_cast<std::size_t>(h)] = true;
                    break;
                }
            }
        }
        out.profile[static_cast<std::size_t>(i)].ranking = std::move(ranking);
    }
    out.verdict = verify_pne(inst, relation, utils, out.profile, limits);
    return out;
}

}  // namespace pslab
