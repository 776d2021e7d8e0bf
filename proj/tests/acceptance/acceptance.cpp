// End-to-end acceptance suite. Each numbered criterion prints one PASS/FAIL
// line; the exit code is the number of failures. Soft bounds print FLAG lines
// without failing the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "../unit/helpers.hpp"
#include "pslab/experiments.hpp"
#include "pslab/permutation.hpp"
#include "pslab/preflib.hpp"
#include "pslab/threat.hpp"

using namespace pslab;
using testutil::oracle_ps;
using testutil::rat;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
    std::printf("%s criterion %2d: %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                seconds, detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

void run(int id, const std::string& name, const std::function<bool(std::string&)>& body,
         double budget_seconds = 0) {
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    if (ok && budget_seconds > 0 && elapsed > budget_seconds) {
        ok = false;
        detail += " [over the " + std::to_string(budget_seconds) + " s budget]";
    }
    report(id, name, ok, elapsed, detail);
}

Instance worked_example() { return testutil::instance_of({{0, 1, 2}, {1, 0, 2}, {1, 2, 0}}); }

Instance cycle_instance() { return testutil::instance_of({{1, 2, 4, 3, 0}, {4, 2, 3, 0, 1}}); }

UtilityProfile worked_utils() {
    return testutil::utilities_of({{7, 6, 0}, {2, 3, 1}, {1, 3, 2}});
}

}  // namespace

// 1. Exact PS matrices for the worked example, truthful and manipulated.
static bool crit_golden_matrices(std::string& detail) {
    Instance truthful = worked_example();
    Instance manipulated = truthful;
    manipulated.profile[0] = LinearOrder{{1, 0, 2}};

    Assignment want_truthful(3, 3);
    want_truthful.cells = {rat(3, 4), rat(0), rat(1, 4), rat(1, 4), rat(1, 2),
                           rat(1, 4), rat(0), rat(1, 2), rat(1, 2)};
    Assignment want_manipulated(3, 3);
    want_manipulated.cells = {rat(1, 2), rat(1, 3), rat(1, 6), rat(1, 2), rat(1, 3),
                              rat(1, 6), rat(0),   rat(1, 3), rat(2, 3)};

    // Warm once, then time single runs against the 1 ms budget.
    PsEngine engine(3, 3);
    engine.run(truthful.profile);
    auto t0 = Clock::now();
    bool ok1 = engine.run(truthful.profile) == want_truthful;
    double ms1 = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    t0 = Clock::now();
    bool ok2 = engine.run(manipulated.profile) == want_manipulated;
    double ms2 = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    std::ostringstream ss;
    ss << "matrices exact, " << ms1 << " / " << ms2 << " ms";
    detail = ss.str();
    return ok1 && ok2 && ms1 < 1.0 && ms2 < 1.0;
}

// 2. Five-step best-response cycle: exact EU chain, every step an exhaustive
//    EU and DL best response, final profile closes the loop.
static bool crit_cycle_replay(std::string& detail) {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    std::vector<std::pair<int, LinearOrder>> steps = {
        {0, LinearOrder{{2, 3, 1, 0, 4}}}, {1, LinearOrder{{2, 3, 4, 0, 1}}},
        {0, LinearOrder{{2, 4, 1, 0, 3}}}, {1, LinearOrder{{4, 2, 3, 0, 1}}},
        {0, LinearOrder{{2, 3, 1, 0, 4}}},
    };
    ReplayResult rep = replay_path(inst, u, steps);

    bool ok = rep.eu_initial == std::vector<Rational>{rat(6), rat(7)};
    const std::vector<std::vector<Rational>> chain = {
        {rat(15, 2), rat(6)}, {rat(6), rat(7)},     {rat(15, 2), rat(9, 2)},
        {rat(7), rat(13, 2)}, {rat(15, 2), rat(6)},
    };
    for (std::size_t k = 0; k < steps.size(); ++k) {
        ok = ok && rep.steps[k].eu_after == chain[k];
        ok = ok && rep.steps[k].eu_is_best_response && rep.steps[k].eu_strictly_improves;
        ok = ok && rep.steps[k].dl_is_best_response && rep.steps[k].dl_strictly_improves;
    }
    ok = ok && rep.repeats_step && *rep.repeats_step == 1;
    detail = "EU chain (6,7)->(15/2,6)->(6,7)->(15/2,9/2)->(7,13/2)->(15/2,6), cycle closed";
    return ok;
}

// 3. Threat profile guarantees over 500 random 2-agent instances.
static bool crit_threat(std::string& detail) {
    int falsified = 0;
    int checked = 0;
    for (int iter = 0; iter < 500; ++iter) {
        std::uint64_t s = derive_seed(0x7472656174ull, static_cast<std::uint64_t>(iter));
        int m = 2 + iter % 4;  // m in {2..5}
        Instance inst = gen_ic(2, m, derive_seed(s, 0));
        std::vector<UtilityProfile> samples;
        for (std::uint64_t k = 1; k <= 3; ++k)
            samples.push_back(gen_random_utility_profile(inst, derive_seed(s, k)));
        ThreatCheckReport rep =
            check_threat_guarantees(inst.profile[0], inst.profile[1], samples);
        ++checked;
        if (!rep.all_hold()) ++falsified;
    }
    std::ostringstream ss;
    ss << checked << " instances x 3 utility profiles, " << falsified << " falsifications";
    detail = ss.str();
    return falsified == 0;
}

// 4. Existence: every sampled instance has at least one EU equilibrium.
static bool crit_existence(std::string& detail) {
    int empty = 0;
    for (int iter = 0; iter < 100; ++iter) {
        std::uint64_t s = derive_seed(0x65786973ull, static_cast<std::uint64_t>(iter));
        int n = 2 + iter % 2;
        int m = 2 + (iter / 2) % 2;
        Instance inst = gen_ic(n, m, derive_seed(s, 0));
        UtilityProfile u = gen_random_utility_profile(inst, derive_seed(s, 1));
        EnumerateResult res = enumerate_pne(inst, PreferenceRelation::EU, u);
        if (res.equilibria.empty()) ++empty;
    }
    std::ostringstream ss;
    ss << "100 sampled (instance, utilities) pairs, " << empty << " without equilibria";
    detail = ss.str();
    return empty == 0;
}

// 5. Backward-induction construction yields verified equilibria.
static bool crit_spne(std::string& detail) {
    int bad = 0;
    for (int iter = 0; iter < 50; ++iter) {
        std::uint64_t s = derive_seed(0x73706e65ull, static_cast<std::uint64_t>(iter));
        int m = 2 + iter % 2;
        Instance inst = gen_ic(2, m, derive_seed(s, 0));
        if (iter % 2 == 0) {
            UtilityProfile u = gen_random_utility_profile(inst, derive_seed(s, 1));
            if (!spne_construct(inst, PreferenceRelation::EU, &u).verdict.is_pne) ++bad;
        } else {
            if (!spne_construct(inst, PreferenceRelation::DL, nullptr).verdict.is_pne) ++bad;
        }
    }
    std::ostringstream ss;
    ss << "50 constructions (EU and DL), " << bad << " failed verification";
    detail = ss.str();
    return bad == 0;
}

// 6. The worked example's equilibrium status under both relations.
static bool crit_worked_example_pne(std::string& detail) {
    Instance inst = worked_example();
    bool dl_ok = verify_pne(inst, PreferenceRelation::DL, nullptr, inst.profile).is_pne;
    UtilityProfile u = worked_utils();
    PneVerdict eu = verify_pne(inst, PreferenceRelation::EU, &u, inst.profile);
    bool eu_ok = !eu.is_pne && eu.witness && eu.witness->agent == 0 &&
                 eu.witness->report.ranking == std::vector<int>{1, 0, 2};
    detail = "DL equilibrium, EU broken by agent 1 reporting h2,h1,h3";
    return dl_ok && eu_ok;
}

// 7. Desk-scale welfare experiment: most equilibria keep the truthful
//    welfare; extremes stay inside soft bounds; one 4x4 sample within 60 s.
static bool crit_experiment(std::string& detail) {
    ExperimentConfig config;
    config.cells = {{CultureModel::IC, 4, 3, 30}, {CultureModel::SPIC, 4, 3, 30}};
    config.root_seed = 42;
    config.jobs = 2;
    ExperimentResult res = run_experiment(config);

    bool ok = true;
    std::ostringstream ss;
    for (const CellSummary& c : res.cells) {
        Rational frac_equal = c.frac(c.total_equal);
        ss << culture_name(c.model) << " frac_equal=" << frac_equal.to_decimal(4);
        if (!(frac_equal > rat(1, 2))) {
            ok = false;
            ss << " (NOT a majority)";
        }
        if (c.max_pct_increase > Rational(30))
            std::printf("FLAG criterion  7: %s max increase %s%% exceeds soft bound 30%%\n",
                        culture_name(c.model).c_str(), c.max_pct_increase.to_decimal(4).c_str());
        if (c.max_pct_decrease > Rational(25))
            std::printf("FLAG criterion  7: %s max decrease %s%% exceeds soft bound 25%%\n",
                        culture_name(c.model).c_str(), c.max_pct_decrease.to_decimal(4).c_str());
        ss << " ";
    }

    // One 4-agent 4-house sample with 8 workers against the 60 s target.
    auto t0 = Clock::now();
    Instance big = gen_ic(4, 4, derive_seed(42, 0xb16));
    UtilityProfile bu = gen_random_utility_profile(big, derive_seed(42, 0xb17));
    EnumerateResult full = enumerate_pne(big, PreferenceRelation::EU, bu, 8);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    ss << "| 4x4 sample: " << full.profiles_scanned << " profiles, "
       << full.equilibria.size() << " equilibria in " << secs << " s (8 workers)";
    ok = ok && secs <= 60.0 && full.profiles_scanned == 331776;
    detail = ss.str();
    return ok;
}

// 8. Dual-route checks: the census agrees with direct verification, and the
//    event-driven engine agrees with the time-quantized oracle.
static bool crit_oracles(std::string& detail) {
    int mismatches = 0;

    std::vector<Instance> census_corpus = {
        worked_example(),
        testutil::instance_of({{0, 1}, {0, 1}}),
        testutil::instance_of({{0, 1, 2}, {2, 1, 0}}),
        testutil::instance_of({{0, 1}, {1, 0}, {0, 1}}),
        gen_ic(2, 3, 2025),
        gen_ic(3, 2, 2026),
    };
    std::uint64_t census_profiles = 0;
    for (const Instance& inst : census_corpus) {
        UtilityProfile u = gen_random_utility_profile(inst, 31337);
        for (PreferenceRelation rel : {PreferenceRelation::EU, PreferenceRelation::DL}) {
            const UtilityProfile* up = rel == PreferenceRelation::EU ? &u : nullptr;
            EnumerateResult res = enumerate_pne(inst, rel, u);
            std::set<std::uint64_t> members;
            for (const PneEntry& e : res.equilibria) members.insert(e.profile_id);
            for (std::uint64_t id = 0; id < res.profiles_scanned; ++id) {
                Profile p = profile_unrank(id, inst.n, inst.m);
                if (verify_pne(inst, rel, up, p).is_pne != (members.count(id) > 0)) ++mismatches;
                ++census_profiles;
            }
        }
    }

    int ps_checked = 0;
    std::vector<Instance> ps_corpus = census_corpus;
    Rng rng(112233);
    for (int iter = 0; iter < 30; ++iter) {
        ps_corpus.push_back(gen_ic(1 + static_cast<int>(rng.below(4)),
                                   1 + static_cast<int>(rng.below(4)), rng.next()));
    }
    for (const Instance& inst : ps_corpus) {
        if (run_ps(inst).assignment == oracle_ps(inst)) ++ps_checked;
        else ++mismatches;
    }

    std::ostringstream ss;
    ss << census_profiles << " profiles cross-verified, " << ps_checked
       << " instances against the quantized oracle, " << mismatches << " mismatches";
    detail = ss.str();
    return mismatches == 0;
}

// 9. Invariants at volume: 10^4 eating runs validate exactly; culture
//    generators match their distributions.
static bool crit_invariants(std::string& detail) {
    Rng rng(0xfeed);
    for (int iter = 0; iter < 10000; ++iter) {
        int n = 1 + static_cast<int>(rng.below(5));
        int m = 1 + static_cast<int>(rng.below(5));
        Instance inst = gen_ic(n, m, rng.next());
        PsEngine engine(n, m);
        Assignment a = engine.run(inst.profile);
        a.validate();  // throws on any violation
    }

    // IC frequency at m=3.
    {
        std::map<std::vector<int>, int> counts;
        const int draws = 60000;
        for (int s = 0; s < draws; ++s)
            counts[gen_ic(1, 3, derive_seed(0x1c, static_cast<std::uint64_t>(s))).profile[0].ranking] += 1;
        const double expected = draws / 6.0;
        const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
        if (counts.size() != 6) return false;
        for (const auto& [order, count] : counts)
            if (std::abs(count - expected) > 3 * sigma) {
                detail = "ic frequency outside 3 sigma";
                return false;
            }
    }
    // Mallows reference mass at phi = 1/2: 8/21.
    {
        const int draws = 100000;
        int hits = 0;
        std::vector<int> ref = {0, 1, 2};
        for (int s = 0; s < draws; ++s)
            if (gen_mallows(1, 3, rat(1, 2), ref, derive_seed(0xa1, static_cast<std::uint64_t>(s)))
                    .profile[0].ranking == ref)
                ++hits;
        const double p = 8.0 / 21.0;
        const double sigma = std::sqrt(draws * p * (1 - p));
        if (std::abs(hits - draws * p) > 3 * sigma) {
            detail = "mallows reference frequency outside 3 sigma";
            return false;
        }
    }
    // Urn match probability 1/2.
    {
        const int draws = 100000;
        int matches = 0;
        for (int s = 0; s < draws; ++s) {
            Instance inst = gen_urn(2, 3, derive_seed(0x0e, static_cast<std::uint64_t>(s)));
            if (inst.profile[0] == inst.profile[1]) ++matches;
        }
        const double sigma = std::sqrt(draws * 0.25);
        if (std::abs(matches - draws * 0.5) > 3 * sigma) {
            detail = "urn match probability outside 3 sigma";
            return false;
        }
    }
    // SP-IC: single-peaked without exception.
    {
        Rng sp(0x59);
        for (int iter = 0; iter < 10000; ++iter) {
            int m = 1 + static_cast<int>(sp.below(6));
            Instance inst = gen_sp_ic(1, m, sp.next());
            const auto& rk = inst.profile[0].ranking;
            std::vector<int> rank_of(static_cast<std::size_t>(m));
            for (int pos = 0; pos < m; ++pos)
                rank_of[static_cast<std::size_t>(rk[static_cast<std::size_t>(pos)])] = pos;
            int peak = rk[0];
            for (int h = 0; h < peak; ++h)
                if (rank_of[static_cast<std::size_t>(h)] <= rank_of[static_cast<std::size_t>(h + 1)]) {
                    detail = "sp-ic draw not single-peaked";
                    return false;
                }
            for (int h = peak; h + 1 < m; ++h)
                if (rank_of[static_cast<std::size_t>(h)] >= rank_of[static_cast<std::size_t>(h + 1)]) {
                    detail = "sp-ic draw not single-peaked";
                    return false;
                }
        }
    }
    detail = "10^4 assignments validated; ic, mallows, urn, sp-ic distributions in band";
    return true;
}

// 10. Parser round-trips and rejections.
static bool crit_parser(std::string& detail) {
    const std::string modern =
        "# FILE NAME: tiny.soc\n# TITLE: tiny two-alternative sample\n# DATA TYPE: soc\n"
        "# NUMBER ALTERNATIVES: 2\n# ALTERNATIVE NAME 1: Alpha\n# ALTERNATIVE NAME 2: Beta\n"
        "1: 1,2\n3: 2,1\n";
    const std::string legacy =
        "4\n1,Algorithms\n2,Databases, Advanced\n3,Networks\n4,Operating Systems\n"
        "9,9,3\n5,1,3,2,4\n3,2,1,3,4\n1,4,2,3,1\n";

    PrefLibDocument doc = parse_soc(modern);
    PrefLibDocument doc2 = parse_soc(render_soc(doc));
    bool ok = doc == doc2 && render_soc(doc) == render_soc(doc2);

    PrefLibDocument leg = parse_soc(legacy, true);
    PrefLibDocument leg2 = parse_soc(render_soc(leg));
    ok = ok && leg == leg2 && leg.alternative_count == 4 && leg.rows.size() == 3;

    int rejected = 0;
    auto expect_error = [&](const std::string& text, bool as_legacy) {
        try {
            parse_soc(text, as_legacy);
        } catch (const ParseError&) {
            ++rejected;
        }
    };
    expect_error("2: 1,1\n", false);                            // duplicate alternative
    expect_error("# NUMBER ALTERNATIVES: 2\n1: 1,3\n", false);  // unknown id
    expect_error("x: 1,2\n", false);                            // non-integer multiplicity
    expect_error("# NUMBER ALTERNATIVES: 3\n1: 1,2\n", false);  // incomplete order
    expect_error("1: {1,2},3\n", false);                        // tied order
    expect_error("# DATA TYPE: soi\n1: 1,2\n", false);          // wrong flavor
    expect_error("2\n1,A\n2,B\n5,5,1\n4,1,2\n", true);          // bad voter summary
    ok = ok && rejected == 7;

    std::ostringstream ss;
    ss << "modern + legacy round-trips fixed points, " << rejected
       << "/7 malformed inputs rejected";
    detail = ss.str();
    return ok;
}

int main() {
    run(1, "golden eating-rule matrices", crit_golden_matrices);  // 1 ms budget inside
    run(2, "five-step best-response cycle replay", crit_cycle_replay, 1.0);
    run(3, "threat-profile guarantees (500 instances)", crit_threat, 30.0);
    run(4, "equilibrium existence sweep (100 samples)", crit_existence, 120.0);
    run(5, "backward-induction equilibrium construction (50 samples)", crit_spne, 120.0);
    run(6, "worked example: DL equilibrium, EU manipulation", crit_worked_example_pne, 1.0);
    run(7, "welfare experiment at desk scale + 4x4 timing", crit_experiment);  // 60 s inside
    run(8, "dual-route oracle cross-checks", crit_oracles);
    run(9, "invariant suite at volume", crit_invariants);
    run(10, "preference-data parser round-trips", crit_parser);

    if (failures == 0) {
        std::printf("acceptance: all criteria pass\n");
    } else {
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    }
    return failures;
}
