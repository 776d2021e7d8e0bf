#include <doctest.h>

#include "helpers.hpp"
#include "pslab/strategy.hpp"

using namespace testutil;
using namespace pslab;

TEST_CASE("cycle instance: agent 1's first exhaustive best response") {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    BestResponse br = eu_best_response(inst, u, 0);
    CHECK(br.value == rat(15, 2));
    CHECK(br.improves);
    // The report from the worked deviation attains the same optimum.
    Instance dev = inst;
    dev.profile[0] = LinearOrder{{2, 3, 1, 0, 4}};
    CHECK(eu_value(run_ps(dev).assignment.row(0), u.row(0)) == rat(15, 2));
}

TEST_CASE("a lone agent cannot improve") {
    Instance inst = instance_of({{0, 1, 2}});
    UtilityProfile u = utilities_of({{5, 3, 1}});
    BestResponse br = eu_best_response(inst, u, 0);
    CHECK_FALSE(br.improves);
    CHECK(br.value == Rational(9));
    CHECK(br.order.ranking == std::vector<int>{0, 1, 2});  // lexicographically smallest

    BestResponse dl = dl_best_response(inst, 0);
    CHECK_FALSE(dl.improves);
}

TEST_CASE("two agents fighting over one house cannot gain by lying") {
    Instance inst = instance_of({{0, 1}, {0, 1}});
    UtilityProfile u = utilities_of({{2, 1}, {2, 1}});
    BestResponse br = eu_best_response(inst, u, 0);
    CHECK(br.value == rat(3, 2));
    CHECK_FALSE(br.improves);
    // Deviating to h2-first earns (0,1): utility 1 < 3/2.
    Instance dev = inst;
    dev.profile[0] = LinearOrder{{1, 0}};
    CHECK(eu_value(run_ps(dev).assignment.row(0), u.row(0)) == Rational(1));
}

TEST_CASE("worked example: truth is a DL best response") {
    Instance inst = worked_example();
    BestResponse br = dl_best_response(inst, 0);
    CHECK_FALSE(br.improves);
    CHECK(br.order.ranking == std::vector<int>{0, 1, 2});
    CHECK(br.row == std::vector<Rational>{rat(3, 4), rat(0), rat(1, 4)});
}

TEST_CASE("cycle instance: DL best response beats the truthful row at h3") {
    Instance inst = cycle_instance();
    Assignment truthful = run_ps(inst).assignment;
    CHECK(truthful.row(0) ==
          std::vector<Rational>{rat(1, 2), rat(1), rat(1, 2), rat(1, 2), rat(0)});

    Instance dev = inst;
    dev.profile[0] = LinearOrder{{2, 3, 1, 0, 4}};
    std::vector<Rational> dev_row = run_ps(dev).assignment.row(0);
    CHECK(dev_row == std::vector<Rational>{rat(0), rat(1), rat(1), rat(1, 2), rat(0)});
    CHECK(dl_compare(dev_row, truthful.row(0), inst.profile[0]) == Comparison::FirstPreferred);

    BestResponse br = dl_best_response(inst, 0);
    CHECK(br.improves);
    // The exhaustive DL maximum is at least as good as that deviation.
    CHECK(dl_compare(dev_row, br.row, inst.profile[0]) != Comparison::FirstPreferred);
}

TEST_CASE("best response bound is enforced") {
    Instance inst = gen_ic(2, 9, 7);
    UtilityProfile u = gen_random_utility_profile(inst, 8);
    CHECK_THROWS_AS(eu_best_response(inst, u, 0), BoundExceeded);
    CHECK_THROWS_AS(dl_best_response(inst, 0, SearchLimits{3, 100}), BoundExceeded);
}

TEST_CASE("truth-telling is always available: best response never loses") {
    Rng rng(512);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(rng.below(3));
        int m = 1 + static_cast<int>(rng.below(4));
        Instance inst = gen_ic(n, m, rng.next());
        UtilityProfile u = gen_random_utility_profile(inst, rng.next());
        int agent = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        BestResponse br = eu_best_response(inst, u, agent);
        Rational truthful_eu = eu_value(run_ps(inst).assignment.row(agent), u.row(agent));
        CHECK(br.value >= truthful_eu);
        CHECK(br.improves == (br.value > truthful_eu));
    }
}

TEST_CASE("for two agents a DL best response is an EU best response") {
    Rng rng(4096);
    for (int iter = 0; iter < 40; ++iter) {
        int m = 2 + static_cast<int>(rng.below(4));  // m in 2..5
        Instance inst = gen_ic(2, m, rng.next());
        UtilityProfile u = gen_random_utility_profile(inst, rng.next());
        REQUIRE(u.consistent_with(inst));
        for (int agent = 0; agent < 2; ++agent) {
            BestResponse dl = dl_best_response(inst, agent);
            BestResponse eu = eu_best_response(inst, u, agent);
            CHECK(eu_value(dl.row, u.row(agent)) == eu.value);
        }
    }
}

TEST_CASE("dynamics: identical preferences are an immediate fixed point") {
    Instance inst = instance_of({{0, 1}, {0, 1}});
    UtilityProfile u = utilities_of({{2, 1}, {2, 1}});
    DynamicsOutcome out = run_dynamics(inst, &u, MoverPolicy::RoundRobin,
                                       PreferenceRelation::EU, 50);
    CHECK(out.kind == DynamicsOutcome::Kind::FixedPoint);
    CHECK(out.trajectory.size() == 1);
    CHECK(out.trajectory[0] == inst.profile);
}

TEST_CASE("dynamics: single agent fixes immediately") {
    Instance inst = instance_of({{1, 0, 2}});
    UtilityProfile u = utilities_of({{3, 9, 1}});
    DynamicsOutcome out = run_dynamics(inst, &u, MoverPolicy::FirstImproving,
                                       PreferenceRelation::EU, 10);
    CHECK(out.kind == DynamicsOutcome::Kind::FixedPoint);
    CHECK(out.trajectory.size() == 1);
}

TEST_CASE("dynamics never revisit a profile without declaring a cycle") {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    for (MoverPolicy policy : {MoverPolicy::RoundRobin, MoverPolicy::FirstImproving}) {
        DynamicsOutcome out =
            run_dynamics(inst, &u, policy, PreferenceRelation::EU, 20000);
        CHECK(out.kind != DynamicsOutcome::Kind::StepsExhausted);
        std::size_t distinct_end = out.kind == DynamicsOutcome::Kind::Cycle
                                       ? out.trajectory.size() - 1
                                       : out.trajectory.size();
        for (std::size_t i = 0; i < distinct_end; ++i)
            for (std::size_t j = i + 1; j < distinct_end; ++j)
                CHECK(out.trajectory[i] != out.trajectory[j]);
        if (out.kind == DynamicsOutcome::Kind::Cycle) {
            CHECK(out.trajectory[out.cycle_start + out.cycle_period] ==
                  out.trajectory[out.cycle_start]);
            CHECK(out.cycle_period >= 1);
        }
    }
}

TEST_CASE("dynamics discover the known four-profile cycle") {
    // From the truthful profile, deterministic best responses walk straight
    // into the cycle: both mover policies reach it in one step and loop with
    // period 4 through the same reports the replay script uses.
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    for (MoverPolicy policy : {MoverPolicy::RoundRobin, MoverPolicy::FirstImproving}) {
        DynamicsOutcome out = run_dynamics(inst, &u, policy, PreferenceRelation::EU, 500);
        REQUIRE(out.kind == DynamicsOutcome::Kind::Cycle);
        CHECK(out.cycle_start == 1);
        CHECK(out.cycle_period == 4);
        REQUIRE(out.trajectory.size() == 6);
        Profile step1 = {LinearOrder{{2, 3, 1, 0, 4}}, LinearOrder{{4, 2, 3, 0, 1}}};
        Profile step2 = {LinearOrder{{2, 3, 1, 0, 4}}, LinearOrder{{2, 3, 4, 0, 1}}};
        Profile step3 = {LinearOrder{{2, 4, 1, 0, 3}}, LinearOrder{{2, 3, 4, 0, 1}}};
        Profile step4 = {LinearOrder{{2, 4, 1, 0, 3}}, LinearOrder{{4, 2, 3, 0, 1}}};
        CHECK(out.trajectory[1] == step1);
        CHECK(out.trajectory[2] == step2);
        CHECK(out.trajectory[3] == step3);
        CHECK(out.trajectory[4] == step4);
        CHECK(out.trajectory[5] == step1);
    }
}

TEST_CASE("max_steps exhaustion is an outcome, not an error") {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    DynamicsOutcome out =
        run_dynamics(inst, &u, MoverPolicy::RoundRobin, PreferenceRelation::EU, 1);
    CHECK((out.kind == DynamicsOutcome::Kind::StepsExhausted ||
           out.kind == DynamicsOutcome::Kind::FixedPoint));
}

TEST_CASE("the five-step cycle replays exactly") {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    std::vector<std::pair<int, LinearOrder>> steps = {
        {0, LinearOrder{{2, 3, 1, 0, 4}}},  // h3,h4,h2,h1,h5
        {1, LinearOrder{{2, 3, 4, 0, 1}}},  // h3,h4,h5,h1,h2
        {0, LinearOrder{{2, 4, 1, 0, 3}}},  // h3,h5,h2,h1,h4
        {1, LinearOrder{{4, 2, 3, 0, 1}}},  // h5,h3,h4,h1,h2 (the truthful order)
        {0, LinearOrder{{2, 3, 1, 0, 4}}},  // back to step 1's report
    };
    ReplayResult rep = replay_path(inst, u, steps);

    CHECK(rep.eu_initial == std::vector<Rational>{rat(6), rat(7)});
    REQUIRE(rep.steps.size() == 5);
    CHECK(rep.steps[0].eu_after == std::vector<Rational>{rat(15, 2), rat(6)});
    CHECK(rep.steps[1].eu_after == std::vector<Rational>{rat(6), rat(7)});
    CHECK(rep.steps[2].eu_after == std::vector<Rational>{rat(15, 2), rat(9, 2)});
    CHECK(rep.steps[3].eu_after == std::vector<Rational>{rat(7), rat(13, 2)});
    CHECK(rep.steps[4].eu_after == std::vector<Rational>{rat(15, 2), rat(6)});
    for (const ReplayStep& st : rep.steps) {
        CHECK(st.eu_is_best_response);
        CHECK(st.eu_strictly_improves);
        CHECK(st.dl_is_best_response);
        CHECK(st.dl_strictly_improves);
    }
    REQUIRE(rep.repeats_step.has_value());
    CHECK(*rep.repeats_step == 1);  // the profile after step 5 equals the one after step 1
}

TEST_CASE("replay edge cases") {
    Instance inst = worked_example();
    UtilityProfile u = utilities_of({{7, 6, 0}, {2, 3, 1}, {1, 3, 2}});

    ReplayResult empty = replay_path(inst, u, {});
    CHECK(empty.steps.empty());
    CHECK_FALSE(empty.repeats_step.has_value());
    CHECK(empty.eu_initial.size() == 3);

    // Re-reporting the current order changes nothing and improves nothing.
    ReplayResult stay = replay_path(inst, u, {{1, inst.profile[1]}});
    REQUIRE(stay.steps.size() == 1);
    CHECK_FALSE(stay.steps[0].eu_strictly_improves);
    CHECK_FALSE(stay.steps[0].dl_strictly_improves);
    CHECK(stay.repeats_step.has_value());  // the "new" profile equals the initial one

    CHECK_THROWS_AS(replay_path(inst, u, {{5, inst.profile[0]}}), DomainError);
    CHECK_THROWS_AS(replay_path(inst, u, {{0, LinearOrder{{0, 0, 1}}}}), DomainError);
}
