#include <doctest.h>

#include "helpers.hpp"
#include "pslab/ps.hpp"

using namespace testutil;
using namespace pslab;

TEST_CASE("instance validation") {
    Instance good = worked_example();
    CHECK_NOTHROW(good.validate());

    Instance bad = good;
    bad.profile[0].ranking = {0, 1, 1};
    CHECK_THROWS_AS(bad.validate(), DomainError);

    Instance short_order = good;
    short_order.profile[2].ranking = {0, 1};
    CHECK_THROWS_AS(short_order.validate(), DomainError);

    Instance empty;
    CHECK_THROWS_AS(empty.validate(), DomainError);

    // Unequal n and m is fine.
    Instance uneven = instance_of({{0, 1, 2}, {2, 1, 0}});
    CHECK_NOTHROW(uneven.validate());
}

TEST_CASE("assignment validator catches each violation") {
    Assignment a(2, 2);
    a.cells = {rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    CHECK_NOTHROW(a.validate());

    Assignment range = a;
    range.cells[0] = rat(3, 2);
    CHECK_THROWS_WITH_AS(range.validate(), doctest::Contains("outside"), DomainError);

    Assignment colsum = a;
    colsum.cells[0] = rat(1, 3);
    CHECK_THROWS_WITH_AS(colsum.validate(), doctest::Contains("column"), DomainError);

    // Columns fine, rows skewed: needs a non-square shape, rows must sum to 2.
    Assignment rows(2, 4);
    rows.cells = {rat(1), rat(1), rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)};
    CHECK_THROWS_WITH_AS(rows.validate(), doctest::Contains("row"), DomainError);
}

TEST_CASE("utility consistency validation") {
    Instance inst = worked_example();
    UtilityProfile u = utilities_of({{7, 6, 0}, {2, 3, 1}, {1, 3, 2}});
    CHECK(u.consistent_with(inst));

    UtilityProfile tie = u;
    tie.at(0, 0) = rat(6);  // u1(h1) == u1(h2) but agent 1 ranks h1 first
    CHECK_FALSE(tie.consistent_with(inst));

    UtilityProfile wrong_direction = u;
    wrong_direction.at(2, 0) = rat(9);  // agent 3 ranks h1 last
    CHECK_FALSE(wrong_direction.consistent_with(inst));

    UtilityProfile negative = u;
    negative.at(0, 2) = rat(-1);
    CHECK_FALSE(negative.consistent_with(inst));
}

TEST_CASE("borda utilities are consistent") {
    Instance inst = cycle_instance();
    UtilityProfile u = borda_utilities(inst);
    CHECK(u.consistent_with(inst));
    // Agent 1 ranks h2 first out of five houses.
    CHECK(u.at(0, 1) == rat(4));
    CHECK(u.at(0, 0) == rat(0));
}

TEST_CASE("social welfare on the worked example") {
    Instance inst = worked_example();
    Assignment a = run_ps(inst).assignment;
    // Agent 1 contributes (3/4)*7 + 0*6 + (1/4)*0 = 21/4.
    UtilityProfile only_agent1(3, 3);
    only_agent1.cells = {rat(7), rat(6), rat(0), rat(0), rat(0),
                         rat(0), rat(0), rat(0), rat(0)};
    CHECK(social_welfare(a, only_agent1) == rat(21, 4));

    // All-zero utilities: unchecked arithmetic path gives 0.
    UtilityProfile zeros(3, 3);
    CHECK(social_welfare(a, zeros) == Rational(0));

    // Uniform assignment with per-agent utilities summing to m gives m.
    Assignment uniform(3, 3);
    for (auto& c : uniform.cells) c = rat(1, 3);
    UtilityProfile normalized(3, 3);
    normalized.cells = {rat(2), rat(1, 2), rat(1, 2), rat(3, 2), rat(1),
                        rat(1, 2), rat(1), rat(1), rat(1)};
    CHECK(social_welfare(uniform, normalized) == Rational(3));

    UtilityProfile mismatched(2, 3);
    CHECK_THROWS_AS(social_welfare(a, mismatched), DomainError);
}

TEST_CASE("social welfare is linear in utilities") {
    Instance inst = worked_example();
    Assignment a = run_ps(inst).assignment;
    Rng rng(5150);
    for (int iter = 0; iter < 50; ++iter) {
        UtilityProfile u(3, 3);
        for (auto& c : u.cells)
            c = rat(static_cast<long long>(rng.below(100)), 1 + static_cast<long long>(rng.below(9)));
        Rational alpha =
            rat(static_cast<long long>(rng.below(50)), 1 + static_cast<long long>(rng.below(7)));
        UtilityProfile scaled = u;
        for (auto& c : scaled.cells) c *= alpha;
        CHECK(social_welfare(a, scaled) == alpha * social_welfare(a, u));
    }
}

TEST_CASE("welfare classification is exact") {
    WelfareReport report;
    report.sw_truthful = rat(21, 4);
    WelfareRecord same = report.classify(0, rat(21, 4));
    CHECK(same.cls == WelfareClass::Equal);
    CHECK(same.pct_change == Rational(0));

    WelfareRecord up = report.classify(1, rat(11, 2));
    CHECK(up.cls == WelfareClass::Increase);
    // |11/2 - 21/4| / (21/4) * 100 = (1/4)/(21/4)*100 = 100/21
    CHECK(up.pct_change == rat(100, 21));

    WelfareRecord down = report.classify(2, rat(5));
    CHECK(down.cls == WelfareClass::Decrease);
    CHECK(down.pct_change == rat(100, 21));
}

TEST_CASE("instance json round-trip with and without utilities") {
    Instance inst = worked_example();
    UtilityProfile u = utilities_of({{7, 6, 0}, {2, 3, 1}, {1, 3, 2}});
    u.at(0, 0) = rat(7, 2);

    std::string with_utils = instance_to_json(inst, &u);
    ParsedInstance parsed = instance_from_json(with_utils);
    CHECK(parsed.instance.n == 3);
    CHECK(parsed.instance.profile == inst.profile);
    REQUIRE(parsed.utilities.has_value());
    CHECK(parsed.utilities->cells == u.cells);

    std::string bare = instance_to_json(inst);
    ParsedInstance parsed2 = instance_from_json(bare);
    CHECK_FALSE(parsed2.utilities.has_value());
    CHECK(instance_to_json(parsed2.instance) == bare);

    CHECK_THROWS_AS(instance_from_json("{"), ParseError);
    CHECK_THROWS_AS(instance_from_json("{\"n\":1,\"m\":2}"), ParseError);
    CHECK_THROWS_AS(instance_from_json("{\"n\":1,\"m\":2,\"preferences\":[[0,0]]}"), DomainError);
}

TEST_CASE("rendering uses 1-based house names") {
    CHECK(house_name(0) == "h1");
    CHECK(LinearOrder{{1, 0, 2}}.to_string() == "h2,h1,h3");
    CHECK(profile_to_string({LinearOrder{{0, 1}}, LinearOrder{{1, 0}}}) == "h1,h2 | h2,h1");
}
