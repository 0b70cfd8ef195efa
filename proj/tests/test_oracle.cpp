#include <doctest.h>

#include "helpers.hpp"

using namespace tsplit;
using tsplit_tests::make;

TEST_CASE("enumerate_compositions counts and sums")
{
    int count = 0;
    enumerate_compositions(4, 3, [&](const std::vector<std::int64_t>& parts) {
        ++count;
        CHECK(parts.size() == 3);
        CHECK(parts[0] + parts[1] + parts[2] == 4);
    });
    CHECK(count == 15);  // C(6,2)
    count = 0;
    enumerate_compositions(0, 2, [&](const std::vector<std::int64_t>&) { ++count; });
    CHECK(count == 1);
}

TEST_CASE("brute_force_complexity base cases")
{
    CHECK(brute_force_complexity(make({8}, 3)) == 1);
    CHECK(brute_force_complexity(make({2, 2}, 2)) == 2);
    CHECK(brute_force_complexity(make({4, 3, 1}, 3)) == complexity(make({4, 3, 1}, 3)));
}

TEST_CASE("brute_force_complexity agrees with bit_matcher on its whole domain")
{
    for (int w = 1; w <= 3; ++w) {
        for (int k = 1; k <= 3; ++k) {
            Partition p;
            p.width = w;
            enumerate_compositions(pow2(w), k, [&](const std::vector<std::int64_t>& parts) {
                p.parts = parts;
                REQUIRE_MESSAGE(brute_force_complexity(p) == complexity(p), format_partition(p));
            });
        }
    }
}

TEST_CASE("brute_force_complexity guards its domain")
{
    CHECK_THROWS(brute_force_complexity(make({8, 4, 4}, 4)));
    CHECK_THROWS(brute_force_complexity(make({2, 2, 2, 2}, 3)));
}

TEST_CASE("brute_force_lifting")
{
    // zero excess returns the weights unchanged
    auto y = brute_force_lifting({{2, 6}, {1, 1}, 3});
    REQUIRE(y.has_value());
    CHECK(*y == Lifting{2, 6});

    // the counter-example instance: best lambda is 4
    auto cx = brute_force_lifting({{2, 4, 6, 1}, {1, 3, 0, 0}, 4});
    REQUIRE(cx.has_value());
    Partition p;
    p.parts = *cx;
    p.width = 4;
    CHECK(complexity(p) == 4);

    CHECK_FALSE(brute_force_lifting({{1, 1}, {1, 1}, 3}).has_value());

    OracleBudget tiny;
    tiny.max_states = 10;
    CHECK_THROWS(brute_force_lifting({{0, 0, 0}, {16, 16, 16}, 4}, tiny));
}

TEST_CASE("brute_force_closest")
{
    Partition p = make({4, 1, 1, 1, 1}, 3);
    CHECK(brute_force_closest(p, 5, DistanceKind::Linf).error == 0);
    CHECK(brute_force_closest(p, 2, DistanceKind::Linf).error == 2);
    CHECK(brute_force_closest(p, 2, DistanceKind::LinfRelPlus).error == Rational(3, 4));

    OracleBudget tiny;
    tiny.max_states = 5;
    CHECK_THROWS(brute_force_closest(p, 2, DistanceKind::Linf, tiny));
}
