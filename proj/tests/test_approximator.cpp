#include <doctest.h>

#include "helpers.hpp"
#include "tsplit/approximator.hpp"

using namespace tsplit;
using tsplit_tests::make;
using tsplit_tests::make_real;

namespace {

void check_result(const ApproxResult& r, const Partition& target, int n, DistanceKind kind)
{
    CHECK(complexity(r.approx) == r.rule_count);
    CHECK(r.rule_count <= n);
    CHECK(static_cast<int>(r.table.rules.size()) == r.rule_count);
    CHECK(distance(r.approx, target, kind) == r.error);
    CHECK(table_induced_partition(r.table) == r.approx);
}

void check_result(const ApproxResult& r, const RealPartition& target, int n, DistanceKind kind)
{
    CHECK(complexity(r.approx) == r.rule_count);
    CHECK(r.rule_count <= n);
    CHECK(distance(r.approx, target, kind) == r.error);
}

}  // namespace

TEST_CASE("bounded_error_linf on known instances")
{
    // Huge radius: everything is inside, so one rule suffices.
    auto y = bounded_error_linf(make({3, 3, 2}, 3), Rational(9));
    REQUIRE(y.has_value());
    CHECK(complexity(*y) == 1);

    // Open ball of radius 6 around [11,4,1] contains [16,0,0] (distance 5),
    // so the minimum lambda is 1 -- smaller than the illustrative lambda-3
    // witness [8,4,4], which is in the ball but not optimal.
    Partition p = make({11, 4, 1}, 4);
    y = bounded_error_linf(p, Rational(6));
    REQUIRE(y.has_value());
    CHECK(distance(*y, p, DistanceKind::Linf) < 6);
    CHECK(complexity(*y) == 1);
    for (std::int64_t v : y->parts)
        CHECK(v % 4 == 0);  // witness coordinates live on the 2^h lattice
    // Cross-check the claimed minimum by enumeration.
    int best = 99;
    Partition cand;
    cand.width = 4;
    enumerate_compositions(16, 3, [&](const std::vector<std::int64_t>& parts) {
        cand.parts = parts;
        if (distance(cand, p, DistanceKind::Linf) < 6)
            best = std::min(best, complexity(cand));
    });
    CHECK(best == 1);
    // [8,4,4] is indeed inside the ball with lambda 3, just not minimal.
    CHECK(distance(make({8, 4, 4}, 4), p, DistanceKind::Linf) == 3);
    CHECK(complexity(make({8, 4, 4}, 4)) == 3);

    p = make({4, 1, 1, 1, 1}, 3);
    y = bounded_error_linf(p, Rational(3));
    REQUIRE(y.has_value());
    CHECK(complexity(*y) == 2);
    CHECK(distance(*y, p, DistanceKind::Linf) == 2);

    CHECK_THROWS(bounded_error_linf(p, Rational(0)));
}

TEST_CASE("bounded_error_linf minimizes lambda over exhaustive radii")
{
    Partition cand;
    for (int w = 2; w <= 4; ++w) {
        cand.width = w;
        Partition p;
        p.width = w;
        std::mt19937_64 rng(100 + w);
        for (int iter = 0; iter < 30; ++iter) {
            p = sample_ordered_partition(3, w, rng);
            for (std::int64_t e = 1; e <= pow2(w) + 1; ++e) {
                auto y = bounded_error_linf(p, Rational(e));
                int best = -1;
                enumerate_compositions(pow2(w), 3, [&](const std::vector<std::int64_t>& parts) {
                    cand.parts = parts;
                    if (distance(cand, p, DistanceKind::Linf) < e) {
                        int l = complexity(cand);
                        if (best < 0 || l < best)
                            best = l;
                    }
                });
                if (best < 0) {
                    CHECK_FALSE(y.has_value());
                } else {
                    REQUIRE(y.has_value());
                    CHECK(distance(*y, p, DistanceKind::Linf) < e);
                    CHECK(complexity(*y) == best);
                }
            }
        }
    }
}

TEST_CASE("bounded_error_one_sided on known instances")
{
    Partition p = make({4, 1, 1, 1, 1}, 3);
    auto y = bounded_error_one_sided(p, Rational(100), DistanceKind::LinfPlus);
    REQUIRE(y.has_value());
    CHECK(complexity(*y) == 1);

    // Just above 3/4 relative overload admits [7,1,0,0,0] with two rules.
    y = bounded_error_one_sided(p, Rational(3, 4) + Rational(1, 100), DistanceKind::LinfRelPlus);
    REQUIRE(y.has_value());
    CHECK(*y == make({7, 1, 0, 0, 0}, 3));
    CHECK(complexity(*y) == 2);

    Partition q = make({2, 3, 3}, 3);
    y = bounded_error_one_sided(q, Rational(1) + Rational(1, 1000), DistanceKind::LinfPlus);
    REQUIRE(y.has_value());
    CHECK(*y == make({0, 4, 4}, 3));
    CHECK(complexity(*y) == 2);

    // any overload radius > 0 admits the (integer) target itself
    y = bounded_error_one_sided(q, Rational(1, 2), DistanceKind::LinfPlus);
    REQUIRE(y.has_value());
    CHECK(*y == q);
    CHECK_THROWS(bounded_error_one_sided(q, Rational(1), DistanceKind::Linf));
}

TEST_CASE("one-sided capacity formula matches the non-integer examples")
{
    // ceil(p_i + e) - 1 over P = [5.7, 5.2, 5.1]
    std::vector<Rational> parts = {Rational(57, 10), Rational(52, 10), Rational(51, 10)};
    auto caps_for = [&](const Rational& e) {
        std::vector<std::int64_t> caps;
        for (const Rational& p : parts)
            caps.push_back(to_int64(rational_ceil(p + e) - 1));
        return caps;
    };
    CHECK(caps_for(Rational(6)) == std::vector<std::int64_t>{11, 11, 11});
    CHECK(caps_for(Rational(11, 2)) == std::vector<std::int64_t>{11, 10, 10});
    CHECK(caps_for(Rational(51, 10)) == std::vector<std::int64_t>{10, 10, 10});

    RealPartition rp = make_real(parts, 4);
    auto y = bounded_error_one_sided(rp, Rational(51, 10), DistanceKind::LinfPlus);
    REQUIRE(y.has_value());
    CHECK(distance(*y, rp, DistanceKind::LinfPlus) < Rational(51, 10));
    for (std::int64_t v : y->parts)
        CHECK(v <= 10);
}

TEST_CASE("closest on the five-target reference partition")
{
    Partition p = make({4, 1, 1, 1, 1}, 3);
    SUBCASE("exact when the budget allows")
    {
        ApproxResult r = closest(p, 5, DistanceKind::Linf);
        CHECK(r.error == 0);
        CHECK(r.approx == p);
        check_result(r, p, 5, DistanceKind::Linf);
    }
    SUBCASE("two rules")
    {
        ApproxResult r = closest(p, 2, DistanceKind::Linf);
        CHECK(r.error == 2);
        check_result(r, p, 2, DistanceKind::Linf);
        r = closest(p, 2, DistanceKind::LinfPlus);
        CHECK(r.error == 2);
        check_result(r, p, 2, DistanceKind::LinfPlus);
        r = closest(p, 2, DistanceKind::LinfRelPlus);
        CHECK(r.error == Rational(3, 4));
        check_result(r, p, 2, DistanceKind::LinfRelPlus);
    }
}

TEST_CASE("closest on the one-sided showcase [2,3,3]")
{
    Partition p = make({2, 3, 3}, 3);
    CHECK(closest(p, 2, DistanceKind::LinfPlus).error == 1);
    CHECK(closest(p, 2, DistanceKind::Linf).error == 2);
}

TEST_CASE("closest micro-table k=2 W=2 n=1")
{
    std::vector<std::vector<std::int64_t>> parts = {{1, 3}, {2, 2}, {3, 1}};
    std::vector<Rational> linf = {1, 2, 1};
    std::vector<Rational> rel = {Rational(1, 3), 1, Rational(1, 3)};
    for (size_t i = 0; i < parts.size(); ++i) {
        Partition p = make(parts[i], 2);
        CHECK(closest(p, 1, DistanceKind::Linf).error == linf[i]);
        CHECK(closest(p, 1, DistanceKind::LinfPlus).error == linf[i]);
        CHECK(closest(p, 1, DistanceKind::LinfRelPlus).error == rel[i]);
        for (DistanceKind kind :
             {DistanceKind::Linf, DistanceKind::LinfPlus, DistanceKind::LinfRelPlus})
            CHECK(closest(p, 2, kind).error == 0);
    }
}

TEST_CASE("closest error is monotone in the budget")
{
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 20; ++iter) {
        Partition p = sample_ordered_partition(5, 6, rng);
        for (DistanceKind kind :
             {DistanceKind::Linf, DistanceKind::LinfPlus, DistanceKind::LinfRelPlus}) {
            ErrorValue prev;
            bool first = true;
            for (int n = 1; n <= complexity(p); ++n) {
                ApproxResult r = closest(p, n, kind);
                check_result(r, p, n, kind);
                if (!first)
                    CHECK(r.error <= prev);
                prev = r.error;
                first = false;
            }
            CHECK(prev == 0);
        }
    }
}

TEST_CASE("closest agrees with brute force, exhaustive W <= 4, k <= 3")
{
    for (int w = 2; w <= 4; ++w) {
        for (int k = 2; k <= 3; ++k) {
            Partition p;
            p.width = w;
            enumerate_compositions(pow2(w), k, [&](const std::vector<std::int64_t>& parts) {
                p.parts = parts;
                bool positive = std::all_of(parts.begin(), parts.end(),
                                            [](std::int64_t v) { return v > 0; });
                int lambda = complexity(p);
                for (int n = 1; n <= lambda; ++n) {
                    for (DistanceKind kind :
                         {DistanceKind::Linf, DistanceKind::LinfPlus, DistanceKind::LinfRelPlus}) {
                        if (kind == DistanceKind::LinfRelPlus && !positive)
                            continue;
                        ApproxResult fast = closest(p, n, kind);
                        ApproxResult slow = brute_force_closest(p, n, kind);
                        REQUIRE_MESSAGE(fast.error == slow.error, "W=", w, " k=", k, " n=", n,
                                        " kind=", to_string(kind));
                    }
                }
            });
        }
    }
}

TEST_CASE("closest_real delegates for integer-valued input")
{
    RealPartition rp = make_real({Rational(4), Rational(1), Rational(1), Rational(1), Rational(1)}, 3);
    ApproxResult real = closest_real(rp, 2, DistanceKind::Linf);
    ApproxResult integer = closest(make({4, 1, 1, 1, 1}, 3), 2, DistanceKind::Linf);
    CHECK(real.error == integer.error);
    CHECK(real.approx == integer.approx);
}

TEST_CASE("closest_real agrees with brute force on random rational targets")
{
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        int w = 2 + static_cast<int>(rng() % 4);  // W in [2,5]
        int k = 2 + static_cast<int>(rng() % 2);  // k in [2,3]
        std::int64_t den = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        // positive rational parts with denominator den, summing to 2^W
        RealPartition target;
        target.width = w;
        std::vector<std::int64_t> nums(k);
        std::int64_t left = pow2(w) * den;
        for (int i = 0; i < k - 1; ++i) {
            nums[i] = 1 + static_cast<std::int64_t>(rng() % (left - (k - i)));
            left -= nums[i];
        }
        nums[k - 1] = left;
        for (int i = 0; i < k; ++i)
            target.parts.push_back(Rational(nums[i], den));
        validate(target);
        for (int n = 1; n <= w + 2; ++n) {
            for (DistanceKind kind :
                 {DistanceKind::Linf, DistanceKind::LinfPlus, DistanceKind::LinfRelPlus}) {
                ApproxResult fast = closest_real(target, n, kind);
                ApproxResult slow = brute_force_closest(target, n, kind);
                check_result(fast, target, n, kind);
                REQUIRE_MESSAGE(fast.error == slow.error, "n=", n, " kind=", to_string(kind),
                                " target=", format_partition(target));
            }
        }
    }
}

TEST_CASE("normalize_to_width")
{
    CHECK(normalize_to_width({1, 1}, 2) == make_real({Rational(2), Rational(2)}, 2));
    CHECK(normalize_to_width({1, 2, 5}, 3) ==
          make_real({Rational(1), Rational(2), Rational(5)}, 3));
    auto p = normalize_to_width({1, 1, 1}, 3);
    CHECK(p.parts[0] == Rational(8, 3));
    CHECK_THROWS(normalize_to_width({0, 2}, 3));
    CHECK_THROWS(normalize_to_width({}, 3));
}
