#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "quiverbelt/rank2.hpp"

using namespace qb;
using oracle::kPi;

namespace {

// Pairing (v, u) for v along direction j pi/b and u along q pi/(2b).
double pairing(long b, long j, long q) { return std::cos(j * kPi / b - q * kPi / (2.0 * b)); }

bool critical(long b, long q) {
    for (long j = 0; j < 2 * b; ++j)
        if (std::fabs(pairing(b, j, q)) < 1e-9) return true;
    return false;
}

}  // namespace

TEST_CASE("periods of the small examples") {
    auto s13 = initial_sector(1, 3);
    long good = -1, bad = -1;
    for (long q = 0; q < 12; ++q) {
        if (critical(3, q)) continue;
        auto u = ReferencePoint2D::direction(q);
        (is_compatible(u, s13) ? good : bad) = q;
    }
    REQUIRE(good >= 0);
    REQUIRE(bad >= 0);
    CHECK(orbit_period(s13, ReferencePoint2D::direction(good)).period == 5);
    CHECK(orbit_period(s13, ReferencePoint2D::direction(bad)).period == 7);
    for (auto [b, p] : {std::pair{4L, 6L}, std::pair{6L, 8L}}) {
        auto s = initial_sector(1, b);
        for (long q = 0; q < 4 * b; ++q) {
            if (critical(b, q)) continue;
            auto u = ReferencePoint2D::direction(q);
            if (is_compatible(u, s)) CHECK(orbit_period(s, u).period == p);
        }
    }
}

TEST_CASE("period formula") {
    CHECK(period_formula(1, 3, true, true) == 5);
    CHECK(period_formula(1, 3, false, true) == 7);
    CHECK(period_formula(2, 5, false, true) == 11);
    CHECK(period_formula(2, 5, true, false) == 9);
}

TEST_CASE("orbit periods on the full grid") {
    int cases = 0;
    for (long b = 3; b <= 24; ++b)
        for (long a = 1; 2 * a < b; ++a) {
            if (std::gcd(a, b) != 1) continue;
            auto s = initial_sector(a, b);
            int sampled = 0;
            for (long q = 0; q < 4 * b; ++q) {
                auto u = ReferencePoint2D::direction(q);
                if (critical(b, q)) {
                    CHECK_THROWS_AS(orbit_period(s, u), Error);
                    continue;
                }
                ++sampled;
                ++cases;
                // Positive means (v, u) < 0.
                bool w0 = pairing(b, s.j1, q) < 0, w1 = pairing(b, s.j2, q) < 0;
                long want = (!w0 && w1) ? 3 * b - 2 * a : b + 2 * a;
                auto o = orbit_period(s, u);
                CHECK(o.period == want);
                CHECK(o.period == period_formula(a, b, w0, w1));
                CHECK(is_compatible(u, s) == !(!w0 && w1));
                CHECK(o.lazy_paired);
                CHECK(o.lazy_count % 2 == 0);
                CHECK(turning_check(s, u).ok);
            }
            // Exact rational points at generic angles.
            for (int j = 0; j < 16; ++j) {
                double th = 2 * kPi * (j + 0.31) / 16;
                Rational x(std::cos(th)), y(std::sin(th));
                bool crit = false;
                for (long i = 0; i < 2 * b; ++i)
                    if (std::fabs(std::cos(i * kPi / b - th)) < 1e-9) crit = true;
                if (crit) continue;
                auto u = ReferencePoint2D::point(x, y);
                bool w0 = std::cos(s.j1 * kPi / b - th) < 0, w1 = std::cos(s.j2 * kPi / b - th) < 0;
                CHECK(orbit_period(s, u).period == ((!w0 && w1) ? 3 * b - 2 * a : b + 2 * a));
                ++sampled;
            }
            CHECK(sampled >= 8);
        }
    CHECK(cases > 1000);
}

TEST_CASE("lazy steps come in adjacent pairs") {
    auto s = initial_sector(2, 7);
    for (long q = 1; q < 28; q += 2) {
        if (critical(7, q)) continue;
        auto o = orbit_period(s, ReferencePoint2D::direction(q));
        std::vector<bool> lazy(o.period, false);
        for (long k : o.lazy_steps) lazy[k] = true;
        for (long k = 0; k < o.period; ++k)
            if (lazy[k]) CHECK((lazy[(k + 1) % o.period] || lazy[(k + o.period - 1) % o.period]));
    }
}

TEST_CASE("compatibility regions") {
    auto s = initial_sector(1, 3);
    // Both normals pair negatively with u: u lies in the seed's own cone.
    int inside = 0, forbidden = 0;
    for (long q = 0; q < 12; ++q) {
        if (critical(3, q)) continue;
        double p1 = pairing(3, s.j1, q), p2 = pairing(3, s.j2, q);
        auto u = ReferencePoint2D::direction(q);
        if (p1 < 0 && p2 < 0) {
            CHECK(is_compatible(u, s));
            ++inside;
        }
        if (p1 > 0 && p2 < 0) {
            CHECK_FALSE(is_compatible(u, s));
            ++forbidden;
        }
    }
    CHECK(inside > 0);
    CHECK(forbidden > 0);
    // A boundary direction is rejected.
    for (long q = 0; q < 12; ++q)
        if (std::fabs(pairing(3, s.j1, q)) < 1e-9) CHECK_THROWS_AS(is_compatible(ReferencePoint2D::direction(q), s), Error);
}

TEST_CASE("exact point references agree with directions") {
    auto s = initial_sector(1, 4);
    // (1, 1/3) is not perpendicular to any multiple of pi/4.
    auto u = ReferencePoint2D::point(Rational(1), Rational(1, 3));
    double ang = std::atan2(1.0 / 3, 1.0);
    bool w0 = std::cos(s.j1 * kPi / 4 - ang) < 0, w1 = std::cos(s.j2 * kPi / 4 - ang) < 0;
    CHECK(orbit_period(s, u).period == period_formula(1, 4, w0, w1));
}
