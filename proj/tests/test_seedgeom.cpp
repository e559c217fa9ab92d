#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "quiverbelt/exgraph.hpp"
#include "quiverbelt/seedgeom.hpp"

using namespace qb;
using oracle::kPi;

namespace {

struct P2 {
    double x, y;
};

P2 real(const PlanarSeed& s, const PlanarPoint& p) {
    return {p.x.to_double(), p.y.to_double() * std::sin(kPi / s.d())};
}

double dist(P2 a, P2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Interior angle at vertex a of triangle abc, in units of pi/d.
double angle_units(P2 a, P2 b, P2 c, int d) {
    double ux = b.x - a.x, uy = b.y - a.y, vx = c.x - a.x, vy = c.y - a.y;
    double ang = std::acos((ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy)));
    return ang / (kPi / d);
}

std::multiset<long> angle_set(const PlanarSeed& s) {
    auto a = s.angles();
    return {a[0], a[1], a[2]};
}

// Real value of the line function S x - C y - h at a real point.
double line_eval(const PlanarSeed& s, const PlanarLine& l, P2 p) {
    double t = l.m * kPi / s.d();
    return (std::sin(t) * p.x - std::cos(t) * p.y) / std::sin(kPi / s.d()) - l.h.to_double();
}

}  // namespace

TEST_CASE("realisation of a spherical matrix") {
    auto any = realize(spherical_matrix(1, 3, 1, 3));
    REQUIRE(std::holds_alternative<SphericalSeed>(any));
    const auto& s = std::get<SphericalSeed>(any);
    CHECK(s.pairing(0, 1).abs() == FieldElem::rational(3, 1));
    CHECK(s.pairing(1, 2).abs() == FieldElem::rational(3, 1));
    CHECK(s.pairing(0, 2).is_zero());
    for (int i = 0; i < 3; ++i) CHECK(s.pairing(i, i) == FieldElem::rational(3, 2));
    CHECK(spherical_invariants_hold(s));
}

TEST_CASE("realisation of affine and excluded classes") {
    auto any = realize(affine_triple_matrix(5));
    REQUIRE(std::holds_alternative<PlanarSeed>(any));
    CHECK(angle_set(std::get<PlanarSeed>(any)) == std::multiset<long>{1, 2, 2});
    try {
        realize(markov_matrix());
        FAIL("expected UnsupportedClass");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedClass);
    }
}

TEST_CASE("spherical mutation is an involution and keeps the Gram conditions") {
    for (auto p : {std::array<long, 4>{1, 3, 1, 3}, {1, 3, 1, 4}, {1, 3, 1, 5}, {1, 3, 2, 5}, {1, 5, 2, 5}}) {
        auto run = enumerate_spherical(spherical_matrix(p[0], p[1], p[2], p[3]), 3);
        REQUIRE(run.graph.closed);
        for (const auto& s : run.graph.seeds) {
            CHECK(spherical_invariants_hold(s));
            for (int k = 0; k < 3; ++k) {
                SphericalSeed t = seed_mutate(s, k);
                CHECK(spherical_invariants_hold(t));
                CHECK(seed_mutate(t, k).key() == s.key());
            }
        }
    }
}

TEST_CASE("spherical closure with the canonical reference") {
    auto B = spherical_matrix(1, 3, 1, 3);
    SphericalSeed s0 = spherical_initial(B, {Rational(1), Rational(1), Rational(1)});
    auto g = bfs_spherical(s0);
    CHECK(g.closed);
    // Catalan number C_4 = 14 vertices of the three-dimensional associahedron.
    long catalan = 1;
    for (int k = 0; k < 4; ++k) catalan = catalan * 2 * (2 * k + 1) / (k + 2);
    CHECK(g.size() == catalan);
}

TEST_CASE("initial triangles") {
    auto check_angles = [](int d, std::multiset<long> want) {
        PlanarSeed s = initial_seed(d);
        CHECK(s.kind() == RegionKind::Triangle);
        CHECK(angle_set(s) == want);
        // The stored angles agree with coordinates.
        P2 v[3];
        for (int k = 0; k < 3; ++k) v[k] = real(s, *s.vertex(k));
        for (int k = 0; k < 3; ++k)
            CHECK(angle_units(v[k], v[(k + 1) % 3], v[(k + 2) % 3], d) == doctest::Approx(s.angle(k)).epsilon(1e-9));
        CHECK(is_acyclic(s.B));
    };
    check_angles(5, {1, 2, 2});
    check_angles(3, {1, 1, 1});
    check_angles(6, {1, 2, 3});
    check_angles(7, {1, 3, 3});
    check_angles(8, {1, 3, 4});
    for (int d = 3; d <= 12; ++d) {
        PlanarSeed s = initial_seed(d);
        FieldElem longest = FieldElem::zero(d);
        for (int k = 0; k < 3; ++k)
            if (compare(side_length(s, k), longest) > 0) longest = side_length(s, k);
        CHECK(longest == FieldElem::one(d));
    }
}

TEST_CASE("invariant T of the initial triangle") {
    // With the longest side of unit length, T = sin(pi/d) sin(n pi/d) for odd d.
    for (int d = 3; d <= 13; d += 2) {
        double want = std::sin(kPi / d) * std::sin((d / 2) * kPi / d);
        CHECK(t_invariant(initial_seed(d)).to_double() == doctest::Approx(want).epsilon(1e-12));
    }
    // For d = 5 this is sqrt(5)/4.
    FieldElem t5 = t_invariant(initial_seed(5));
    CHECK(t5 * t5 * FieldElem::rational(5, 16) == FieldElem::rational(5, 5));
}

TEST_CASE("T from each side agrees and from coordinates") {
    for (int d : {4, 5, 6, 7}) {
        auto g = bfs_planar(initial_seed(d), 6);
        for (const auto& s : g.seeds) {
            if (s.kind() != RegionKind::Triangle) continue;
            FieldElem T = t_invariant(s);
            auto a = s.angles();
            for (int k = 0; k < 3; ++k) {
                long p = a[(k + 1) % 3], q = a[(k + 2) % 3];
                // sin(P) sin(Q) = (2cos(P - Q) - 2cos(P + Q)) / 4.
                FieldElem sines = (cos_multiple(d, p - q) - cos_multiple(d, p + q)).scaled(Rational(1, 4));
                CHECK(side_length(s, k) * sines == T);
            }
            P2 v[3];
            for (int k = 0; k < 3; ++k) v[k] = real(s, *s.vertex(k));
            double a0 = dist(v[1], v[2]);
            double want = a0 * std::sin(a[1] * kPi / d) * std::sin(a[2] * kPi / d);
            CHECK(T.to_double() == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("T is conserved by mutation") {
    for (int d : {3, 4, 5, 6, 7, 8, 9}) {
        auto g = bfs_planar(initial_seed(d), d <= 7 ? 8 : 6);
        FieldElem T0 = t_invariant(g.seeds[0]);
        for (const auto& e : g.edges) {
            CHECK(t_invariant(g.seeds[e.u]) == t_invariant(g.seeds[e.v]));
        }
        for (const auto& s : g.seeds) CHECK(t_invariant(s) == T0);
    }
}

TEST_CASE("orthic perimeter is twice T") {
    for (int d : {3, 5, 7, 9}) {
        auto g = bfs_planar(initial_seed(d), 6);
        int acute = 0;
        for (const auto& s : g.seeds) {
            if (s.kind() != RegionKind::Triangle || s.is_obtuse()) continue;
            ++acute;
            CHECK(orthic_perimeter(s) == t_invariant(s).scaled(2));
            // Numeric: feet of the altitudes from the coordinates.
            P2 v[3];
            for (int k = 0; k < 3; ++k) v[k] = real(s, *s.vertex(k));
            auto foot = [](P2 p, P2 a, P2 b) {
                double dx = b.x - a.x, dy = b.y - a.y;
                double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
                return P2{a.x + t * dx, a.y + t * dy};
            };
            P2 h0 = foot(v[0], v[1], v[2]), h1 = foot(v[1], v[2], v[0]), h2 = foot(v[2], v[0], v[1]);
            CHECK(dist(h0, h1) + dist(h1, h2) + dist(h2, h0) == doctest::Approx(2 * t_invariant(s).to_double()));
        }
        CHECK(acute > 0);
    }
}

TEST_CASE("planar mutation is an involution") {
    for (int d = 3; d <= 9; ++d) {
        auto g = bfs_planar(initial_seed(d), 10);
        for (const auto& s : g.seeds)
            for (int k = 0; k < 3; ++k) CHECK(planar_involution_holds(s, k));
    }
}

TEST_CASE("positivity against a far point of the belt") {
    for (int d : {3, 4, 5, 6, 7}) {
        auto g = bfs_planar(initial_seed(d), 7);
        const BeltLine& b = *g.seeds[0].belt;
        double t = b.line.m * kPi / d;
        P2 base = real(g.seeds[0], b.base);
        P2 far{base.x + 1e7 * std::cos(t), base.y + 1e7 * std::sin(t)};
        int ties = 0;
        for (const auto& s : g.seeds) {
            PlanarSeed r = reflected_across_belt(s);
            for (int k = 0; k < 3; ++k) {
                bool parallel = mod_floor(s.lines[k].m - b.line.m, d) == 0;
                if (parallel) ++ties;
                double f = line_eval(s, s.lines[k], parallel ? base : far);
                REQUIRE(std::fabs(f) > 1e-9);
                CHECK(s.positive(k) == (f < 0));
                double fr = line_eval(r, r.lines[k], mod_floor(r.lines[k].m - b.line.m, d) == 0 ? base : far);
                CHECK(r.positive(k) == (fr < 0));
            }
        }
        CHECK(ties > 0);
    }
    // The source of the initial quiver is positive.
    for (int d = 3; d <= 9; ++d) {
        PlanarSeed s = initial_seed(d);
        for (int k : sources(s.B)) CHECK(s.positive(k));
    }
}

TEST_CASE("belt line through the designated feet") {
    for (int d : {3, 4, 5, 6, 7}) {
        PlanarSeed s0 = initial_seed(d);
        BeltLine b = belt_line(s0);
        CHECK(on_line(*s0.ctx, b.line, b.base));
        auto feet = designated_feet(s0);
        REQUIRE(feet.size() == 2);
        for (const auto& f : feet) CHECK(on_line(*s0.ctx, b.line, f));
        CHECK(feet_on_belt(s0, b));
        // The reflected seed has the same belt.
        PlanarSeed r = reflected_across_belt(s0);
        CHECK(feet_on_belt(r, b));
    }
    // Equilateral case: the feet are midpoints of two sides.
    PlanarSeed e = initial_seed(3);
    auto feet = designated_feet(e);
    for (const auto& f : feet) {
        int on = 0;
        for (int k = 0; k < 3; ++k) {
            auto p = e.vertex((k + 1) % 3), q = e.vertex((k + 2) % 3);
            P2 m{(real(e, *p).x + real(e, *q).x) / 2, (real(e, *p).y + real(e, *q).y) / 2};
            if (dist(m, real(e, f)) < 1e-12) ++on;
        }
        CHECK(on == 1);
    }
    auto g5 = bfs_planar(initial_seed(5), 4);
    auto cyclic = std::find_if(g5.seeds.begin(), g5.seeds.end(), [](const PlanarSeed& s) { return !is_acyclic(s.B); });
    REQUIRE(cyclic != g5.seeds.end());
    try {
        belt_line(*cyclic);
        FAIL("expected NotAcyclic");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAcyclic);
    }
}

TEST_CASE("feet lie on the belt for every reachable seed") {
    for (int d : {5, 7}) {
        auto g = bfs_planar(initial_seed(d), 12);
        for (const auto& s : g.seeds) CHECK(feet_on_belt(s, *s.belt));
    }
    // A translate off the belt fails.
    PlanarSeed s0 = initial_seed(5);
    PlanarSeed shifted = translated(s0, PlanarPoint{FieldElem::zero(5), FieldElem::one(5)});
    CHECK_FALSE(feet_on_belt(shifted, *s0.belt));
}

TEST_CASE("acute triangles are exactly the acyclic ones") {
    for (int d : {3, 5, 7, 9}) {
        auto g = bfs_planar(initial_seed(d), d <= 7 ? 10 : 8);
        for (const auto& s : g.seeds) {
            if (s.kind() != RegionKind::Triangle) {
                CHECK_FALSE(is_acyclic(s.B));
                continue;
            }
            CHECK(s.is_obtuse() == !is_acyclic(s.B));
        }
    }
}

TEST_CASE("orientation towards the reference point") {
    for (int d : {3, 5, 7, 9}) {
        auto g = bfs_planar(initial_seed(d), d <= 7 ? 10 : 8);
        std::set<int> signatures;
        for (const auto& s : g.seeds) {
            if (s.kind() != RegionKind::Triangle) continue;
            auto o = orientation_data(s);
            REQUIRE(o.applicable);
            if (o.acyclic)
                CHECK(o.towards_reference);
            else
                signatures.insert(o.obtuse_signature);
        }
        // Level 3 has no obtuse triangles.
        CHECK(signatures.size() == (d == 3 ? 0u : 1u));
    }
}

TEST_CASE("side lengths") {
    for (int d : {4, 5, 6, 7}) {
        auto g = bfs_planar(initial_seed(d), 8);
        for (const auto& s : g.seeds) {
            if (s.kind() == RegionKind::Triangle) {
                P2 v[3];
                for (int k = 0; k < 3; ++k) v[k] = real(s, *s.vertex(k));
                for (int k = 0; k < 3; ++k) {
                    CHECK(side_length(s, k).to_double() ==
                          doctest::Approx(dist(v[(k + 1) % 3], v[(k + 2) % 3])).epsilon(1e-9));
                    CHECK(side_length(s, k) == predicted_side_length(s, k));
                }
            } else {
                auto rd = region_data(s);
                REQUIRE(rd.has_value());
                CHECK(side_length(s, rd->finite_side) == translation_length(d, rd->angle));
                CHECK(side_length(s, rd->finite_side).to_double() ==
                      doctest::Approx(dist(real(s, rd->p), real(s, rd->q))).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("translations between seeds") {
    PlanarSeed s0 = initial_seed(5);
    auto z = translation_between(s0, s0);
    REQUIRE(z.has_value());
    CHECK(z->w.x.is_zero());
    CHECK(z->w.y.is_zero());

    for (int d : {3, 5, 7}) {
        auto belt = acyclic_belt(initial_seed(d), 12);
        const int i0 = 12;
        FieldElem four_t = t_invariant(belt[i0]).scaled(4);
        for (int n = -6; n <= 0; ++n) {
            auto w = translation_between(belt[i0 + n], belt[i0 + n + 6]);
            REQUIRE(w.has_value());
            CHECK(w->parallel_to_belt);
            CHECK(w->length.abs() == four_t);
        }
        // Numeric length of the vector itself.
        auto w = translation_between(belt[i0], belt[i0 + 6]);
        double len = std::hypot(w->w.x.to_double(), w->w.y.to_double() * std::sin(kPi / d));
        CHECK(len == doctest::Approx(four_t.to_double()));
    }
    CHECK_FALSE(translation_between(initial_seed(5), planar_mutate(initial_seed(5), 0)).has_value());
}

TEST_CASE("translation commutes with mutation") {
    for (int d : {5, 7}) {
        auto belt = acyclic_belt(initial_seed(d), 6);
        auto w = translation_between(belt[6], belt[12]);
        REQUIRE(w.has_value());
        auto g = bfs_planar(initial_seed(d), 6);
        for (const auto& s : g.seeds)
            for (int k = 0; k < 3; ++k)
                CHECK(planar_mutate(translated(s, w->w), k).key() == translated(planar_mutate(s, k), w->w).key());
    }
}

TEST_CASE("coordinates stay exact along long walks") {
    PlanarSeed s = initial_seed(7);
    unsigned state = 12345;
    for (int step = 0; step < 200; ++step) {
        state = state * 1103515245u + 12345u;
        s = planar_mutate(s, static_cast<int>((state >> 16) % 3));
        for (const auto& l : s.lines) CHECK(l.h.level() == 7);
    }
    CHECK(feet_on_belt(s, *s.belt));
}
