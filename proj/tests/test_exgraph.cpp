#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "quiverbelt/exgraph.hpp"
#include "quiverbelt/serialize.hpp"

using namespace qb;

namespace {

template <class G>
void check_three_regular(const G& g) {
    std::vector<int> degree(g.size(), 0);
    for (const auto& e : g.edges) {
        CHECK(e.u != e.v);
        ++degree[e.u];
        ++degree[e.v];
    }
    for (int v = 0; v < g.size(); ++v) {
        CHECK(degree[v] == 3);
        CHECK(g.find(g.keys[v]) == std::optional<int>(v));
    }
}

long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("finite type graphs close and are three-regular") {
    struct Case {
        long p1, q1, p2, q2;
        long oracle;  // -1 when no closed formula is used
    };
    // A3: Catalan(4); B3: binomial(6, 3); H3: 32.
    const Case cases[] = {{1, 3, 1, 3, binomial(8, 4) / 5}, {1, 3, 1, 4, binomial(6, 3)}, {1, 3, 1, 5, 32},
                          {1, 3, 2, 5, -1}, {1, 5, 2, 5, -1}};
    std::multiset<long> large;
    for (const auto& c : cases) {
        auto B = spherical_matrix(c.p1, c.q1, c.p2, c.q2);
        auto r1 = enumerate_spherical(B, 1, true);
        auto r2 = enumerate_spherical(B, 2, false);
        REQUIRE(r1.graph.closed);
        REQUIRE(r2.graph.closed);
        CHECK(r1.compatible);
        CHECK(r2.compatible);
        CHECK(r1.involutive);
        CHECK(r1.invariants);
        CHECK(2 * r1.graph.edges.size() == 3 * static_cast<size_t>(r1.graph.size()));
        CHECK(r1.graph.size() == r2.graph.size());
        CHECK(graphs_isomorphic(r1.graph, r2.graph));
        check_three_regular(r1.graph);
        if (c.oracle > 0)
            CHECK(r1.graph.size() == c.oracle);
        else
            large.insert(r1.graph.size());
    }
    // The two non-crystallographic pairs give 40 and 48 seeds; which pair gets
    // which count is checked by the acceptance suite.
    CHECK(large == std::multiset<long>{40, 48});
}

TEST_CASE("enumeration is deterministic") {
    auto B = spherical_matrix(1, 3, 2, 5);
    auto a = enumerate_spherical(B, 9, false), b = enumerate_spherical(B, 9, false);
    CHECK(a.lambda == b.lambda);
    CHECK(export_json(a.graph) == export_json(b.graph));
    auto p = bfs_planar(initial_seed(5), 6), q = bfs_planar(initial_seed(5), 6);
    CHECK(export_json(p) == export_json(q));
    CHECK(export_dot(p) == export_dot(q));
}

TEST_CASE("budgets") {
    auto g = bfs_planar(initial_seed(5), 20, 50);
    CHECK_FALSE(g.closed);
    CHECK(g.size() == 50);
    CHECK_THROWS_AS(bfs_generic<PlanarSeed>(initial_seed(5), planar_mutate, 20, 50, true), Error);
}

TEST_CASE("growth tables") {
    auto t3 = growth(initial_seed(3), 24);
    CHECK(t3.rows[0].second == 1);
    for (size_t i = 1; i < t3.rows.size(); ++i) CHECK(t3.rows[i].second >= t3.rows[i - 1].second);
    // Linear sandwich on [8, 24].
    double lo = 1e9, hi = 0;
    for (const auto& [n, g] : t3.rows) {
        if (n < 8) continue;
        lo = std::min(lo, static_cast<double>(g) / n);
        hi = std::max(hi, static_cast<double>(g) / n);
    }
    CHECK(lo > 0);
    CHECK(hi / lo < 2);
    for (int d : {4, 5, 6}) {
        auto t = growth(initial_seed(d), 10);
        CHECK(t.rows[0].second == 1);
        CHECK(t.rows[1].second == 4);
    }
}

TEST_CASE("growth csv round trip") {
    auto t = growth(initial_seed(5), 12);
    std::string csv = growth_csv(t);
    CHECK(csv.rfind("n,gr\n", 0) == 0);
    auto back = parse_growth_csv(csv);
    CHECK(back.rows == t.rows);
    CHECK_THROWS_AS(parse_growth_csv("n,gr\n1;2\n"), Error);
}

TEST_CASE("acyclic belts") {
    for (int d : {3, 5, 7}) {
        auto belt = acyclic_belt(initial_seed(d), 8);
        for (const auto& s : belt) {
            CHECK(is_acyclic(s.B));
            CHECK(s.kind() == RegionKind::Triangle);
        }
        for (size_t i = 0; i + 1 < belt.size(); ++i) {
            int src = -1;
            for (int k : sources(belt[i].B))
                if (planar_mutate(belt[i], k).key() == belt[i + 1].key()) src = k;
            CHECK(src >= 0);
        }
    }
    for (const auto& s : acyclic_belt(initial_seed(3), 10)) {
        auto a = s.angles();
        CHECK(a == std::array<long, 3>{1, 1, 1});
    }
    auto g5 = bfs_planar(initial_seed(5), 4);
    for (const auto& s : g5.seeds)
        if (!is_acyclic(s.B)) {
            CHECK_THROWS_AS(acyclic_belt(s, 3), Error);
            break;
        }
}

TEST_CASE("lattice reports") {
    auto L3 = lattice_report(bfs_planar(initial_seed(3), 12), 3);
    CHECK(L3.r_rank == 1);
    CHECK(L3.predicted_rank == 1);
    auto L5 = lattice_report(bfs_planar(initial_seed(5), 12), 5);
    CHECK(L5.r_rank == 2);
    CHECK(L5.l_rank == 2);
    CHECK(L5.all_parallel);
    for (const auto& w : L5.witnesses) {
        CHECK(w.length == w.predicted);
        CHECK(w.translation.parallel_to_belt);
    }
    std::set<long> ks;
    for (const auto& w : L5.witnesses) ks.insert(w.k);
    CHECK(ks == std::set<long>{1, 2});
    auto L8 = lattice_report(bfs_planar(initial_seed(8), 10), 8);
    CHECK(L8.r_rank == 2);
    CHECK((L8.l_rank == 2 || L8.l_rank == 4));
    // s_k = T / sin^2(k pi/d) numerically.
    for (int d : {5, 7}) {
        double T = t_invariant(initial_seed(d)).to_double();
        for (long k = 1; 2 * k < d; ++k)
            CHECK(translation_length(d, k).to_double() ==
                  doctest::Approx(T / std::pow(std::sin(k * oracle::kPi / d), 2)));
    }
}

TEST_CASE("quotient census") {
    auto gcd_triples = [](int d) {
        std::vector<std::array<long, 3>> v;
        for (long a = 0; a <= d; ++a)
            for (long b = a; a + b <= d; ++b) {
                long c = d - a - b;
                if (c < b) continue;
                if (std::gcd(std::gcd(a, b), c) == 1) v.push_back({a, b, c});
            }
        return v;
    };
    for (int d : {5, 7}) {
        auto c = quotient_census(bfs_planar(initial_seed(d), 14), d);
        CHECK(c.observed_triples == gcd_triples(d));
        CHECK(c.predicted_triples == gcd_triples(d));
        CHECK(c.all_two);
        for (const auto& cls : c.classes) {
            CHECK(cls.translation_classes == 2);
            CHECK(cls.translates_verified);
        }
    }
    auto c9 = quotient_census(bfs_planar(initial_seed(9), 10), 9);
    for (const auto& t : c9.observed_triples) CHECK(t != std::array<long, 3>{3, 3, 3});
    // The number of classes does not change with a larger window.
    auto a = quotient_census(bfs_planar(initial_seed(5), 12), 5);
    auto b = quotient_census(bfs_planar(initial_seed(5), 14), 5);
    CHECK(a.classes.size() == b.classes.size());
}

TEST_CASE("translated belts are full subgraphs") {
    auto g = bfs_planar(initial_seed(5), 14);
    PlanarSeed s0 = initial_seed(5);
    PlanarPoint zero{FieldElem::zero(5), FieldElem::zero(5)};
    CHECK(belt_subgraph_check(g, s0, zero, 12).ok);
    auto L = lattice_report(g, 5);
    std::set<long> done;
    for (const auto& w : L.witnesses) {
        auto r = belt_subgraph_check(g, s0, w.translation.w, 12);
        CHECK_MESSAGE(r.ok, r.detail);
        done.insert(w.k);
    }
    CHECK(done == std::set<long>{1, 2});
    // A vector not in the lattice gives no translates.
    PlanarPoint off = belt_vector(s0, t_invariant(s0).scaled(Rational(1, 3)));
    CHECK_FALSE(belt_subgraph_check(g, s0, off, 12).ok);
}

TEST_CASE("Markov mutation graph is a tree") {
    auto m = markov_tree_check(8);
    CHECK(m.is_tree);
    CHECK(m.vertices == 3 * 256 - 2);
    CHECK(m.edges == m.vertices - 1);
}

TEST_CASE("dot export") {
    std::string empty = dot_from({}, {});
    CHECK(empty.rfind("graph", 0) == 0);
    CHECK(std::count(empty.begin(), empty.end(), '{') == 1);
    CHECK(std::count(empty.begin(), empty.end(), '}') == 1);
    CHECK(empty.find("--") == std::string::npos);

    for (auto p : {std::array<long, 4>{1, 3, 2, 5}, {1, 5, 2, 5}}) {
        auto run = enumerate_spherical(spherical_matrix(p[0], p[1], p[2], p[3]), 1);
        std::string dot = export_dot(run.graph);
        size_t edges = 0, pos = 0;
        while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
            ++edges;
            pos += 4;
        }
        long n = run.graph.size();
        CHECK(edges == static_cast<size_t>(3 * n / 2));
        // Node lines are the lines ending in "\";".
        size_t nodes = 0;
        std::istringstream is(dot);
        std::string line;
        while (std::getline(is, line))
            if (line.size() > 2 && line.substr(line.size() - 2) == "\";" && line.find("--") == std::string::npos)
                ++nodes;
        CHECK(nodes == static_cast<size_t>(n));
    }
}

TEST_CASE("svg and json exports") {
    auto g = bfs_planar(initial_seed(5), 4);
    std::string svg = export_svg(g);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    auto j = Json::parse(export_json(g));
    CHECK(j["vertices"].size() == static_cast<size_t>(g.size()));
    CHECK(j["edges"].size() == g.edges.size());
}

TEST_CASE("json round trips") {
    for (int d : {3, 5, 8, 12}) {
        FieldElem a = cos_multiple(d, 1).scaled(Rational(-3, 7)) + FieldElem::rational(d, Rational(5, 2));
        CHECK(field_from_json(to_json(a)) == a);
        CHECK(field_from_json(Json::parse(to_json(a).dump())) == a);
    }
    for (const auto& B : {markov_matrix(), spherical_matrix(1, 5, 2, 5), affine_triple_matrix(7)})
        CHECK(matrix_from_json(Json::parse(to_json(B).dump())) == B);
    auto sj = to_json(initial_seed(5));
    CHECK(sj["level"] == 5);
    CHECK(sj["kind"] == "triangle");
    CHECK(sj["vertices"].size() == 3);
}
