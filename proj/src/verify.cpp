#include "quiverbelt/verify.hpp"

#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "quiverbelt/exgraph.hpp"
#include "quiverbelt/rank2.hpp"

namespace qb {

namespace {

std::string fmt_d(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

// ------------------------------------------------------------ 1: rank 2

void rank2_periods(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    // Named examples: short and long period of A2, B2 and G2 short periods.
    struct Ex {
        long a, b, expect;
        bool compatible;
    };
    for (const Ex& e : {Ex{1, 3, 5, true}, Ex{1, 3, 7, false}, Ex{1, 4, 6, true}, Ex{1, 6, 8, true}}) {
        auto s = initial_sector(e.a, e.b);
        bool seen = false, consistent = true;
        for (long q = 0; q < 4 * e.b; ++q) {
            auto u = ReferencePoint2D::direction(q);
            if (is_critical(e.b, u) || is_compatible(u, s) != e.compatible) continue;
            seen = true;
            if (orbit_period(s, u).period != e.expect) consistent = false;
        }
        if (!seen || !consistent) ok = false;
        os << "(" << e.a << "," << e.b << (e.compatible ? ") short " : ") long ") << e.expect
           << (seen && consistent ? " ok; " : " FAIL; ");
    }
    long cases = 0, mismatches = 0, turning_bad = 0;
    for (long b = 3; b <= 24; ++b)
        for (long a = 1; 2 * a < b; ++a) {
            if (std::gcd(a, b) != 1) continue;
            auto s = initial_sector(a, b);
            for (long q = 0; q < 4 * b; ++q) {
                auto u = ReferencePoint2D::direction(q);
                if (is_critical(b, u)) continue;
                ++cases;
                auto o = orbit_period(s, u);
                long f = period_formula(a, b, direction_positive(b, s.j1, u), direction_positive(b, s.j2, u));
                if (o.period != f || !o.lazy_paired) ++mismatches;
                if (!turning_check(s, u).ok) ++turning_bad;
            }
        }
    if (mismatches || turning_bad) ok = false;
    os << "grid b<=24: " << cases << " cases, " << mismatches << " mismatches, " << turning_bad << " turning failures";
    r.pass = ok;
    r.detail = os.str();
}

// ------------------------------------------------------- 2: finite type

void finite_type_counts(CheckResult& r) {
    struct Pair {
        long p1, q1, p2, q2;
        int reference;  // published or associahedron count
    };
    // Associahedron vertex counts for A3, B3, H3 and the two published counts.
    const Pair pairs[] = {{1, 3, 1, 3, 14}, {1, 3, 1, 4, 20}, {1, 3, 1, 5, 32}, {1, 3, 2, 5, 40}, {1, 5, 2, 5, 48}};
    std::ostringstream os;
    bool structural = true, counts = true;
    int c40 = -1, c48 = -1;
    for (const auto& p : pairs) {
        auto B = spherical_matrix(p.p1, p.q1, p.p2, p.q2);
        auto r1 = enumerate_spherical(B, 1, true);
        auto r2 = enumerate_spherical(B, 2, false);
        bool regular = 2 * r1.graph.edges.size() == 3 * static_cast<size_t>(r1.graph.size());
        bool same = r1.graph.size() == r2.graph.size() && graphs_isomorphic(r1.graph, r2.graph);
        bool good = r1.graph.closed && r2.graph.closed && r1.compatible && r2.compatible && r1.invariants &&
                    r1.involutive && regular && same;
        if (!good) structural = false;
        int n = r1.graph.size();
        if (n != p.reference) counts = false;
        if (p.reference == 40) c40 = n;
        if (p.reference == 48) c48 = n;
        os << "(" << p.p1 << "/" << p.q1 << "," << p.p2 << "/" << p.q2 << "): " << n << " seeds (expected "
           << p.reference << ")" << (same ? ", isomorphic" : ", NOT isomorphic") << (good ? "" : ", structure FAIL")
           << "; ";
    }
    r.pass = structural && counts;
    // The two published counts appear with the pairs exchanged.
    r.known_deviation = !r.pass && structural && c40 == 48 && c48 == 40;
    if (r.known_deviation) os << "published counts 40/48 observed as 48/40";
    r.detail = os.str();
}

// ---------------------------------------------------------- 3: Verlinde

void verlinde(CheckResult& r) {
    int bad = 0;
    for (int n = 1; n <= 25; ++n)
        if (verlinde_sum(n) != FieldElem::rational(2 * n + 1, Rational(2 * n * (n + 1)) / 3)) ++bad;
    r.pass = bad == 0;
    r.detail = "n = 1..25, " + std::to_string(bad) + " mismatches";
}

// ------------------------------------------------------ 4: independence

void independence(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d = 3; d <= 15; d += 2) {
        std::vector<FieldElem> v;
        for (long k = 1; 2 * k < d; ++k)
            if (std::gcd(k, static_cast<long>(d)) == 1) v.push_back(sin_squared(d, k).inv());
        int rk = rational_rank(v);
        int want = static_cast<int>(euler_totient(d) / 2);
        if (rk != want) ok = false;
        os << "d=" << d << " rank " << rk << "/" << want << "; ";
    }
    for (int n = 1; n <= 8; ++n)
        if (dedekind_det(n).is_zero()) {
            ok = false;
            os << "det(" << n << ")=0; ";
        }
    os << "dedekind_det nonzero for n<=8";
    r.pass = ok;
    r.detail = os.str();
}

// ---------------------------------------------- 5: geometric invariants

void geometric_invariants(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d : {3, 5, 7, 9}) {
        PlanarSeed s0 = initial_seed(d);
        PlanarGraph g = bfs_planar(s0, 12);
        FieldElem T0 = t_invariant(s0);
        std::vector<FieldElem> T(g.size());
        for (int v = 0; v < g.size(); ++v) T[v] = t_invariant(g.seeds[v]);
        long t_bad = 0, feet_bad = 0, acute_bad = 0, orient_bad = 0, inv_bad = 0;
        for (const auto& e : g.edges)
            if (T[e.u] != T[e.v] || T[e.u] != T0) ++t_bad;
        std::set<int> signatures;
        for (const auto& s : g.seeds) {
            if (!feet_on_belt(s, *s.belt)) ++feet_bad;
            if (is_acyclic(s.B) == s.is_obtuse()) ++acute_bad;
            auto o = orientation_data(s);
            if (o.applicable && o.acyclic && !o.towards_reference) ++orient_bad;
            if (o.applicable && !o.acyclic) signatures.insert(o.obtuse_signature);
            for (int k = 0; k < 3; ++k)
                if (!planar_involution_holds(s, k)) ++inv_bad;
        }
        if (signatures.size() > 1) orient_bad += static_cast<long>(signatures.size()) - 1;
        LatticeReport L = lattice_report(g, d);
        bool par = L.all_parallel;
        bool good = !t_bad && !feet_bad && !acute_bad && !orient_bad && !inv_bad && par;
        if (!good) ok = false;
        os << "d=" << d << ": " << g.size() << " seeds, " << g.edges.size() << " edges, T " << t_bad << " bad, feet "
           << feet_bad << " bad, acute/acyclic " << acute_bad << " bad, orientation " << orient_bad
           << " bad, translations parallel " << (par ? "yes" : "NO") << " (" << L.translation_pairs << "); ";
    }
    r.pass = ok;
    r.detail = os.str();
}

// ------------------------------------------------- 6: belt periodicity

void belt_periodicity(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d : {3, 5, 7}) {
        PlanarSeed s0 = initial_seed(d);
        FieldElem four_t = t_invariant(s0).scaled(4);
        auto belt = acyclic_belt(s0, 12);
        int bad = 0;
        for (int i = 0; i + 6 < static_cast<int>(belt.size()); ++i) {
            auto tr = translation_between(belt[i], belt[i + 6]);
            if (!tr || tr->length.abs() != four_t || !tr->parallel_to_belt) ++bad;
        }
        if (bad) ok = false;
        os << "d=" << d << ": |w| = 4T = " << fmt_d(four_t.to_double()) << ", " << bad << " bad pairs; ";
    }
    r.pass = ok;
    r.detail = os.str();
}

// ------------------------------------------------- 7: translated belts

void translated_belts(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d : {3, 5, 7}) {
        PlanarSeed s0 = initial_seed(d);
        PlanarGraph g = bfs_planar(s0, 14);
        LatticeReport L = lattice_report(g, d);
        for (long k : L.units) {
            const RegionWitness* w = nullptr;
            for (const auto& x : L.witnesses)
                if (x.k == k) w = &x;
            if (!w) {
                ok = false;
                os << "d=" << d << " k=" << k << " no witness; ";
                continue;
            }
            BeltCheck bc = belt_subgraph_check(g, s0, w->translation.w, 12);
            bool good = w->length == w->predicted && bc.ok;
            if (!good) ok = false;
            os << "d=" << d << " k=" << k << ": |w|=s_k " << (w->length == w->predicted ? "yes" : "NO")
               << ", full subgraph " << (bc.ok ? "yes" : "NO " + bc.detail) << " (" << bc.present << " translates); ";
        }
    }
    r.pass = ok;
    r.detail = os.str();
}

// --------------------------------------------------- 8: quotient census

void census(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d : {5, 7}) {
        PlanarGraph g = bfs_planar(initial_seed(d), 14);
        Census c = quotient_census(g, d);
        if (!c.triples_match || !c.all_two) ok = false;
        os << "d=" << d << ": " << c.observed_triples.size() << " angle triples (" << c.predicted_triples.size()
           << " with gcd 1)" << (c.triples_match ? "" : " MISMATCH") << ", " << c.classes.size()
           << " (angles, quiver) classes, two translation classes each " << (c.all_two ? "yes" : "NO") << "; ";
    }
    r.pass = ok;
    r.detail = os.str();
}

// ------------------------------------------------------------ 9: growth

void growth_rate(CheckResult& r) {
    std::ostringstream os;
    GrowthTable t3 = growth(initial_seed(3), 24);
    double lo = 1e300, hi = 0;
    for (const auto& [n, g] : t3.rows)
        if (n >= 8) {
            lo = std::min(lo, static_cast<double>(g) / n);
            hi = std::max(hi, static_cast<double>(g) / n);
        }
    bool linear = lo > 0 && hi <= 2 * lo;
    os << "d=3: " << fmt_d(lo) << " n <= gr(n) <= " << fmt_d(hi) << " n on [8,24]; ";
    GrowthTable t5 = growth(initial_seed(5), 24);
    double slope = loglog_slope(t5, 8, 24);
    bool in_band = std::abs(slope - 2.0) <= 0.35;
    os << "d=5: log-log slope on [8,24] = " << fmt_d(slope) << " (band 2 +- 0.35)";
    // Exact diagnostic: constant second differences mean exact quadratic growth.
    std::vector<long> g5;
    for (const auto& row : t5.rows) g5.push_back(row.second);
    long dd = g5[24] - 2 * g5[23] + g5[22];
    int from = 24;
    while (from > 2 && g5[from - 1] - 2 * g5[from - 2] + g5[from - 3] == dd) --from;
    os << "; second differences constant " << dd << " from n=" << from - 1;
    r.pass = linear && in_band;
    r.known_deviation = !r.pass && linear && dd > 0 && from <= 20;
    r.detail = os.str();
}

// --------------------------------------------------- 10: even denominators

void even_denominators(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int d : {4, 6, 8}) {
        PlanarGraph g = bfs_planar(initial_seed(d), d <= 7 ? 14 : 10);
        LatticeReport L = lattice_report(g, d);
        int half = static_cast<int>(euler_totient(d) / 2);
        bool good = L.r_rank == half && (L.l_rank == half || L.l_rank == 2 * half);
        if (!good) ok = false;
        os << "d=" << d << ": rank R " << L.r_rank << " (phi/2 = " << half << "), observed L-rank " << L.l_rank << "; ";
    }
    r.pass = ok;
    r.detail = os.str();
}

// --------------------------------------------------- 11: number theory

void number_theory(CheckResult& r) {
    std::ostringstream os;
    bool ok = true;
    for (int n = 1; n <= 10; ++n)
        if (!watkins_zeitlin_check(n)) {
            ok = false;
            os << "WZ(" << n << ") FAIL; ";
        }
    long grid = 0, grid_bad = 0;
    for (int d = 2; d <= 15; ++d)
        for (long j = 0; j < 2 * d; ++j)
            for (long k = 0; k < 2 * d; ++k) {
                ++grid;
                if (cos_multiple(d, j) * cos_multiple(d, k) != cos_multiple(d, j + k) + cos_multiple(d, j - k))
                    ++grid_bad;
            }
    if (grid_bad) ok = false;
    long units = 0, unit_bad = 0;
    std::vector<int> degenerate;
    for (int d = 3; d <= 15; d += 2) {
        bool deg = false;
        for (long k = 1; 2 * k < d; ++k) {
            if (std::gcd(k, static_cast<long>(d)) != 1) continue;
            auto v = integrality_check(d, static_cast<int>(k));
            ++units;
            if (!v.is_integer || !v.is_unit) ++unit_bad;
            deg = deg || v.basis_degenerate;
        }
        if (deg) degenerate.push_back(d);
    }
    if (unit_bad) ok = false;
    os << "Watkins-Zeitlin n<=10; product-to-sum " << grid << " cases, " << grid_bad << " bad; " << units
       << " unit verdicts, " << unit_bad << " bad";
    if (!degenerate.empty()) {
        os << "; cosine family not a basis for d =";
        for (int d : degenerate) os << " " << d;
        os << " (verdict from the characteristic polynomial)";
    }
    r.pass = ok;
    r.detail = os.str();
}

struct CriterionInfo {
    int id;
    const char* name;
    double limit;
    void (*fn)(CheckResult&);
};

const CriterionInfo kCriteria[] = {
    {1, "rank-2 periods", 1, rank2_periods},
    {2, "finite-type counts", 10, finite_type_counts},
    {3, "Verlinde identity", 5, verlinde},
    {4, "linear independence", 10, independence},
    {5, "geometric invariants", 60, geometric_invariants},
    {6, "belt periodicity", 5, belt_periodicity},
    {7, "translated belts", 30, translated_belts},
    {8, "quotient census", 60, census},
    {9, "growth", 120, growth_rate},
    {10, "even denominators", 60, even_denominators},
    {11, "number theory", 10, number_theory},
};

}  // namespace

std::vector<int> all_criteria() {
    std::vector<int> v;
    for (const auto& s : kCriteria) v.push_back(s.id);
    return v;
}

CheckResult run_criterion(int id) {
    for (const auto& s : kCriteria) {
        if (s.id != id) continue;
        CheckResult r;
        r.id = id;
        r.name = s.name;
        r.limit = s.limit;
        auto t0 = std::chrono::steady_clock::now();
        try {
            s.fn(r);
        } catch (const Error& e) {
            r.pass = false;
            r.known_deviation = false;
            r.detail = std::string("error ") + error_name(e.code()) + ": " + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.limit) {
            r.pass = false;
            r.known_deviation = false;
            r.detail += "; time limit " + fmt_d(r.limit) + " s exceeded";
        }
        return r;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown criterion " + std::to_string(id));
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CheckResult> out;
    for (int id : ids) out.push_back(run_criterion(id));
    return out;
}

}  // namespace qb
