#include "quiverbelt/exgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/isomorphism.hpp>

#include "quiverbelt/serialize.hpp"

namespace qb {

PlanarGraph bfs_planar(const PlanarSeed& initial, int depth_limit, int vertex_limit) {
    return bfs_generic(initial, [](const PlanarSeed& s, int k) { return planar_mutate(s, k); }, depth_limit,
                       vertex_limit);
}

SphericalGraph bfs_spherical(const SphericalSeed& initial, int vertex_limit) {
    return bfs_generic(initial, [](const SphericalSeed& s, int k) { return seed_mutate(s, k); }, -1, vertex_limit);
}

// ------------------------------------------------------------ spherical

SphericalRun enumerate_spherical(const ExchangeMatrix& B, std::uint64_t rng_seed, bool canonical_first,
                                 int max_attempts, int vertex_limit) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<long> num(1, 30), den(1, 30);
    SphericalRun best;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::array<Rational, 3> lambda;
        for (int i = 0; i < 3; ++i) {
            if (attempt == 0 && canonical_first) {
                lambda[i] = 1;
            } else {
                lambda[i] = Rational(num(rng), den(rng));
                lambda[i].canonicalize();
            }
        }
        SphericalRun run;
        run.lambda = lambda;
        run.attempts = attempt + 1;
        try {
            SphericalSeed s0 = spherical_initial(B, lambda);
            // An incompatible reference usually gives an unbounded graph, so
            // the attempt stops at the first seed that fails the test.
            std::set<std::string> checked;
            auto guarded_mutate = [&](const SphericalSeed& s, int k) {
                SphericalSeed t = seed_mutate(s, k);
                if (checked.insert(t.key()).second && !locally_compatible(t)) {
                    throw Error(ErrorCode::BudgetExceeded, "incompatible reference");
                }
                return t;
            };
            if (!locally_compatible(s0)) continue;
            run.graph = bfs_generic<SphericalSeed>(s0, guarded_mutate, -1, vertex_limit);
            if (!run.graph.closed) continue;
            run.compatible = run.invariants = run.involutive = true;
            for (const auto& s : run.graph.seeds) {
                if (!locally_compatible(s)) run.compatible = false;
                if (!spherical_invariants_hold(s)) run.invariants = false;
                for (int k = 0; k < 3; ++k)
                    if (seed_mutate(seed_mutate(s, k), k).key() != s.key()) run.involutive = false;
                if (!run.compatible) break;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegeneratePositivity && e.code() != ErrorCode::BudgetExceeded) throw;
            continue;
        }
        if (run.compatible) return run;
        best = std::move(run);
    }
    return best;
}

bool isomorphic_edges(int n, const std::vector<GraphEdge>& ea, int m, const std::vector<GraphEdge>& eb) {
    if (n != m || ea.size() != eb.size()) return false;
    using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    G a(n), b(m);
    for (const auto& e : ea) boost::add_edge(e.u, e.v, a);
    for (const auto& e : eb) boost::add_edge(e.u, e.v, b);
    std::vector<boost::graph_traits<G>::vertex_descriptor> f(n);
    return boost::isomorphism(a, b, boost::isomorphism_map(boost::make_iterator_property_map(
                                       f.begin(), boost::get(boost::vertex_index, a))));
}

// --------------------------------------------------------------- growth

GrowthTable growth(const PlanarSeed& initial, int N) { return growth_from(bfs_planar(initial, N), N); }

double loglog_slope(const GrowthTable& t, int lo, int hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& [n, g] : t.rows) {
        if (n < lo || n > hi || n <= 0) continue;
        double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(g));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw Error(ErrorCode::InvalidArgument, "slope needs at least two rows");
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

std::string growth_csv(const GrowthTable& t) {
    std::ostringstream os;
    os << "n,gr\n";
    for (const auto& [n, g] : t.rows) os << n << "," << g << "\n";
    return os.str();
}

GrowthTable parse_growth_csv(const std::string& csv) {
    GrowthTable t;
    std::istringstream is(csv);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line == "n,gr") continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "growth row without comma: " + line);
        try {
            t.rows.push_back({std::stoi(line.substr(0, comma)), std::stol(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad growth row: " + line);
        }
    }
    return t;
}

// ------------------------------------------------------------ planar

std::vector<PlanarSeed> acyclic_belt(const PlanarSeed& initial, int steps) {
    if (!is_acyclic(initial.B)) throw Error(ErrorCode::NotAcyclic, "belt needs an acyclic initial seed");
    std::vector<PlanarSeed> fwd{initial}, bwd;
    PlanarSeed cur = initial;
    for (int i = 0; i < steps; ++i) {
        auto src = sources(cur.B);
        if (src.empty()) throw Error(ErrorCode::NotAcyclic, "belt member without a source");
        cur = planar_mutate(cur, src[0]);
        fwd.push_back(cur);
    }
    cur = initial;
    for (int i = 0; i < steps; ++i) {
        auto snk = sinks(cur.B);
        if (snk.empty()) throw Error(ErrorCode::NotAcyclic, "belt member without a sink");
        cur = planar_mutate(cur, snk[0]);
        bwd.push_back(cur);
    }
    std::vector<PlanarSeed> out(bwd.rbegin(), bwd.rend());
    out.insert(out.end(), fwd.begin(), fwd.end());
    return out;
}

namespace {

// Seeds that agree up to translation share this key.
std::string shape_key(const PlanarSeed& s) {
    std::vector<int> p{0, 1, 2};
    std::sort(p.begin(), p.end(), [&](int a, int b) { return s.lines[a].m < s.lines[b].m; });
    std::string k;
    for (int i : p) k += std::to_string(s.lines[i].m) + ",";
    return k + s.B.permuted(p).raw_key();
}

std::string abstract_key(const PlanarSeed& s) {
    std::vector<int> p{0, 1, 2};
    std::string best;
    bool first = true;
    auto ang = s.angles();
    do {
        std::string k;
        for (int i : p) k += std::to_string(ang[i]) + ",";
        k += s.B.permuted(p).raw_key();
        if (first || k < best) best = k;
        first = false;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// Rational coordinates of a in the span of the given basis, if any.
std::optional<std::vector<Rational>> coords_in_span(const std::vector<FieldElem>& basis, const FieldElem& a) {
    int n = static_cast<int>(basis.size());
    if (n == 0) return std::nullopt;
    int L = a.level();
    for (const auto& b : basis) L = static_cast<int>(lcm_l(L, b.level()));
    int dim = field_degree(L);
    // Augmented system: rows are field coordinates, columns the basis.
    std::vector<std::vector<Rational>> M(dim, std::vector<Rational>(n + 1));
    for (int c = 0; c < n; ++c) {
        FieldElem e = basis[c].lift(L);
        for (int r = 0; r < dim; ++r) M[r][c] = e.coeffs()[r];
    }
    FieldElem al = a.lift(L);
    for (int r = 0; r < dim; ++r) M[r][n] = al.coeffs()[r];
    std::vector<int> pivcol;
    int row = 0;
    for (int c = 0; c < n && row < dim; ++c) {
        int piv = -1;
        for (int r = row; r < dim; ++r)
            if (M[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[row], M[piv]);
        for (int r = 0; r < dim; ++r) {
            if (r == row || M[r][c] == 0) continue;
            Rational f = M[r][c] / M[row][c];
            for (int cc = c; cc <= n; ++cc) M[r][cc] -= f * M[row][cc];
        }
        pivcol.push_back(c);
        ++row;
    }
    for (int r = row; r < dim; ++r)
        if (M[r][n] != 0) return std::nullopt;
    std::vector<Rational> x(n, 0);
    for (int r = 0; r < row; ++r) x[pivcol[r]] = M[r][n] / M[r][pivcol[r]];
    return x;
}

}  // namespace

LatticeReport lattice_report(const PlanarGraph& g, int d) {
    LatticeReport rep;
    rep.d = d;
    for (long k = 1; 2 * k <= d; ++k)
        if (std::gcd(k, static_cast<long>(d)) == 1) {
            rep.units.push_back(k);
            rep.s_k.push_back(translation_length(d, k));
        }
    rep.predicted_rank = static_cast<int>(rep.units.size());

    std::set<std::string> seen_len;
    auto note_length = [&](const FieldElem& len) {
        if (len.is_zero()) return;
        if (seen_len.insert(len.to_string()).second) rep.observed.push_back(len);
    };

    // Region witnesses: mutation at a parallel side translates the region.
    std::set<long> witnessed;
    for (int v = 0; v < g.size(); ++v) {
        const PlanarSeed& s = g.seeds[v];
        auto r = region_data(s);
        if (!r || witnessed.count(r->angle)) continue;
        auto it = std::find(rep.units.begin(), rep.units.end(), r->angle);
        if (it == rep.units.end()) continue;
        for (int p = 0; p < 3; ++p) {
            if (p == r->finite_side) continue;
            PlanarSeed t = planar_mutate(s, p);
            auto tr = translation_between(s, t);
            if (!tr) continue;
            RegionWitness w;
            w.k = r->angle;
            w.region = v;
            w.neighbour = g.find(t.key()).value_or(-1);
            w.length = tr->length.abs();
            w.predicted = rep.s_k[it - rep.units.begin()];
            w.translation = *tr;
            if (!tr->parallel_to_belt) rep.all_parallel = false;
            rep.witnesses.push_back(w);
            witnessed.insert(r->angle);
            note_length(w.length);
            break;
        }
    }
    std::vector<FieldElem> r_gens;
    for (const auto& w : rep.witnesses)
        if (w.length == w.predicted) r_gens.push_back(w.length);
    rep.r_rank = rational_rank(r_gens);

    // Translations among enumerated seeds of the same shape.
    std::unordered_map<std::string, int> first_of_shape;
    for (int v = 0; v < g.size(); ++v) {
        std::string sk = shape_key(g.seeds[v]);
        auto [it, inserted] = first_of_shape.emplace(sk, v);
        if (inserted) continue;
        auto tr = translation_between(g.seeds[it->second], g.seeds[v]);
        if (!tr) continue;
        ++rep.translation_pairs;
        if (!tr->parallel_to_belt) rep.all_parallel = false;
        note_length(tr->length.abs());
    }
    // Congruences by the reflection across b.
    for (int v = 0; v < g.size(); ++v)
        if (first_of_shape.count(shape_key(reflected_across_belt(g.seeds[v])))) ++rep.reflection_pairs;

    rep.l_rank = rational_rank(rep.observed);
    Integer den = 1;
    for (const auto& len : rep.observed) {
        auto x = coords_in_span(rep.s_k, len);
        if (!x) continue;
        for (const auto& q : *x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    rep.common_denominator = Rational(den);
    return rep;
}

Census quotient_census(const PlanarGraph& g, int d) {
    Census c;
    std::map<std::string, std::vector<int>> by_abstract;
    for (int v = 0; v < g.size(); ++v) by_abstract[abstract_key(g.seeds[v])].push_back(v);
    std::set<std::array<long, 3>> triples;
    for (const auto& [ak, members] : by_abstract) {
        CensusClass cc;
        cc.abstract_key = ak;
        auto a = g.seeds[members[0]].angles();
        std::sort(a.begin(), a.end());
        cc.angles = a;
        triples.insert(a);
        cc.members = static_cast<int>(members.size());
        std::map<std::string, int> shapes;
        for (int v : members) {
            auto [it, inserted] = shapes.emplace(shape_key(g.seeds[v]), v);
            if (!inserted && !translation_between(g.seeds[it->second], g.seeds[v])) cc.translates_verified = false;
        }
        cc.translation_classes = static_cast<int>(shapes.size());
        c.classes.push_back(cc);
    }
    c.observed_triples.assign(triples.begin(), triples.end());
    for (long a = 0; a <= d; ++a)
        for (long b = std::max(a, 1L); a + b <= d; ++b) {
            long e = d - a - b;
            if (e < b) continue;
            if (std::gcd(std::gcd(a, b), e) == 1) c.predicted_triples.push_back({a, b, e});
        }
    c.triples_match = c.observed_triples == c.predicted_triples;
    c.all_two = !c.classes.empty();
    for (const auto& cc : c.classes)
        if (cc.translation_classes != 2 || !cc.translates_verified) c.all_two = false;
    return c;
}

BeltCheck belt_subgraph_check(const PlanarGraph& g, const PlanarSeed& initial, const PlanarPoint& w, int steps,
                              int min_run) {
    BeltCheck bc;
    auto belt = acyclic_belt(initial, steps);
    int n = static_cast<int>(belt.size());
    std::vector<PlanarSeed> tb;
    std::vector<int> idx(n, -1);
    for (int i = 0; i < n; ++i) {
        tb.push_back(translated(belt[i], w));
        idx[i] = g.find(tb[i].key()).value_or(-1);
        if (idx[i] >= 0) ++bc.present;
    }
    std::set<std::pair<int, int>> adj;
    for (const auto& e : g.edges) adj.insert(std::minmax(e.u, e.v));
    auto joined = [&](int a, int b) { return adj.count(std::minmax(a, b)) > 0; };
    bc.ok = true;
    int run = 0, best_run = 0;
    for (int i = 0; i < n; ++i) {
        if (idx[i] < 0) {
            run = 0;
            continue;
        }
        best_run = std::max(best_run, ++run);
        if (i + 1 < n) {
            // Translation equivariance of the source mutation.
            // Two commuting sources occur when a right angle gives b_ij = 0.
            bool found = false;
            for (int k : sources(tb[i].B))
                if (planar_mutate(tb[i], k).key() == tb[i + 1].key()) found = true;
            if (!found) {
                bc.ok = false;
                bc.detail = "source mutation of a translate is not the next translate";
            }
            if (idx[i + 1] >= 0 && !joined(idx[i], idx[i + 1])) {
                bc.ok = false;
                bc.detail = "missing belt edge";
            }
        }
        for (int j = i + 2; j < n; ++j)
            if (idx[j] >= 0 && idx[j] != idx[i] && joined(idx[i], idx[j])) {
                bc.ok = false;
                bc.detail = "extra edge between belt translates";
            }
    }
    if (best_run < min_run) {
        bc.ok = false;
        bc.detail = "translated belt window too short: " + std::to_string(best_run);
    }
    return bc;
}

MarkovTreeCheck markov_tree_check(int depth) {
    // Extended exchange matrix with principal coefficients: rows 0-2 are B,
    // rows 3-5 the c-vectors. Seeds are columns up to relabelling.
    using M = std::array<std::array<long long, 3>, 6>;
    M m0{};
    long long b[3][3] = {{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m0[i][j] = b[i][j];
    for (int i = 0; i < 3; ++i) m0[3 + i][i] = 1;
    auto mut = [](const M& m, int k) {
        M r = m;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == k || j == k) {
                    r[i][j] = -m[i][j];
                } else {
                    long long a = m[i][k], c = m[k][j];
                    r[i][j] = m[i][j] + (std::llabs(a) * c + a * std::llabs(c)) / 2;
                }
            }
        return r;
    };
    auto key = [](const M& m) {
        std::array<int, 3> p{0, 1, 2};
        std::string best;
        bool first = true;
        do {
            std::string k;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 3; ++j) {
                    int ii = i < 3 ? p[i] : i;
                    k += std::to_string(m[ii][p[j]]) + ",";
                }
            if (first || k < best) best = k;
            first = false;
        } while (std::next_permutation(p.begin(), p.end()));
        return best;
    };
    std::unordered_map<std::string, int> index;
    std::vector<M> seeds{m0};
    index[key(m0)] = 0;
    std::set<std::pair<int, int>> edges;
    std::vector<int> frontier{0};
    for (int dep = 0; dep < depth; ++dep) {
        std::vector<int> next;
        for (int u : frontier)
            for (int k = 0; k < 3; ++k) {
                M t = mut(seeds[u], k);
                std::string kk = key(t);
                auto it = index.find(kk);
                int v;
                if (it == index.end()) {
                    v = static_cast<int>(seeds.size());
                    index[kk] = v;
                    seeds.push_back(t);
                    next.push_back(v);
                } else {
                    v = it->second;
                }
                edges.insert(std::minmax(u, v));
            }
        frontier = std::move(next);
    }
    MarkovTreeCheck r;
    r.vertices = static_cast<int>(seeds.size());
    r.edges = static_cast<int>(edges.size());
    r.is_tree = r.edges == r.vertices - 1 && r.vertices == 3 * (1 << depth) - 2;
    return r;
}

// --------------------------------------------------------------- exports

std::string dot_from(const std::vector<std::string>& keys, const std::vector<GraphEdge>& edges) {
    std::ostringstream os;
    os << "graph exchange {\n";
    for (const auto& k : keys) os << "  \"" << k << "\";\n";
    for (const auto& e : edges)
        os << "  \"" << keys[e.u] << "\" -- \"" << keys[e.v] << "\" [label=\"" << e.k + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

namespace {

struct XY {
    double x, y;
};

XY real_point(const PlanarPoint& p, double s) { return {p.x.to_double(), p.y.to_double() * s}; }

}  // namespace

std::string export_svg(const PlanarGraph& g, int max_seeds) {
    if (g.size() == 0) return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"10\" height=\"10\"/>\n";
    const PlanarSeed& s0 = g.seeds[0];
    int d = s0.d();
    double s = std::sin(M_PI / d);
    std::vector<std::vector<XY>> polys;
    std::vector<bool> acyclic;
    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    int n = std::min(g.size(), max_seeds);
    for (int v = 0; v < n; ++v) {
        const PlanarSeed& t = g.seeds[v];
        std::vector<XY> poly;
        if (t.kind() == RegionKind::Triangle) {
            for (int k = 0; k < 3; ++k) poly.push_back(real_point(*t.vertex(k), s));
        } else {
            auto r = region_data(t);
            XY p = real_point(r->p, s), q = real_point(r->q, s);
            double L = 3.0;
            double ap = r->ray_dir_p * M_PI / d, aq = r->ray_dir_q * M_PI / d;
            poly = {{p.x + L * std::cos(ap), p.y + L * std::sin(ap)}, p, q,
                    {q.x + L * std::cos(aq), q.y + L * std::sin(aq)}};
        }
        for (const auto& pt : poly) {
            minx = std::min(minx, pt.x);
            maxx = std::max(maxx, pt.x);
            miny = std::min(miny, pt.y);
            maxy = std::max(maxy, pt.y);
        }
        polys.push_back(poly);
        acyclic.push_back(is_acyclic(t.B));
    }
    double pad = 0.2, W = 800;
    double scale = W / std::max(1e-9, (maxx - minx) + 2 * pad);
    double H = ((maxy - miny) + 2 * pad) * scale;
    auto X = [&](double x) { return (x - minx + pad) * scale; };
    auto Y = [&](double y) { return H - (y - miny + pad) * scale; };
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    for (size_t i = 0; i < polys.size(); ++i) {
        os << "  <polygon fill=\"" << (acyclic[i] ? "#cfe3ff" : "#ffe0c0") << "\" fill-opacity=\"0.35\" stroke=\"#333\" "
           << "stroke-width=\"0.6\" points=\"";
        for (const auto& p : polys[i]) os << X(p.x) << "," << Y(p.y) << " ";
        os << "\"/>\n";
    }
    // Quiver arrows of the initial seed between side midpoints.
    if (s0.kind() == RegionKind::Triangle) {
        XY mid[3];
        for (int k = 0; k < 3; ++k) {
            int i = k == 0 ? 1 : 0, j = k == 2 ? 1 : 2;
            XY a = real_point(*s0.vertex(i), s), b = real_point(*s0.vertex(j), s);
            mid[k] = {(a.x + b.x) / 2, (a.y + b.y) / 2};
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (s0.B.at(i, j).sign() > 0)
                    os << "  <line stroke=\"#1a5fb4\" stroke-width=\"1.5\" x1=\"" << X(mid[i].x) << "\" y1=\""
                       << Y(mid[i].y) << "\" x2=\"" << X(mid[j].x) << "\" y2=\"" << Y(mid[j].y) << "\"/>\n";
    }
    // Belt line across the drawing.
    const BeltLine& b = *s0.belt;
    XY base = real_point(b.base, s);
    double ang = b.line.m * M_PI / d, L = (maxx - minx) + (maxy - miny) + 4;
    os << "  <line stroke=\"#c01c28\" stroke-width=\"1.2\" stroke-dasharray=\"6,3\" x1=\"" << X(base.x - L * std::cos(ang))
       << "\" y1=\"" << Y(base.y - L * std::sin(ang)) << "\" x2=\"" << X(base.x + L * std::cos(ang)) << "\" y2=\""
       << Y(base.y + L * std::sin(ang)) << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

namespace {

template <class G>
Json graph_json(const G& g) {
    Json verts = Json::array(), edges = Json::array(), depth = Json::object();
    for (int v = 0; v < g.size(); ++v) {
        Json s = to_json(g.seeds[v]);
        s["key"] = g.keys[v];
        verts.push_back(s);
        depth[g.keys[v]] = g.depth[v];
    }
    for (const auto& e : g.edges) edges.push_back({g.keys[e.u], g.keys[e.v], e.k + 1});
    return Json{{"vertices", verts}, {"edges", edges}, {"depth", depth}, {"closed", g.closed}};
}

}  // namespace

std::string export_json(const PlanarGraph& g) { return graph_json(g).dump(1); }
std::string export_json(const SphericalGraph& g) { return graph_json(g).dump(1); }

}  // namespace qb
