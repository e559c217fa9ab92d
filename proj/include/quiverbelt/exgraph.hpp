#pragma once

// Exchange graphs: breadth-first enumeration of seeds, growth tables,
// acyclic belts, translation lattices and the quotient census.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "quiverbelt/seedgeom.hpp"

namespace qb {

struct GraphEdge {
    int u, v;
    int k;  // mutation index at u (0-based)
};

template <class Seed>
struct ExchangeGraphData {
    std::vector<Seed> seeds;
    std::vector<std::string> keys;
    std::vector<int> depth;
    std::vector<GraphEdge> edges;  // one entry per unordered pair, u < v
    std::unordered_map<std::string, int> index;
    bool closed = false;           // frontier exhausted within the limits

    int size() const { return static_cast<int>(seeds.size()); }
    std::optional<int> find(const std::string& key) const {
        auto it = index.find(key);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

// Breadth-first closure. depth_limit < 0 means unlimited depth. Throws
// BudgetExceeded when strict is set and vertex_limit is hit; otherwise
// returns the partial graph with closed = false.
template <class Seed, class Mutate>
ExchangeGraphData<Seed> bfs_generic(const Seed& initial, Mutate mutate_fn, int depth_limit, int vertex_limit,
                                    bool strict = false) {
    ExchangeGraphData<Seed> g;
    auto add = [&](const Seed& s, int dep) {
        std::string k = s.key();
        g.index.emplace(k, g.size());
        g.seeds.push_back(s);
        g.keys.push_back(std::move(k));
        g.depth.push_back(dep);
    };
    add(initial, 0);
    std::map<std::pair<int, int>, int> seen_edges;
    std::vector<int> frontier{0};
    int dep = 0;
    bool truncated = false;
    while (!frontier.empty()) {
        bool expand = depth_limit < 0 || dep < depth_limit;
        std::vector<int> next;
        for (int u : frontier) {
            for (int k = 0; k < 3; ++k) {
                Seed t = mutate_fn(g.seeds[u], k);
                std::string key = t.key();
                auto it = g.index.find(key);
                int v;
                if (it != g.index.end()) {
                    v = it->second;
                } else {
                    if (!expand) {
                        truncated = true;
                        continue;
                    }
                    if (vertex_limit > 0 && g.size() >= vertex_limit) {
                        if (strict) throw Error(ErrorCode::BudgetExceeded, "vertex limit reached");
                        truncated = true;
                        continue;
                    }
                    v = g.size();
                    add(t, dep + 1);
                    next.push_back(v);
                }
                auto e = std::minmax(u, v);
                if (!seen_edges.count({e.first, e.second})) {
                    seen_edges[{e.first, e.second}] = 1;
                    g.edges.push_back(GraphEdge{u, v, k});
                }
            }
        }
        frontier = std::move(next);
        ++dep;
    }
    g.closed = !truncated;
    return g;
}

using PlanarGraph = ExchangeGraphData<PlanarSeed>;
using SphericalGraph = ExchangeGraphData<SphericalSeed>;

PlanarGraph bfs_planar(const PlanarSeed& initial, int depth_limit, int vertex_limit = 0);
SphericalGraph bfs_spherical(const SphericalSeed& initial, int vertex_limit = 4096);

// ------------------------------------------------------------ spherical

struct SphericalRun {
    SphericalGraph graph;
    std::array<Rational, 3> lambda;  // (e_i, u) = -lambda_i
    int attempts = 0;
    bool compatible = false;         // every seed passes the rank-2 period test
    bool invariants = false;         // Gram conditions after every mutation
    bool involutive = false;
};
// Tries lambda = (1,1,1) first when canonical_first is set, then samples
// positive rationals from the seeded generator until the closure is
// compatible.
SphericalRun enumerate_spherical(const ExchangeMatrix& B, std::uint64_t rng_seed, bool canonical_first = true,
                                 int max_attempts = 64, int vertex_limit = 4096);

// Graph isomorphism of two exchange graphs (Boost VF2 based).
template <class A, class B>
bool graphs_isomorphic(const ExchangeGraphData<A>& a, const ExchangeGraphData<B>& b);
bool isomorphic_edges(int n, const std::vector<GraphEdge>& ea, int m, const std::vector<GraphEdge>& eb);

template <class A, class B>
bool graphs_isomorphic(const ExchangeGraphData<A>& a, const ExchangeGraphData<B>& b) {
    return isomorphic_edges(a.size(), a.edges, b.size(), b.edges);
}

// --------------------------------------------------------------- growth

struct GrowthTable {
    std::vector<std::pair<int, long>> rows;  // (n, gr(n))
};
template <class Seed>
GrowthTable growth_from(const ExchangeGraphData<Seed>& g, int N) {
    GrowthTable t;
    std::vector<long> count(N + 1, 0);
    for (int dep : g.depth)
        if (dep <= N) ++count[dep];
    long acc = 0;
    for (int n = 0; n <= N; ++n) {
        acc += count[n];
        t.rows.push_back({n, acc});
    }
    return t;
}
GrowthTable growth(const PlanarSeed& initial, int N);
// Least-squares slope of log gr(n) against log n over lo <= n <= hi.
double loglog_slope(const GrowthTable& t, int lo, int hi);
std::string growth_csv(const GrowthTable& t);
GrowthTable parse_growth_csv(const std::string& csv);

// ------------------------------------------------------------ planar

// I_{-steps} .. I_{steps}; index steps is I_0. I_{n+1} is the mutation of I_n
// at its source.
std::vector<PlanarSeed> acyclic_belt(const PlanarSeed& initial, int steps);

struct RegionWitness {
    long k = 0;                  // angle between the finite side and the rays
    int region = -1;             // vertex index in the graph
    int neighbour = -1;          // mutation at a parallel side
    FieldElem length;            // |w|
    FieldElem predicted;         // s_k
    Translation translation;
};

struct LatticeReport {
    int d = 0;
    std::vector<long> units;            // k in [1, d/2] coprime to d
    std::vector<FieldElem> s_k;         // predicted generators of R
    std::vector<RegionWitness> witnesses;
    int r_rank = 0;                     // rank of the witnessed s_k
    std::vector<FieldElem> observed;    // distinct |w| of translations found
    int l_rank = 0;                     // rank of all observed lengths
    int predicted_rank = 0;             // phi(d)/2
    bool all_parallel = true;           // every translation is parallel to b
    int translation_pairs = 0;
    int reflection_pairs = 0;           // congruences by the reflection across b
    Rational common_denominator;        // of observed lengths in units of T
};
LatticeReport lattice_report(const PlanarGraph& g, int d);

struct CensusClass {
    std::array<long, 3> angles;         // sorted
    std::string abstract_key;
    int members = 0;
    int translation_classes = 0;
    bool translates_verified = true;
};
struct Census {
    std::vector<CensusClass> classes;
    std::vector<std::array<long, 3>> observed_triples;   // sorted, distinct
    std::vector<std::array<long, 3>> predicted_triples;  // gcd 1, sum d
    bool triples_match = false;
    bool all_two = false;
};
Census quotient_census(const PlanarGraph& g, int d);

// Checks that the translated belt I + w is a full subgraph of g: consecutive
// translates are joined by their source mutation, no other edges among them,
// and the graph's translated vertices form one contiguous run of at least
// min_run seeds.
struct BeltCheck {
    bool ok = false;
    int present = 0;
    std::string detail;
};
BeltCheck belt_subgraph_check(const PlanarGraph& g, const PlanarSeed& initial, const PlanarPoint& w, int steps,
                              int min_run = 7);

// Markov matrix mutation graph to the given depth; true if the only cycles
// are the involution back-edges (the graph is a tree).
struct MarkovTreeCheck {
    bool is_tree = false;
    int vertices = 0;
    int edges = 0;
};
MarkovTreeCheck markov_tree_check(int depth);

// --------------------------------------------------------------- exports

template <class Seed>
std::string export_dot(const ExchangeGraphData<Seed>& g);
std::string dot_from(const std::vector<std::string>& keys, const std::vector<GraphEdge>& edges);
template <class Seed>
std::string export_dot(const ExchangeGraphData<Seed>& g) {
    return dot_from(g.keys, g.edges);
}
std::string export_svg(const PlanarGraph& g, int max_seeds = 400);
std::string export_json(const PlanarGraph& g);
std::string export_json(const SphericalGraph& g);

}  // namespace qb
