#include "quiverbelt/quiverbelt.h"

#include <cstring>
#include <sstream>
#include <string>

#include "quiverbelt/exgraph.hpp"
#include "quiverbelt/rank2.hpp"
#include "quiverbelt/serialize.hpp"
#include "quiverbelt/verify.hpp"

struct qb_matrix {
    qb::ExchangeMatrix m;
};
struct qb_seed {
    qb::PlanarSeed s;
};
struct qb_graph {
    bool planar = true;
    int d = 0;
    qb::PlanarGraph pg;
    qb::SphericalGraph sg;
    qb::SphericalRun run;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return QB_OK;
    } catch (const qb::Error& e) {
        return fail(static_cast<int>(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(QB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QB_ERR_INTERNAL, "unknown failure");
    }
}

void need(const void* p, const char* what) {
    if (!p) throw qb::Error(qb::ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

template <class G>
std::string text_summary(const G& g) {
    std::ostringstream os;
    os << "vertices " << g.size() << "\nedges " << g.edges.size() << "\nclosed " << (g.closed ? "yes" : "no") << "\n";
    int maxd = 0;
    for (int d : g.depth) maxd = std::max(maxd, d);
    os << "max depth " << maxd << "\n";
    return os.str();
}

}  // namespace

extern "C" {

const char* qb_last_error(void) { return g_last_error.c_str(); }

const char* qb_status_name(int status) {
    if (status == QB_OK) return "OK";
    if (status == QB_ERR_INTERNAL) return "Internal";
    if (status >= 1 && status <= 12) return qb::error_name(static_cast<qb::ErrorCode>(status));
    return "Unknown";
}

void qb_free_string(char* s) { std::free(s); }

const char* qb_version(void) { return "0.1.0"; }

int qb_set_precision_bits(long bits) {
    return guarded([&] {
        if (bits < 8) throw qb::Error(qb::ErrorCode::InvalidArgument, "precision must be at least 8 bits");
        qb::set_sign_precision_bits(bits);
    });
}

int qb_matrix_parse(const char* text, qb_matrix** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new qb_matrix{qb::parse_matrix(text)};
    });
}

int qb_matrix_spherical(long p1, long q1, long p2, long q2, qb_matrix** out) {
    return guarded([&] {
        need(out, "out");
        *out = new qb_matrix{qb::spherical_matrix(p1, q1, p2, q2)};
    });
}

int qb_matrix_affine(int d, qb_matrix** out) {
    return guarded([&] {
        need(out, "out");
        *out = new qb_matrix{qb::affine_triple_matrix(d)};
    });
}

int qb_matrix_markov(qb_matrix** out) {
    return guarded([&] {
        need(out, "out");
        *out = new qb_matrix{qb::markov_matrix()};
    });
}

int qb_matrix_mutate(const qb_matrix* m, int k, qb_matrix** out) {
    return guarded([&] {
        need(m, "matrix");
        need(out, "out");
        if (k < 1 || k > m->m.rank()) throw qb::Error(qb::ErrorCode::InvalidArgument, "mutation index out of range");
        *out = new qb_matrix{qb::mutate(m->m, k - 1)};
    });
}

int qb_matrix_json(const qb_matrix* m, char** out) {
    return guarded([&] {
        need(m, "matrix");
        need(out, "out");
        *out = dup(qb::to_json(m->m).dump());
    });
}

void qb_matrix_free(qb_matrix* m) { delete m; }

int qb_classify(const qb_matrix* m, int budget, char** json_out) {
    return guarded([&] {
        need(m, "matrix");
        need(json_out, "out");
        auto r = qb::classify(m->m, budget > 0 ? budget : 512);
        *json_out = dup(qb::to_json(r).dump());
    });
}

int qb_seed_initial(int d, qb_seed** out) {
    return guarded([&] {
        need(out, "out");
        *out = new qb_seed{qb::initial_seed(d)};
    });
}

int qb_seed_mutate(const qb_seed* s, int k, qb_seed** out) {
    return guarded([&] {
        need(s, "seed");
        need(out, "out");
        if (k < 1 || k > 3) throw qb::Error(qb::ErrorCode::InvalidArgument, "mutation index out of range");
        *out = new qb_seed{qb::planar_mutate(s->s, k - 1)};
    });
}

int qb_seed_json(const qb_seed* s, char** out) {
    return guarded([&] {
        need(s, "seed");
        need(out, "out");
        qb::Json j = qb::to_json(s->s);
        j["T"] = qb::to_json(qb::t_invariant(s->s));
        j["acyclic"] = qb::is_acyclic(s->s.B);
        j["feet_on_belt"] = qb::feet_on_belt(s->s, *s->s.belt);
        qb::Json pos = qb::Json::array();
        for (int k = 0; k < 3; ++k) pos.push_back(s->s.positive(k));
        j["positive"] = pos;
        j["key"] = s->s.key();
        *out = dup(j.dump(1));
    });
}

void qb_seed_free(qb_seed* s) { delete s; }

int qb_graph_affine(int d, int depth, int max_vertices, qb_graph** out) {
    return guarded([&] {
        need(out, "out");
        if (depth < 0) throw qb::Error(qb::ErrorCode::InvalidArgument, "depth must be non-negative");
        auto* g = new qb_graph;
        g->planar = true;
        g->d = d;
        try {
            g->pg = qb::bfs_planar(qb::initial_seed(d), depth, max_vertices);
        } catch (...) {
            delete g;
            throw;
        }
        *out = g;
    });
}

int qb_graph_spherical(const qb_matrix* m, unsigned long long rng_seed, int max_vertices, qb_graph** out) {
    return guarded([&] {
        need(m, "matrix");
        need(out, "out");
        auto cr = qb::classify(m->m);
        if (cr.tag != qb::ClassTag::FiniteType)
            throw qb::Error(qb::ErrorCode::UnsupportedClass, "spherical enumeration needs a finite-type matrix");
        auto* g = new qb_graph;
        g->planar = false;
        g->run = qb::enumerate_spherical(m->m, rng_seed, true, 64, max_vertices > 0 ? max_vertices : 4096);
        g->sg = g->run.graph;
        *out = g;
    });
}

int qb_graph_counts(const qb_graph* g, long* vertices, long* edges, int* closed) {
    return guarded([&] {
        need(g, "graph");
        long v = g->planar ? g->pg.size() : g->sg.size();
        long e = g->planar ? static_cast<long>(g->pg.edges.size()) : static_cast<long>(g->sg.edges.size());
        bool c = g->planar ? g->pg.closed : g->sg.closed;
        if (vertices) *vertices = v;
        if (edges) *edges = e;
        if (closed) *closed = c ? 1 : 0;
    });
}

int qb_graph_export(const qb_graph* g, const char* format, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(format, "format");
        need(out, "out");
        std::string f = format;
        std::string s;
        if (f == "json") {
            s = g->planar ? qb::export_json(g->pg) : qb::export_json(g->sg);
        } else if (f == "dot") {
            s = g->planar ? qb::export_dot(g->pg) : qb::export_dot(g->sg);
        } else if (f == "svg") {
            if (!g->planar) throw qb::Error(qb::ErrorCode::InvalidArgument, "svg export needs a planar graph");
            s = qb::export_svg(g->pg);
        } else if (f == "csv") {
            int maxd = 0;
            const auto& depth = g->planar ? g->pg.depth : g->sg.depth;
            for (int d : depth) maxd = std::max(maxd, d);
            s = g->planar ? qb::growth_csv(qb::growth_from(g->pg, maxd)) : qb::growth_csv(qb::growth_from(g->sg, maxd));
        } else if (f == "text") {
            s = g->planar ? text_summary(g->pg) : text_summary(g->sg);
            if (!g->planar) {
                std::ostringstream os;
                os << "reference lambda " << g->run.lambda[0].get_str() << " " << g->run.lambda[1].get_str() << " "
                   << g->run.lambda[2].get_str() << "\ncompatible " << (g->run.compatible ? "yes" : "no") << "\n";
                s += os.str();
            }
        } else {
            throw qb::Error(qb::ErrorCode::InvalidArgument, "unknown format " + f);
        }
        *out = dup(s);
    });
}

int qb_graph_lattice(const qb_graph* g, char** json_out) {
    return guarded([&] {
        need(g, "graph");
        need(json_out, "out");
        if (!g->planar) throw qb::Error(qb::ErrorCode::InvalidArgument, "lattice report needs a planar graph");
        auto L = qb::lattice_report(g->pg, g->d);
        qb::Json j;
        j["d"] = L.d;
        j["units"] = L.units;
        qb::Json sk = qb::Json::array();
        for (const auto& x : L.s_k) sk.push_back(qb::to_json(x));
        j["s_k"] = sk;
        qb::Json wit = qb::Json::array();
        for (const auto& w : L.witnesses)
            wit.push_back({{"k", w.k},
                           {"region", g->pg.keys[w.region]},
                           {"length", qb::to_json(w.length)},
                           {"equals_s_k", w.length == w.predicted},
                           {"parallel_to_belt", w.translation.parallel_to_belt}});
        j["witnesses"] = wit;
        j["rank_R"] = L.r_rank;
        j["rank_observed"] = L.l_rank;
        j["predicted_rank"] = L.predicted_rank;
        if (L.d % 2 == 0) j["predicted_L_rank_alternatives"] = {L.predicted_rank, 2 * L.predicted_rank};
        if (L.d == 5)
            j["note"] = "the observed lattice has rank 2; describing it by a single generator would contradict the rank";
        j["observed_lengths"] = L.observed.size();
        j["all_translations_parallel_to_belt"] = L.all_parallel;
        j["translation_pairs"] = L.translation_pairs;
        j["reflection_congruences"] = L.reflection_pairs;
        j["common_denominator"] = L.common_denominator.get_str();
        *json_out = dup(j.dump(1));
    });
}

int qb_graph_census(const qb_graph* g, char** json_out) {
    return guarded([&] {
        need(g, "graph");
        need(json_out, "out");
        if (!g->planar) throw qb::Error(qb::ErrorCode::InvalidArgument, "census needs a planar graph");
        auto c = qb::quotient_census(g->pg, g->d);
        qb::Json cls = qb::Json::array();
        for (const auto& x : c.classes)
            cls.push_back({{"angles", x.angles},
                           {"members", x.members},
                           {"translation_classes", x.translation_classes},
                           {"translates_verified", x.translates_verified}});
        qb::Json j{{"classes", cls},
                   {"observed_triples", c.observed_triples},
                   {"predicted_triples", c.predicted_triples},
                   {"triples_match", c.triples_match},
                   {"two_classes_each", c.all_two}};
        *json_out = dup(j.dump(1));
    });
}

void qb_graph_free(qb_graph* g) { delete g; }

int qb_growth_csv(int d, int n, char** out) {
    return guarded([&] {
        need(out, "out");
        if (n < 0) throw qb::Error(qb::ErrorCode::InvalidArgument, "radius must be non-negative");
        *out = dup(qb::growth_csv(qb::growth(qb::initial_seed(d), n)));
    });
}

int qb_rank2_orbit(long a, long b, long q, long* period, long* lazy_count, int* compatible) {
    return guarded([&] {
        auto s = qb::initial_sector(a, b);
        auto u = qb::ReferencePoint2D::direction(q);
        auto o = qb::orbit_period(s, u);
        if (period) *period = o.period;
        if (lazy_count) *lazy_count = o.lazy_count;
        if (compatible) *compatible = qb::is_compatible(u, s) ? 1 : 0;
    });
}

int qb_verify(const char* criteria, char** json_out, int* all_ok) {
    return guarded([&] {
        need(json_out, "out");
        std::vector<int> ids;
        if (criteria && *criteria) {
            std::stringstream ss(criteria);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    ids.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw qb::Error(qb::ErrorCode::ParseError, "bad criterion id: " + tok);
                }
            }
        } else {
            ids = qb::all_criteria();
        }
        auto res = qb::run_acceptance(ids);
        qb::Json arr = qb::Json::array();
        bool ok = true;
        for (const auto& r : res) {
            ok = ok && r.pass;
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"known_deviation", r.known_deviation},
                           {"seconds", r.seconds},
                           {"limit_seconds", r.limit},
                           {"detail", r.detail}});
        }
        if (all_ok) *all_ok = ok ? 1 : 0;
        *json_out = dup(qb::Json{{"checks", arr}}.dump(1));
    });
}

}  // extern "C"
