// Command line front end. Talks to the library only through the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "quiverbelt/quiverbelt.h"

namespace {

struct Failure {
    int status;
};

void check(int status) {
    if (status != QB_OK) throw Failure{status};
}

std::string take(char* s) {
    std::string r = s ? s : "";
    qb_free_string(s);
    return r;
}

struct Source {
    int affine = 0;
    std::string sph;
    std::string matrix_file;
    std::string matrix_text;
    bool markov = false;
};

void add_source(CLI::App* app, Source& src) {
    auto* g = app->add_option_group("source");
    g->add_option("--affine", src.affine, "affine level d >= 3");
    g->add_option("--sph", src.sph, "spherical pair t1,t2 as fractions, e.g. 1/3,2/5");
    g->add_option("--matrix", src.matrix_file, "file holding a 3x3 exchange matrix");
    g->add_option("--entries", src.matrix_text, "exchange matrix given inline");
    g->add_flag("--markov", src.markov, "the Markov quiver");
    g->require_option(1);
}

void parse_fraction(const std::string& s, long& p, long& q) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("--sph", "expected p/q, got " + s);
    p = std::stol(s.substr(0, slash));
    q = std::stol(s.substr(slash + 1));
}

qb_matrix* load_matrix(const Source& src) {
    qb_matrix* m = nullptr;
    if (src.affine) {
        check(qb_matrix_affine(src.affine, &m));
    } else if (src.markov) {
        check(qb_matrix_markov(&m));
    } else if (!src.sph.empty()) {
        auto comma = src.sph.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--sph", "expected t1,t2");
        long p1, q1, p2, q2;
        parse_fraction(src.sph.substr(0, comma), p1, q1);
        parse_fraction(src.sph.substr(comma + 1), p2, q2);
        check(qb_matrix_spherical(p1, q1, p2, q2, &m));
    } else {
        std::string text = src.matrix_text;
        if (!src.matrix_file.empty()) {
            std::ifstream in(src.matrix_file);
            if (!in) {
                std::cerr << "error: cannot read " << src.matrix_file << "\n";
                throw Failure{QB_ERR_IO};
            }
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        check(qb_matrix_parse(text.c_str(), &m));
    }
    return m;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        throw Failure{QB_ERR_IO};
    }
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

using MatrixPtr = std::unique_ptr<qb_matrix, decltype(&qb_matrix_free)>;
using GraphPtr = std::unique_ptr<qb_graph, decltype(&qb_graph_free)>;

GraphPtr build_graph(const Source& src, int depth, int max_vertices, unsigned long long seed) {
    qb_graph* g = nullptr;
    if (src.affine) {
        check(qb_graph_affine(src.affine, depth, max_vertices, &g));
    } else {
        MatrixPtr m(load_matrix(src), qb_matrix_free);
        check(qb_graph_spherical(m.get(), seed, max_vertices, &g));
    }
    return GraphPtr(g, qb_graph_free);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* bits = std::getenv("QUIVERBELT_PRECISION_BITS")) {
        char* end = nullptr;
        long b = std::strtol(bits, &end, 10);
        if (end == bits || *end != '\0' || qb_set_precision_bits(b) != QB_OK) {
            std::cerr << "error: invalid QUIVERBELT_PRECISION_BITS\n";
            return 2;
        }
    }

    CLI::App app{"quiverbelt: exchange graphs of rank-3 quivers with real weights"};
    app.require_subcommand(1);
    app.footer(
        "Matrices: three upper-triangle entries \"b12,b13,b23\" or full rows separated by ';'.\n"
        "An entry is a rational such as 3/2 or \"cos(a/b)\" / \"-cos(a/b)\" meaning +-2cos(a pi/b).\n"
        "QUIVERBELT_PRECISION_BITS sets the starting precision of the sign oracle.");
    std::string out;
    app.add_option("-o,--out", out, "output file (default stdout)");

    Source src;
    int depth = 8;
    int max_vertices = 200000;
    unsigned long long seed = 1;
    std::string format = "text";

    auto* classify = app.add_subcommand("classify", "classify the mutation class of a matrix");
    add_source(classify, src);
    int budget = 512;
    classify->add_option("--budget", budget, "mutation class search budget");

    auto* enumerate = app.add_subcommand("enumerate", "enumerate the exchange graph");
    add_source(enumerate, src);
    enumerate->add_option("--depth", depth, "breadth-first depth for affine levels");
    enumerate->add_option("--max-vertices", max_vertices, "vertex budget");
    enumerate->add_option("--seed", seed, "random seed for sampled reference points");
    enumerate->add_option("--format", format, "text, json, dot, svg or csv")
        ->check(CLI::IsMember({"text", "json", "dot", "svg", "csv"}));

    auto* lattice = app.add_subcommand("lattice", "translation lattice report for an affine level");
    int lat_d = 0;
    lattice->add_option("--affine", lat_d, "affine level d")->required();
    lattice->add_option("--depth", depth, "breadth-first depth");

    auto* census = app.add_subcommand("census", "census of seeds modulo translations");
    int cen_d = 0;
    census->add_option("--affine", cen_d, "affine level d")->required();
    census->add_option("--depth", depth, "breadth-first depth");

    auto* growth = app.add_subcommand("growth", "growth table of an affine level");
    int gr_d = 0, gr_n = 16;
    growth->add_option("--affine", gr_d, "affine level d")->required();
    growth->add_option("-n,--radius", gr_n, "largest radius");

    auto* rank2 = app.add_subcommand("rank2", "orbit of tau mu_2 in the rank-2 sector model");
    long ra = 1, rb = 3, rq = 1, grid = 0;
    auto* opt_a = rank2->add_option("-a", ra, "sector angle numerator");
    auto* opt_b = rank2->add_option("-b", rb, "sector angle denominator");
    auto* opt_q = rank2->add_option("-q", rq, "reference direction in units of pi/(2b)");
    auto* opt_grid = rank2->add_option("--grid", grid, "CSV of a,b,q,class,period for all b up to this value");
    opt_grid->excludes(opt_a)->excludes(opt_b)->excludes(opt_q);

    auto* walk = app.add_subcommand("walk", "apply a sequence of mutations to the initial seed");
    int walk_d = 0;
    std::string path;
    walk->add_option("--affine", walk_d, "affine level d")->required();
    walk->add_option("--path", path, "mutation indices 1..3, e.g. 1,2,3,1");

    auto* render = app.add_subcommand("render", "draw an affine exchange graph as SVG");
    int ren_d = 0;
    render->add_option("--affine", ren_d, "affine level d")->required();
    render->add_option("--depth", depth, "breadth-first depth");

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    std::string criteria;
    bool verify_json = false;
    verify->add_option("--criteria", criteria, "comma separated ids (default all)");
    verify->add_flag("--json", verify_json, "print the full JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) {
            MatrixPtr m(load_matrix(src), qb_matrix_free);
            char* s = nullptr;
            check(qb_classify(m.get(), budget, &s));
            emit(take(s), out);
        } else if (enumerate->parsed()) {
            auto g = build_graph(src, depth, max_vertices, seed);
            char* s = nullptr;
            check(qb_graph_export(g.get(), format.c_str(), &s));
            emit(take(s), out);
        } else if (lattice->parsed()) {
            qb_graph* g = nullptr;
            check(qb_graph_affine(lat_d, depth, max_vertices, &g));
            GraphPtr gp(g, qb_graph_free);
            char* s = nullptr;
            check(qb_graph_lattice(g, &s));
            emit(take(s), out);
        } else if (census->parsed()) {
            qb_graph* g = nullptr;
            check(qb_graph_affine(cen_d, depth, max_vertices, &g));
            GraphPtr gp(g, qb_graph_free);
            char* s = nullptr;
            check(qb_graph_census(g, &s));
            emit(take(s), out);
        } else if (growth->parsed()) {
            char* s = nullptr;
            check(qb_growth_csv(gr_d, gr_n, &s));
            emit(take(s), out);
        } else if (rank2->parsed() && grid > 0) {
            std::ostringstream os;
            os << "a,b,q,class,period\n";
            for (long b = 3; b <= grid; ++b)
                for (long a = 1; 2 * a < b; ++a) {
                    if (std::gcd(a, b) != 1) continue;
                    for (long q = 0; q < 4 * b; ++q) {
                        long period = 0, lazy = 0;
                        int compatible = 0;
                        int st = qb_rank2_orbit(a, b, q, &period, &lazy, &compatible);
                        if (st == QB_ERR_DEGENERATE_REFERENCE) {
                            os << a << "," << b << "," << q << ",critical,\n";
                            continue;
                        }
                        check(st);
                        os << a << "," << b << "," << q << "," << (compatible ? "compatible" : "incompatible") << ","
                           << period << "\n";
                    }
                }
            emit(os.str(), out);
        } else if (rank2->parsed()) {
            if (!opt_a->count() || !opt_b->count() || !opt_q->count()) {
                std::cerr << "error: rank2 needs -a, -b and -q, or --grid\n";
                return 2;
            }
            long period = 0, lazy = 0;
            int compatible = 0;
            check(qb_rank2_orbit(ra, rb, rq, &period, &lazy, &compatible));
            std::ostringstream os;
            os << "period " << period << "\nlazy " << lazy << "\ncompatible " << (compatible ? "yes" : "no") << "\n";
            emit(os.str(), out);
        } else if (walk->parsed()) {
            qb_seed* s = nullptr;
            check(qb_seed_initial(walk_d, &s));
            std::unique_ptr<qb_seed, decltype(&qb_seed_free)> cur(s, qb_seed_free);
            std::stringstream ps(path);
            std::string tok;
            while (std::getline(ps, tok, ',')) {
                if (tok.empty()) continue;
                qb_seed* next = nullptr;
                check(qb_seed_mutate(cur.get(), std::stoi(tok), &next));
                cur.reset(next);
            }
            char* js = nullptr;
            check(qb_seed_json(cur.get(), &js));
            emit(take(js), out);
        } else if (render->parsed()) {
            qb_graph* g = nullptr;
            check(qb_graph_affine(ren_d, depth, max_vertices, &g));
            GraphPtr gp(g, qb_graph_free);
            char* s = nullptr;
            check(qb_graph_export(g, "svg", &s));
            emit(take(s), out);
        } else if (verify->parsed()) {
            char* s = nullptr;
            int all_ok = 0;
            check(qb_verify(criteria.empty() ? nullptr : criteria.c_str(), &s, &all_ok));
            std::string report = take(s);
            const auto doc = nlohmann::json::parse(report);
            bool unexpected = false;
            std::ostringstream os;
            for (const auto& c : doc.at("checks")) {
                bool pass = c.at("pass").get<bool>();
                bool known = c.at("known_deviation").get<bool>();
                if (!pass && !known) unexpected = true;
                os << "criterion " << c.at("id").get<int>() << " " << c.at("name").get<std::string>() << ": "
                   << (pass ? "PASS" : known ? "FAIL (known deviation)" : "FAIL") << "\n";
            }
            emit(verify_json ? report : os.str(), out);
            // Failures that reproduce a documented deviation do not fail the run.
            return unexpected ? 1 : 0;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << qb_status_name(f.status);
        const char* msg = qb_last_error();
        if (msg && *msg) std::cerr << ": " << msg;
        std::cerr << "\n";
        return f.status == QB_ERR_INTERNAL ? 3 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
