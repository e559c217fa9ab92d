#include "quiverbelt/serialize.hpp"

namespace qb {

Json to_json(const FieldElem& a) {
    Json c = Json::array();
    for (const auto& q : a.coeffs()) c.push_back(q.get_str());
    return Json{{"level", a.level()}, {"coeffs", c}, {"approx", a.to_double()}};
}

FieldElem field_from_json(const Json& j) {
    try {
        int level = j.at("level").get<int>();
        std::vector<Rational> c;
        for (const auto& e : j.at("coeffs")) {
            Rational q;
            if (e.is_string()) {
                if (q.set_str(e.get<std::string>(), 10) != 0) throw Error(ErrorCode::ParseError, "bad rational");
            } else {
                q = e.get<long>();
            }
            q.canonicalize();
            c.push_back(q);
        }
        if (static_cast<int>(c.size()) != field_degree(level))
            throw Error(ErrorCode::ParseError, "coefficient count does not match the field degree");
        return FieldElem(level, c);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

Json to_json(const IntPoly& p) {
    Json c = Json::array();
    for (const auto& z : p.coeffs()) c.push_back(z.get_str());
    return c;
}

Json to_json(const ExchangeMatrix& B) {
    Json rows = Json::array();
    for (int i = 0; i < B.rank(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < B.rank(); ++j) r.push_back(to_json(B.at(i, j)));
        rows.push_back(r);
    }
    return Json{{"level", B.level()}, {"rows", rows}};
}

ExchangeMatrix matrix_from_json(const Json& j) {
    std::vector<std::vector<FieldElem>> rows;
    for (const auto& r : j.at("rows")) {
        std::vector<FieldElem> row;
        for (const auto& e : r) row.push_back(field_from_json(e));
        rows.push_back(row);
    }
    return ExchangeMatrix::from_rows(rows);
}

Json to_json(const PlanarPoint& p) { return Json{{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

namespace {

Json quiver_json(const ExchangeMatrix& B) {
    Json q = Json::array();
    for (int i = 0; i < B.rank(); ++i)
        for (int j = 0; j < B.rank(); ++j)
            if (B.at(i, j).sign() > 0) q.push_back({i, j});
    return q;
}

}  // namespace

Json to_json(const PlanarSeed& s) {
    Json j;
    j["level"] = s.d();
    Json lines = Json::array();
    for (const auto& l : s.lines) lines.push_back(Json{{"m", l.m}, {"h", to_json(l.h)}});
    j["lines"] = lines;
    Json verts = Json::array();
    Json rays = Json::array();
    if (s.kind() == RegionKind::Triangle) {
        j["kind"] = "triangle";
        for (int k = 0; k < 3; ++k) verts.push_back(to_json(*s.vertex(k)));
    } else {
        j["kind"] = "region";
        auto r = region_data(s);
        verts.push_back(to_json(r->p));
        verts.push_back(to_json(r->q));
        rays.push_back(r->ray_dir_p);
        rays.push_back(r->ray_dir_q);
        j["finite_side"] = r->finite_side;
    }
    j["vertices"] = verts;
    j["rays"] = rays;
    j["angles"] = s.angles();
    j["quiver"] = quiver_json(s.B);
    j["B"] = to_json(s.B);
    return j;
}

Json to_json(const SphericalSeed& s) {
    Json vs = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json v = Json::array();
        for (int c = 0; c < 3; ++c) v.push_back(to_json(s.v[i][c]));
        vs.push_back(v);
    }
    Json ref = Json::array();
    for (const auto& q : *s.ref) ref.push_back(q.get_str());
    return Json{{"level", s.level()}, {"vectors", vs}, {"quiver", quiver_json(s.B)}, {"B", to_json(s.B)},
                {"reference", ref}};
}

Json to_json(const ClassificationResult& r) {
    Json j{{"class", class_tag_name(r.tag)},
           {"markov_constant", to_json(r.markov)},
           {"reason", r.reason},
           {"class_size", r.class_size},
           {"class_closed", r.class_closed}};
    if (r.tag == ClassTag::FiniteType)
        j["pair"] = {std::to_string(r.p1) + "/" + std::to_string(r.q1), std::to_string(r.p2) + "/" + std::to_string(r.q2)};
    if (r.tag == ClassTag::Affine) {
        j["d"] = r.d;
        j["triple"] = r.triple;
    }
    return j;
}

}  // namespace qb
