#include <algorithm>
#include <map>
#include <mutex>

#include "quiverbelt/seedgeom.hpp"

namespace qb {

PlanarContext::PlanarContext(int d) : d_(d) {
    if (d < 3) throw Error(ErrorCode::InvalidArgument, "planar model needs d >= 3");
    for (long m = 0; m < 2 * d; ++m) {
        g_.push_back(cos_multiple(d, m));
        C_.push_back(g_.back().scaled(Rational(1, 2)));
        S_.push_back(sin_quotient(d, m));
        sin2_.push_back(sin_squared(d, m));
        invS_.push_back(m % d == 0 ? FieldElem::zero(d) : S_.back().inv());
    }
    s2_ = sin_squared(d, 1);
}

const FieldElem& PlanarContext::inv_S(long m) const {
    long r = mod_floor(m, 2 * d_);
    if (r % d_ == 0) throw Error(ErrorCode::DivisionByZero, "parallel lines have no intersection");
    return invS_[r];
}

FieldElem PlanarContext::eval(const PlanarLine& l, const PlanarPoint& p) const {
    return S(l.m) * p.x - C(l.m) * p.y - l.h;
}

PlanarLine PlanarContext::through(long m, const PlanarPoint& p) const {
    long r = mod_floor(m, 2 * d_);
    return PlanarLine{r, S(r) * p.x - C(r) * p.y};
}

PlanarPoint PlanarContext::intersect(const PlanarLine& a, const PlanarLine& b) const {
    const FieldElem& inv = inv_S(b.m - a.m);
    FieldElem x = (C(a.m) * b.h - C(b.m) * a.h) * inv;
    FieldElem y = (S(a.m) * b.h - S(b.m) * a.h) * inv;
    return PlanarPoint{x, y};
}

PlanarPoint PlanarContext::foot(const PlanarPoint& p, const PlanarLine& l) const {
    FieldElem g = eval(l, p);
    return PlanarPoint{p.x - s2_ * g * S(l.m), p.y + g * C(l.m)};
}

PlanarLine PlanarContext::reflect(const PlanarLine& l, const PlanarLine& k) const {
    return PlanarLine{mod_floor(2 * k.m - l.m + d_, 2 * d_), l.h - g(l.m - k.m) * k.h};
}

FieldElem PlanarContext::along(const PlanarPoint& p, const PlanarPoint& q, long m) const {
    return (q.x - p.x) * C(m) + s2_ * (q.y - p.y) * S(m);
}

std::shared_ptr<const PlanarContext> planar_context(int d) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const PlanarContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const PlanarContext>(d);
    cache[d] = ctx;
    return ctx;
}

bool on_line(const PlanarContext& ctx, const PlanarLine& l, const PlanarPoint& p) {
    return ctx.eval(l, p).is_zero();
}

// ------------------------------------------------------------ PlanarSeed

namespace {

bool parallel(long a, long b, int d) { return mod_floor(a - b, d) == 0; }

void others(int k, int& i, int& j) {
    i = k == 0 ? 1 : 0;
    j = k == 2 ? 1 : 2;
}

}  // namespace

RegionKind PlanarSeed::kind() const {
    int d = this->d();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (parallel(lines[i].m, lines[j].m, d)) return RegionKind::Region;
    return RegionKind::Triangle;
}

std::optional<PlanarPoint> PlanarSeed::vertex(int k) const {
    int i, j;
    others(k, i, j);
    if (parallel(lines[i].m, lines[j].m, d())) return std::nullopt;
    return ctx->intersect(lines[i], lines[j]);
}

long PlanarSeed::angle(int k) const {
    int i, j;
    others(k, i, j);
    long d = this->d();
    long dm = mod_floor(lines[i].m - lines[j].m, 2 * d);
    if (dm % d == 0) return 0;
    return d - std::min(dm, 2 * d - dm);
}

bool PlanarSeed::positive(int k) const {
    if (!belt) throw Error(ErrorCode::InvalidArgument, "seed has no belt line");
    long d = this->d();
    long r = mod_floor(lines[k].m - belt->line.m, 2 * d);
    if (r > d) return true;
    if (r > 0 && r < d) return false;
    // Side parallel to b: u lies on b, far away along it.
    int sg = ctx->eval(lines[k], belt->base).sign();
    if (sg == 0) throw Error(ErrorCode::DegeneratePositivity, "side lies on the belt line");
    return sg < 0;
}

std::string PlanarSeed::key() const {
    std::vector<int> p{0, 1, 2};
    std::sort(p.begin(), p.end(), [&](int a, int b) { return lines[a].m < lines[b].m; });
    std::string k;
    for (int i : p) k += std::to_string(lines[i].m) + ":" + lines[i].h.to_string() + "|";
    k += B.permuted(p).raw_key();
    return k;
}

bool PlanarSeed::is_obtuse() const {
    for (int k = 0; k < 3; ++k)
        if (2 * angle(k) > d()) return true;
    return false;
}

PlanarSeed initial_seed(int d) {
    PlanarSeed s;
    s.ctx = planar_context(d);
    const PlanarContext& c = *s.ctx;
    s.B = ExchangeMatrix(3, d);
    long n = d / 2;
    FieldElem zero = FieldElem::zero(d);
    if (d % 2) {
        // Isosceles triangle with apex angle pi/d and unit legs.
        PlanarPoint A{-c.C(n), zero}, Bp{c.C(n), zero}, apex{zero, c.S(n)};
        s.lines = {c.through(0, A), c.through(d + n, apex), c.through(d - n, Bp)};
        s.B.set(0, 1, c.g(n));
        s.B.set(0, 2, c.g(n));
        s.B.set(1, 2, c.g(1));
    } else {
        // Right triangle with angles pi/d, (n-1)pi/d, pi/2 and unit hypotenuse.
        PlanarPoint A3{zero, zero}, A1{c.C(1), zero}, A2{zero, FieldElem::one(d)};
        s.lines = {c.through(d + n, A2), c.through(0, A3), c.through(d - 1, A1)};
        s.B.set(0, 2, c.g(n - 1));
        s.B.set(1, 2, -c.g(1));
    }
    s.belt = std::make_shared<const BeltLine>(belt_line(s));
    return s;
}

BeltLine belt_line(const PlanarSeed& s0) {
    if (!is_acyclic(s0.B) || s0.kind() != RegionKind::Triangle)
        throw Error(ErrorCode::NotAcyclic, "belt line needs an acyclic triangle");
    auto src = sources(s0.B), snk = sinks(s0.B);
    if (src.size() != 1 || snk.size() != 1)
        throw Error(ErrorCode::NotAcyclic, "belt line needs a unique source and sink");
    int a = src[0], c = snk[0], mid = 3 - a - c;
    const PlanarContext& ctx = *s0.ctx;
    long d = ctx.d();
    PlanarPoint base = ctx.foot(*s0.vertex(a), s0.lines[a]);
    long mb = mod_floor(s0.lines[a].m + s0.lines[c].m - s0.lines[mid].m, d);
    // Orient b so that the source side is positive.
    if (mod_floor(s0.lines[a].m - mb, 2 * d) < d) mb += d;
    return BeltLine{ctx.through(mb, base), base};
}

PlanarSeed planar_mutate(const PlanarSeed& s, int k) {
    if (k < 0 || k > 2) throw Error(ErrorCode::InvalidArgument, "mutation index out of range");
    bool pos = s.positive(k);
    const PlanarContext& c = *s.ctx;
    PlanarSeed t = s;
    for (int i = 0; i < 3; ++i) {
        if (i == k) continue;
        const FieldElem& bik = s.B.at(i, k);
        if (!bik.is_zero() && (bik.sign() < 0) == pos) t.lines[i] = c.reflect(s.lines[i], s.lines[k]);
    }
    t.lines[k] = PlanarLine{mod_floor(s.lines[k].m + c.d(), 2 * c.d()), -s.lines[k].h};
    t.B = mutate(s.B, k);
    return t;
}

bool planar_involution_holds(const PlanarSeed& s, int k) {
    PlanarSeed t = planar_mutate(planar_mutate(s, k), k);
    return t.lines == s.lines && t.B == s.B;
}

FieldElem side_length(const PlanarSeed& s, int k) {
    int i, j;
    others(k, i, j);
    auto p = s.vertex(i), q = s.vertex(j);
    if (!p || !q) throw Error(ErrorCode::InvalidArgument, "side is not finite");
    return s.ctx->along(*p, *q, s.lines[k].m).abs();
}

FieldElem t_invariant(const PlanarSeed& s) {
    const PlanarContext& c = *s.ctx;
    if (s.kind() == RegionKind::Triangle)
        return side_length(s, 0) * c.s2() * c.S(s.angle(1)) * c.S(s.angle(2));
    auto r = region_data(s);
    return side_length(s, r->finite_side) * c.sin2(r->angle);
}

FieldElem predicted_side_length(const PlanarSeed& s, int k) {
    int i, j;
    others(k, i, j);
    const PlanarContext& c = *s.ctx;
    FieldElem den = c.s2() * c.S(s.angle(i)) * c.S(s.angle(j));
    if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "side is not finite");
    return t_invariant(s) / den;
}

FieldElem translation_length(int d, long k) {
    return t_invariant(initial_seed(d)) / planar_context(d)->sin2(k);
}

FieldElem orthic_perimeter(const PlanarSeed& s) {
    if (s.kind() != RegionKind::Triangle || s.is_obtuse())
        throw Error(ErrorCode::InvalidArgument, "orthic triangle needs an acute triangle");
    const PlanarContext& c = *s.ctx;
    PlanarPoint H[3];
    for (int k = 0; k < 3; ++k) H[k] = c.foot(*s.vertex(k), s.lines[k]);
    FieldElem total = FieldElem::zero(c.d());
    for (int k = 0; k < 3; ++k) {
        int i, j;
        others(k, i, j);
        FieldElem len = side_length(s, k) * c.C(s.angle(k)).abs();
        FieldElem dx = H[i].x - H[j].x, dy = H[i].y - H[j].y;
        if (dx * dx + c.s2() * dy * dy != len * len)
            throw Error(ErrorCode::InvalidArgument, "orthic side length mismatch");
        total += len;
    }
    return total;
}

std::vector<PlanarPoint> designated_feet(const PlanarSeed& s) {
    std::vector<PlanarPoint> out;
    if (s.kind() != RegionKind::Triangle) return out;
    const PlanarContext& c = *s.ctx;
    auto foot_on = [&](int k) { return c.foot(*s.vertex(k), s.lines[k]); };
    if (!s.is_obtuse()) {
        auto src = sources(s.B), snk = sinks(s.B);
        if (src.empty() || snk.empty()) return out;
        out.push_back(foot_on(src[0]));
        out.push_back(foot_on(snk[0]));
        return out;
    }
    for (int k = 0; k < 3; ++k)
        if (2 * s.angle(k) > s.d()) {
            int i, j;
            others(k, i, j);
            out.push_back(foot_on(i));
            out.push_back(foot_on(j));
        }
    return out;
}

bool feet_on_belt(const PlanarSeed& s, const BeltLine& b) {
    if (s.kind() == RegionKind::Region) {
        // The finite side of a region is parallel to b.
        auto r = region_data(s);
        return parallel(s.lines[r->finite_side].m, b.line.m, s.d());
    }
    auto feet = designated_feet(s);
    if (feet.size() != 2) return false;
    for (const auto& f : feet)
        if (!on_line(*s.ctx, b.line, f)) return false;
    return true;
}

OrientationData orientation_data(const PlanarSeed& s) {
    OrientationData o;
    if (s.kind() != RegionKind::Triangle) return o;
    const PlanarContext& c = *s.ctx;
    const BeltLine& b = *s.belt;
    if (!s.is_obtuse()) {
        o.acyclic = true;
        auto src = sources(s.B), snk = sinks(s.B);
        if (src.empty() || snk.empty()) return o;
        int sides[2] = {src[0], snk[0]};
        FieldElem t[2];
        for (int q = 0; q < 2; ++q) {
            PlanarPoint f = c.foot(*s.vertex(sides[q]), s.lines[sides[q]]);
            t[q] = c.along(b.base, f, b.line.m);
        }
        int cmp = compare(t[0], t[1]);
        if (cmp == 0 || s.B.at(sides[0], sides[1]).is_zero()) return o;
        o.applicable = true;
        int far = cmp < 0 ? sides[0] : sides[1];
        int near = cmp < 0 ? sides[1] : sides[0];
        o.towards_reference = s.B.at(far, near).sign() > 0;
        return o;
    }
    PlanarPoint V[3] = {*s.vertex(0), *s.vertex(1), *s.vertex(2)};
    PlanarPoint centroid{V[0].x + V[1].x + V[2].x, V[0].y + V[1].y + V[2].y};
    centroid.x = centroid.x.scaled(Rational(1, 3));
    centroid.y = centroid.y.scaled(Rational(1, 3));
    int side = c.eval(b.line, centroid).sign();
    std::vector<int> p{0, 1, 2};
    std::sort(p.begin(), p.end(), [&](int a, int q) { return s.lines[a].m < s.lines[q].m; });
    int cyc = s.B.at(p[0], p[1]).sign();
    o.obtuse_signature = side * cyc;
    o.applicable = side != 0;
    return o;
}

namespace {

std::vector<int> order_by_m(const PlanarSeed& s) {
    std::vector<int> p{0, 1, 2};
    std::sort(p.begin(), p.end(), [&](int a, int b) { return s.lines[a].m < s.lines[b].m; });
    return p;
}

}  // namespace

std::optional<Translation> translation_between(const PlanarSeed& a, const PlanarSeed& b) {
    if (a.d() != b.d()) return std::nullopt;
    auto pa = order_by_m(a), pb = order_by_m(b);
    for (int i = 0; i < 3; ++i)
        if (a.lines[pa[i]].m != b.lines[pb[i]].m) return std::nullopt;
    if (a.B.permuted(pa) != b.B.permuted(pb)) return std::nullopt;
    const PlanarContext& c = *a.ctx;
    int d = c.d();
    PlanarLine diff[3];
    for (int i = 0; i < 3; ++i) diff[i] = PlanarLine{a.lines[pa[i]].m, b.lines[pb[i]].h - a.lines[pa[i]].h};
    int i0 = -1, j0 = -1;
    for (int i = 0; i < 3 && i0 < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!parallel(diff[i].m, diff[j].m, d)) {
                i0 = i;
                j0 = j;
                break;
            }
    if (i0 < 0) return std::nullopt;
    PlanarPoint w = c.intersect(diff[i0], diff[j0]);
    for (int i = 0; i < 3; ++i)
        if (!c.eval(diff[i], w).is_zero()) return std::nullopt;
    Translation t;
    t.w = w;
    const BeltLine& bl = *a.belt;
    t.parallel_to_belt = c.eval(PlanarLine{bl.line.m, FieldElem::zero(d)}, w).is_zero();
    t.length = c.along(PlanarPoint{FieldElem::zero(d), FieldElem::zero(d)}, w, bl.line.m);
    return t;
}

PlanarSeed translated(const PlanarSeed& s, const PlanarPoint& w) {
    PlanarSeed t = s;
    const PlanarContext& c = *s.ctx;
    for (auto& l : t.lines) l.h = l.h + c.S(l.m) * w.x - c.C(l.m) * w.y;
    return t;
}

PlanarPoint belt_vector(const PlanarSeed& s, const FieldElem& length) {
    const PlanarContext& c = *s.ctx;
    long m = s.belt->line.m;
    return PlanarPoint{length * c.C(m), length * c.S(m)};
}

PlanarSeed reflected_across_belt(const PlanarSeed& s) {
    PlanarSeed t = s;
    for (auto& l : t.lines) l = s.ctx->reflect(l, s.belt->line);
    return t;
}

std::optional<RegionData> region_data(const PlanarSeed& s) {
    if (s.kind() != RegionKind::Region) return std::nullopt;
    int d = s.d();
    RegionData r;
    for (int k = 0; k < 3; ++k) {
        int i, j;
        others(k, i, j);
        if (parallel(s.lines[i].m, s.lines[j].m, d)) r.finite_side = k;
    }
    int f = r.finite_side, i, j;
    others(f, i, j);
    const PlanarContext& c = *s.ctx;
    r.p = c.intersect(s.lines[f], s.lines[i]);
    r.q = c.intersect(s.lines[f], s.lines[j]);
    auto ray = [&](long m) {
        // Direction along the line pointing into the region.
        long dir = mod_floor(s.lines[f].m - m, 2 * d) > d ? m : m + d;
        return mod_floor(dir, 2 * d);
    };
    r.ray_dir_p = ray(s.lines[i].m);
    r.ray_dir_q = ray(s.lines[j].m);
    r.angle = std::min(s.angle(i), s.angle(j));
    return r;
}

// ---------------------------------------------------------------- realize

AnySeed realize(const ExchangeMatrix& B) {
    ClassificationResult cr = classify(B);
    if (cr.tag == ClassTag::FiniteType) {
        Rational one(1);
        return spherical_initial(B, {one, one, one});
    }
    if (cr.tag == ClassTag::Affine) return initial_seed(cr.d);
    throw Error(ErrorCode::UnsupportedClass, std::string("no geometric realisation for class ") + class_tag_name(cr.tag));
}

}  // namespace qb
