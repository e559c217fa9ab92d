#pragma once

// Rank-3 geometric seeds. Finite type: vectors in a positive definite
// quadratic space. Affine type: triangles and infinite regions in the plane
// bounded by three oriented lines.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quiverbelt/cycfield.hpp"
#include "quiverbelt/exmatrix.hpp"

namespace qb {

// ---------------------------------------------------------------- spherical

using Vec3 = std::array<FieldElem, 3>;

struct QuadSpace {
    std::array<std::array<FieldElem, 3>, 3> gram;
    int level = 2;
    FieldElem pair(const Vec3& a, const Vec3& b) const;
};

// Quasi-Cartan companion of B: diagonal 2, off-diagonal -|b_ij|, with one
// pair made positive when the quiver is cyclic.
QuadSpace quasi_cartan(const ExchangeMatrix& B);

struct SphericalSeed {
    std::shared_ptr<const QuadSpace> space;
    Vec3 v[3];          // coordinates in the initial basis
    ExchangeMatrix B;
    // Reference functional: (x, u) = sum_j x_j * ref[j], ref[j] = (e_j, u).
    std::shared_ptr<const std::array<Rational, 3>> ref;

    FieldElem pairing(int i, int j) const { return space->pair(v[i], v[j]); }
    // (v_k, u) < 0. Throws DegeneratePositivity on zero.
    bool positive(int k) const;
    std::string key() const;  // minimum over relabellings
    int level() const { return space->level; }
};

// Initial seed with v_i = e_i and the reference point given by
// (e_i, u) = -lambda_i.
SphericalSeed spherical_initial(const ExchangeMatrix& B, const std::array<Rational, 3>& lambda);
SphericalSeed seed_mutate(const SphericalSeed& s, int k);

// Gram conditions: (v_i, v_i) = 2, |(v_i, v_j)| = |b_ij| and the sign parity
// (even number of positive pairings for acyclic B, odd for cyclic B).
bool spherical_invariants_hold(const SphericalSeed& s);

// Alternating rank-2 mutation period of the pair (i, j) and the short period
// b + 2a predicted for |b_ij| = 2cos(a pi/b).
struct PairPeriod {
    int i, j;
    long period;
    long expected;
};
std::vector<PairPeriod> pair_periods(const SphericalSeed& s);
bool locally_compatible(const SphericalSeed& s);

// ------------------------------------------------------------------ planar

struct PlanarPoint {
    FieldElem x;  // real point is (x, y * sin(pi/d))
    FieldElem y;
    bool operator==(const PlanarPoint& o) const { return x == o.x && y == o.y; }
};

// Oriented line with normal direction angle m pi/d (m mod 2d) and scaled
// offset h: the line is {S_m x - C_m y = h} with S_m = sin(m pi/d)/sin(pi/d),
// C_m = cos(m pi/d). The seed's region lies where S_m x - C_m y < h.
struct PlanarLine {
    long m = 0;
    FieldElem h;
    bool operator==(const PlanarLine& o) const { return m == o.m && h == o.h; }
};

// Per-level tables shared by all planar computations.
class PlanarContext {
public:
    explicit PlanarContext(int d);
    int d() const { return d_; }
    const FieldElem& C(long m) const { return C_[mod_floor(m, 2 * d_)]; }
    const FieldElem& S(long m) const { return S_[mod_floor(m, 2 * d_)]; }
    const FieldElem& g(long m) const { return g_[mod_floor(m, 2 * d_)]; }  // 2cos(m pi/d)
    const FieldElem& inv_S(long m) const;  // throws for multiples of d
    const FieldElem& s2() const { return s2_; }  // sin^2(pi/d)
    const FieldElem& sin2(long k) const { return sin2_[mod_floor(k, 2 * d_)]; }

    FieldElem eval(const PlanarLine& l, const PlanarPoint& p) const;  // S x - C y - h
    PlanarLine through(long m, const PlanarPoint& p) const;
    PlanarPoint intersect(const PlanarLine& a, const PlanarLine& b) const;
    PlanarPoint foot(const PlanarPoint& p, const PlanarLine& l) const;
    // Reflection of an oriented line across the line k.
    PlanarLine reflect(const PlanarLine& l, const PlanarLine& k) const;
    // Signed length of q - p along direction angle m pi/d.
    FieldElem along(const PlanarPoint& p, const PlanarPoint& q, long m) const;

private:
    int d_;
    std::vector<FieldElem> C_, S_, g_, sin2_, invS_;
    FieldElem s2_;
};

std::shared_ptr<const PlanarContext> planar_context(int d);

enum class RegionKind { Triangle, Region };

// The belt line as an oriented line: line.m is also the direction angle of b
// pointing towards the reference point at infinity.
struct BeltLine {
    PlanarLine line;
    PlanarPoint base;  // foot of the altitude on the initial source side
};

struct PlanarSeed {
    std::shared_ptr<const PlanarContext> ctx;
    std::array<PlanarLine, 3> lines;
    ExchangeMatrix B;
    std::shared_ptr<const BeltLine> belt;

    int d() const { return ctx->d(); }
    RegionKind kind() const;
    // Vertex opposite side k (intersection of the other two); absent when
    // those sides are parallel.
    std::optional<PlanarPoint> vertex(int k) const;
    // Interior angle opposite side k in units of pi/d; 0 for parallel sides.
    long angle(int k) const;
    std::array<long, 3> angles() const { return {angle(0), angle(1), angle(2)}; }
    bool positive(int k) const;
    std::string key() const;  // lines sorted by m with the matching B
    bool is_obtuse() const;   // some angle exceeds pi/2 or the seed is a region
};

PlanarSeed initial_seed(int d);
PlanarSeed planar_mutate(const PlanarSeed& s, int k);
bool planar_involution_holds(const PlanarSeed& s, int k);

FieldElem t_invariant(const PlanarSeed& s);
// Perimeter of the triangle of altitude feet of an acute triangle. Each side
// a_i |cos A_i| is checked against the squared distance of the feet.
FieldElem orthic_perimeter(const PlanarSeed& s);

BeltLine belt_line(const PlanarSeed& s0);
// Length of side k (finite sides only).
FieldElem side_length(const PlanarSeed& s, int k);
// Side-length prediction d1 sin(alpha) sin(n alpha) / (sin beta sin gamma)
// written as T / (sin beta sin gamma).
FieldElem predicted_side_length(const PlanarSeed& s, int k);
// s_k = T / sin^2(k pi/d).
FieldElem translation_length(int d, long k);

// Designated altitude feet: source and sink sides of an acyclic triangle,
// the two sides of the obtuse angle otherwise. Empty for regions.
std::vector<PlanarPoint> designated_feet(const PlanarSeed& s);
bool feet_on_belt(const PlanarSeed& s, const BeltLine& b);
bool on_line(const PlanarContext& ctx, const PlanarLine& l, const PlanarPoint& p);

// Orientation data: for acyclic triangles, whether the arrow between the two
// designated sides points from the foot farther from u to the nearer one.
// For obtuse triangles, the product of the side of b containing the
// triangle and the cyclic orientation sign. Right triangles, whose two feet
// coincide at the right-angled vertex, are not applicable.
struct OrientationData {
    bool applicable = false;
    bool acyclic = false;
    bool towards_reference = false;
    int obtuse_signature = 0;
};
OrientationData orientation_data(const PlanarSeed& s);

struct Translation {
    PlanarPoint w;
    FieldElem length;  // signed length along the belt direction
    bool parallel_to_belt = false;
};
std::optional<Translation> translation_between(const PlanarSeed& a, const PlanarSeed& b);
PlanarSeed translated(const PlanarSeed& s, const PlanarPoint& w);
// Vector of the given signed length along the belt direction.
PlanarPoint belt_vector(const PlanarSeed& s, const FieldElem& length);
PlanarSeed reflected_across_belt(const PlanarSeed& s);

// Region data for infinite regions: the finite side, its endpoints and the
// two ray directions (units of pi/d).
struct RegionData {
    int finite_side = -1;
    PlanarPoint p, q;
    long ray_dir_p = 0, ray_dir_q = 0;
    long angle = 0;  // the smaller angle between the finite side and the rays
};
std::optional<RegionData> region_data(const PlanarSeed& s);

// -------------------------------------------------------------- realize

using AnySeed = std::variant<SphericalSeed, PlanarSeed>;
// FiniteType -> spherical seed with reference (e_i, u) = -1; Affine ->
// initial planar seed of the matched level. Throws UnsupportedClass.
AnySeed realize(const ExchangeMatrix& B);

}  // namespace qb
