#pragma once

// Rank-2 seeds as sectors in the plane. All directions are integers modulo
// 2b, i.e. multiples of pi/b, so orbits are computed in integer arithmetic.

#include <optional>
#include <vector>

#include "quiverbelt/cycfield.hpp"

namespace qb {

struct SectorSeed {
    long a = 1;
    long b = 3;
    long j1 = 0;  // direction of v1 in units of pi/b, modulo 2b
    long j2 = 0;  // direction of v2
    int orientation = 1;  // sign of b12
    bool operator==(const SectorSeed& o) const {
        return a == o.a && b == o.b && j1 == o.j1 && j2 == o.j2 && orientation == o.orientation;
    }
};

// Sector of angle a pi/b: v1 along direction 0, v2 along b + a, b12 > 0, so
// that (v1, v2) = -2cos(a pi/b).
SectorSeed initial_sector(long a, long b);

// Reference point u, either a direction in units of pi/(2b') with b' the
// seed's b, or an exact point with rational coordinates.
struct ReferencePoint2D {
    bool is_direction = true;
    long q = 1;
    Rational x, y;
    static ReferencePoint2D direction(long q);
    static ReferencePoint2D point(const Rational& x, const Rational& y);
};

// Sign of (v, u) for v along direction j (units pi/b): -1, 0 or +1.
int pairing_sign(long b, long j, const ReferencePoint2D& u);
// v is positive iff (v, u) < 0. Throws DegenerateReference when (v, u) = 0.
bool direction_positive(long b, long j, const ReferencePoint2D& u);
// u lies on a line perpendicular to some direction k pi/b.
bool is_critical(long b, const ReferencePoint2D& u);

// One application of tau o mu_2. Sets lazy when v1 is kept.
SectorSeed tau_mu2(const SectorSeed& s, const ReferencePoint2D& u, bool* lazy = nullptr);

struct OrbitResult {
    long period = 0;
    long lazy_count = 0;
    std::vector<long> lazy_steps;  // 0-based step indices that were lazy
    long non_lazy = 0;
    bool lazy_paired = true;       // every lazy step has a lazy neighbour
};
OrbitResult orbit_period(const SectorSeed& s, const ReferencePoint2D& u);

// b + 2a unless (w0 negative and w1 positive), then 3b - 2a.
long period_formula(long a, long b, bool w0_positive, bool w1_positive);

// u is compatible iff it avoids the closed supplementary sector, i.e. unless
// v1 is negative and v2 positive. Throws DegenerateReference on a boundary
// ray.
bool is_compatible(const ReferencePoint2D& u, const SectorSeed& s);

// Turning bookkeeping along one period: b' non-lazy steps, c' lazy pairs
// and c = a (short) or b - a (long). Checks b' = b, c' = c and that
// c' b + b' c is divisible by 2b.
struct TurningCheck {
    long b_prime = 0;
    long c_prime = 0;
    long c = 0;
    bool ok = false;
};
TurningCheck turning_check(const SectorSeed& s, const ReferencePoint2D& u);

}  // namespace qb
