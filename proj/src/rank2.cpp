#include "quiverbelt/rank2.hpp"

#include <numeric>

namespace qb {

SectorSeed initial_sector(long a, long b) {
    if (a < 1 || b < 2 || std::gcd(a, b) != 1)
        throw Error(ErrorCode::InvalidArgument, "sector angle must be a pi/b with gcd(a,b) = 1");
    return SectorSeed{a, b, 0, mod_floor(b + a, 2 * b), 1};
}

ReferencePoint2D ReferencePoint2D::direction(long q) {
    ReferencePoint2D u;
    u.is_direction = true;
    u.q = q;
    return u;
}

ReferencePoint2D ReferencePoint2D::point(const Rational& x, const Rational& y) {
    if (x == 0 && y == 0) throw Error(ErrorCode::InvalidArgument, "reference point must be nonzero");
    ReferencePoint2D u;
    u.is_direction = false;
    u.x = x;
    u.y = y;
    return u;
}

int pairing_sign(long b, long j, const ReferencePoint2D& u) {
    if (u.is_direction) {
        // cos of the angle (q - 2j) pi/(2b).
        long r = mod_floor(u.q - 2 * j, 4 * b);
        if (r == b || r == 3 * b) return 0;
        return (r < b || r > 3 * b) ? 1 : -1;
    }
    // x cos(j pi/b) + y sin(j pi/b) = (A + s B) with s = sin(pi/b) > 0,
    // A = x cos(j pi/b), B = y sin(j pi/b)/sin(pi/b).
    int d = static_cast<int>(b);
    FieldElem A = cos_multiple(d, j).scaled(u.x / 2);
    FieldElem B = sin_quotient(d, j).scaled(u.y);
    int sa = A.sign(), sb = B.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare A^2 with s^2 B^2, s^2 = sin^2(pi/b).
    int cmp = compare(A * A, sin_squared(d, 1) * B * B);
    if (cmp == 0) return 0;
    return cmp > 0 ? sa : sb;
}

bool direction_positive(long b, long j, const ReferencePoint2D& u) {
    int s = pairing_sign(b, j, u);
    if (s == 0) throw Error(ErrorCode::DegenerateReference, "reference point lies on a critical line");
    return s < 0;
}

bool is_critical(long b, const ReferencePoint2D& u) {
    for (long j = 0; j < b; ++j)
        if (pairing_sign(b, j, u) == 0) return true;
    return false;
}

SectorSeed tau_mu2(const SectorSeed& s, const ReferencePoint2D& u, bool* lazy) {
    // Mutation at 2 with b12 > 0 reflects v1 across v2 iff v2 is negative.
    bool pos2 = direction_positive(s.b, s.j2, u);
    long j1 = s.j1;
    if (!pos2) j1 = mod_floor(2 * s.j2 + s.b - s.j1, 2 * s.b);
    long j2 = mod_floor(s.j2 + s.b, 2 * s.b);
    if (lazy) *lazy = pos2;
    // The swap restores b12 > 0.
    return SectorSeed{s.a, s.b, j2, j1, s.orientation};
}

OrbitResult orbit_period(const SectorSeed& s, const ReferencePoint2D& u) {
    if (is_critical(s.b, u)) throw Error(ErrorCode::DegenerateReference, "reference point lies on a critical line");
    OrbitResult res;
    SectorSeed cur = s;
    const long limit = 8 * s.b + 8;
    for (long n = 0; n < limit; ++n) {
        bool lazy = false;
        cur = tau_mu2(cur, u, &lazy);
        if (lazy) res.lazy_steps.push_back(n);
        else ++res.non_lazy;
        if (cur == s) {
            res.period = n + 1;
            break;
        }
    }
    if (res.period == 0) throw Error(ErrorCode::BudgetExceeded, "rank-2 orbit did not close");
    res.lazy_count = static_cast<long>(res.lazy_steps.size());
    // Cyclic adjacency: each lazy step needs a lazy neighbour.
    std::vector<bool> is_lazy(res.period, false);
    for (long n : res.lazy_steps) is_lazy[n] = true;
    for (long n : res.lazy_steps) {
        bool prev = is_lazy[mod_floor(n - 1, res.period)];
        bool next = is_lazy[mod_floor(n + 1, res.period)];
        if (!prev && !next) res.lazy_paired = false;
    }
    return res;
}

long period_formula(long a, long b, bool w0_positive, bool w1_positive) {
    if (!w0_positive && w1_positive) return 3 * b - 2 * a;
    return b + 2 * a;
}

bool is_compatible(const ReferencePoint2D& u, const SectorSeed& s) {
    bool p1 = direction_positive(s.b, s.j1, u);
    bool p2 = direction_positive(s.b, s.j2, u);
    // Long period exactly when v1 is negative and v2 positive.
    return p1 || !p2;
}

TurningCheck turning_check(const SectorSeed& s, const ReferencePoint2D& u) {
    OrbitResult o = orbit_period(s, u);
    TurningCheck t;
    t.b_prime = o.non_lazy;
    t.c_prime = o.lazy_count / 2;
    bool long_period = o.period == 3 * s.b - 2 * s.a && o.period != s.b + 2 * s.a;
    t.c = long_period ? s.b - s.a : s.a;
    t.ok = o.lazy_count % 2 == 0 && t.b_prime == s.b && t.c_prime == t.c &&
           (t.c_prime * s.b + t.b_prime * t.c) % (2 * s.b) == 0;
    return t;
}

}  // namespace qb
