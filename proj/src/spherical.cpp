#include <algorithm>
#include <numeric>

#include "quiverbelt/seedgeom.hpp"

namespace qb {

FieldElem QuadSpace::pair(const Vec3& a, const Vec3& b) const {
    FieldElem acc = FieldElem::zero(level);
    for (int i = 0; i < 3; ++i) {
        if (a[i].is_zero()) continue;
        FieldElem row = FieldElem::zero(level);
        for (int j = 0; j < 3; ++j)
            if (!b[j].is_zero() && !gram[i][j].is_zero()) row += gram[i][j] * b[j];
        acc += a[i] * row;
    }
    return acc;
}

QuadSpace quasi_cartan(const ExchangeMatrix& B) {
    if (B.rank() != 3) throw Error(ErrorCode::InvalidArgument, "quasi-Cartan companion needs rank 3");
    QuadSpace q;
    q.level = B.level();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            q.gram[i][j] = i == j ? FieldElem::rational(q.level, 2) : -B.at(i, j).abs();
    if (!is_acyclic(B)) {
        // A cyclic triangle needs an odd number of positive pairings.
        q.gram[0][1] = -q.gram[0][1];
        q.gram[1][0] = q.gram[0][1];
    }
    return q;
}

bool SphericalSeed::positive(int k) const {
    FieldElem acc = FieldElem::zero(level());
    for (int j = 0; j < 3; ++j) acc += v[k][j].scaled((*ref)[j]);
    int sg = acc.sign();
    if (sg == 0) throw Error(ErrorCode::DegeneratePositivity, "vector is orthogonal to the reference point");
    return sg < 0;
}

namespace {

std::string vec_key(const Vec3& v) {
    return v[0].to_string() + v[1].to_string() + v[2].to_string();
}

}  // namespace

std::string SphericalSeed::key() const {
    std::vector<int> p{0, 1, 2};
    std::string best;
    bool first = true;
    do {
        std::string k;
        for (int i = 0; i < 3; ++i) k += vec_key(v[p[i]]) + "|";
        k += B.permuted(p).raw_key();
        if (first || k < best) best = std::move(k);
        first = false;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

SphericalSeed spherical_initial(const ExchangeMatrix& B, const std::array<Rational, 3>& lambda) {
    SphericalSeed s;
    s.space = std::make_shared<QuadSpace>(quasi_cartan(B));
    s.B = B;
    int L = B.level();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.v[i][j] = FieldElem::rational(L, i == j ? 1 : 0);
    auto ref = std::make_shared<std::array<Rational, 3>>();
    for (int j = 0; j < 3; ++j) (*ref)[j] = -lambda[j];
    s.ref = ref;
    return s;
}

SphericalSeed seed_mutate(const SphericalSeed& s, int k) {
    if (k < 0 || k > 2) throw Error(ErrorCode::InvalidArgument, "mutation index out of range");
    bool pos = s.positive(k);
    SphericalSeed t = s;
    for (int i = 0; i < 3; ++i) {
        if (i == k) continue;
        const FieldElem& bik = s.B.at(i, k);
        if (bik.is_zero()) continue;
        if ((bik.sign() < 0) == pos) {
            FieldElem c = s.pairing(i, k);
            for (int j = 0; j < 3; ++j) t.v[i][j] = s.v[i][j] - c * s.v[k][j];
        }
    }
    for (int j = 0; j < 3; ++j) t.v[k][j] = -s.v[k][j];
    t.B = mutate(s.B, k);
    return t;
}

bool spherical_invariants_hold(const SphericalSeed& s) {
    int positives = 0;
    bool all_nonzero = true;
    for (int i = 0; i < 3; ++i) {
        if (s.pairing(i, i) != FieldElem::rational(s.level(), 2)) return false;
        for (int j = i + 1; j < 3; ++j) {
            FieldElem p = s.pairing(i, j);
            if (p.abs() != s.B.at(i, j).abs()) return false;
            if (p.sign() > 0) ++positives;
            if (p.is_zero()) all_nonzero = false;
        }
    }
    if (!all_nonzero) return true;
    return (positives % 2 == 0) == is_acyclic(s.B);
}

namespace {

struct Pair2 {
    Vec3 v[2];
    FieldElem b;  // b_12
};

bool same_up_to_swap(const Pair2& a, const Pair2& b) {
    auto eq = [](const Vec3& x, const Vec3& y) { return x[0] == y[0] && x[1] == y[1] && x[2] == y[2]; };
    if (eq(a.v[0], b.v[0]) && eq(a.v[1], b.v[1]) && a.b == b.b) return true;
    return eq(a.v[0], b.v[1]) && eq(a.v[1], b.v[0]) && a.b == -b.b;
}

}  // namespace

std::vector<PairPeriod> pair_periods(const SphericalSeed& s) {
    std::vector<PairPeriod> out;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (s.B.at(i, j).is_zero()) continue;
            auto cf = cosine_form(s.B.at(i, j).abs());
            if (!cf) throw Error(ErrorCode::NotCosineForm, "pair weight is not of the form 2cos(k pi/l)");
            PairPeriod pp{i, j, 0, cf->l + 2 * cf->k};
            Pair2 start{{s.v[i], s.v[j]}, s.B.at(i, j)};
            Pair2 cur = start;
            for (int n = 1; n <= 200; ++n) {
                int k = (n - 1) % 2, o = 1 - k;
                // Positivity through the seed's reference functional.
                FieldElem acc = FieldElem::zero(s.level());
                for (int c = 0; c < 3; ++c) acc += cur.v[k][c].scaled((*s.ref)[c]);
                int sg = acc.sign();
                if (sg == 0) throw Error(ErrorCode::DegeneratePositivity, "vector is orthogonal to the reference point");
                bool pos = sg < 0;
                FieldElem bok = o == 0 ? cur.b : -cur.b;
                Pair2 nxt = cur;
                if ((bok.sign() < 0) == pos) {
                    FieldElem c = s.space->pair(cur.v[o], cur.v[k]);
                    for (int t = 0; t < 3; ++t) nxt.v[o][t] = cur.v[o][t] - c * cur.v[k][t];
                }
                for (int t = 0; t < 3; ++t) nxt.v[k][t] = -cur.v[k][t];
                nxt.b = -cur.b;
                cur = nxt;
                if (same_up_to_swap(cur, start)) {
                    pp.period = n;
                    break;
                }
            }
            out.push_back(pp);
        }
    return out;
}

bool locally_compatible(const SphericalSeed& s) {
    for (const auto& p : pair_periods(s))
        if (p.period != p.expected) return false;
    return true;
}

}  // namespace qb
