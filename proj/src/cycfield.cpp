#include "quiverbelt/cycfield.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qb {

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }
long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(int degree, const Integer& coeff) {
    std::vector<Integer> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly({c}); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Integer> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
    std::vector<Integer> r(c_);
    for (auto& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Integer> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::scaled(const Integer& s) const {
    std::vector<Integer> r(c_);
    for (auto& x : r) x *= s;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<Integer> rem(c_);
    int dd = divisor.degree();
    int qd = degree() - dd;
    if (qd < 0) {
        if (is_zero()) return IntPoly();
        throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    }
    std::vector<Integer> q(qd + 1, 0);
    const Integer& lead = divisor.leading();
    for (int k = qd; k >= 0; --k) {
        Integer top = rem[k + dd];
        if (top == 0) continue;
        if (top % lead != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
        Integer f = top / lead;
        q[k] = f;
        for (int j = 0; j <= dd; ++j) rem[k + j] -= f * divisor.c_[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    return IntPoly(std::move(q));
}

IntPoly IntPoly::scale_variable(const Integer& k) const {
    std::vector<Integer> r(c_);
    Integer p = 1;
    for (auto& x : r) {
        x *= p;
        p *= k;
    }
    return IntPoly(std::move(r));
}

double IntPoly::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

std::vector<std::string> IntPoly::to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x.get_str());
    return out;
}

std::string IntPoly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Integer& a = c_[k];
        if (a == 0) continue;
        Integer mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || mag != 1) os << mag.get_str();
        if (k > 0) os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

IntPoly chebyshev_T(int m) {
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "chebyshev_T: negative index");
    IntPoly prev = IntPoly::constant(1), cur = IntPoly::monomial(1);
    if (m == 0) return prev;
    IntPoly two_x = IntPoly::monomial(1, 2);
    for (int k = 1; k < m; ++k) {
        IntPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPoly chebyshev_U(int m) {
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "chebyshev_U: negative index");
    IntPoly prev = IntPoly::constant(1), cur = IntPoly::monomial(1, 2);
    if (m == 0) return prev;
    IntPoly two_x = IntPoly::monomial(1, 2);
    for (int k = 1; k < m; ++k) {
        IntPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPoly cyclotomic_phi(int m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic_phi: m must be positive");
    static std::mutex mu;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    IntPoly p = IntPoly::monomial(m) - IntPoly::constant(1);
    for (int e = 1; e < m; ++e)
        if (m % e == 0) p = p.exact_div(cyclotomic_phi(e));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(m, p);
    return p;
}

long euler_totient(long m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "euler_totient: m must be positive");
    long result = m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// D_j(y) = x^j + x^-j written in y = x + 1/x; D_0 = 2, D_1 = y.
static std::vector<IntPoly> dickson_table(int k) {
    std::vector<IntPoly> D;
    D.push_back(IntPoly::constant(2));
    D.push_back(IntPoly::monomial(1));
    IntPoly y = IntPoly::monomial(1);
    for (int j = 2; j <= k; ++j) D.push_back(y * D[j - 1] - D[j - 2]);
    return D;
}

IntPoly halved_cyclotomic(int m) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "halved_cyclotomic: m must be at least 3");
    IntPoly phi = cyclotomic_phi(m);
    int k = phi.degree() / 2;
    auto D = dickson_table(k);
    IntPoly psi = IntPoly::constant(phi.coeff(k));
    for (int j = 1; j <= k; ++j) psi = psi + D[j].scaled(phi.coeff(k + j));
    return psi;
}

IntPoly real_min_poly(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "real_min_poly: d must be at least 2");
    return halved_cyclotomic(2 * d);
}

bool watkins_zeitlin_check(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "watkins_zeitlin_check: n must be positive");
    int m = 2 * n + 1;
    // The index-1 factor is y - 2, from Phi_1(x)^2 / x.
    IntPoly prod({-2, 1});
    for (int e = 3; e <= m; e += 2)
        if (m % e == 0) prod = prod * halved_cyclotomic(e);
    // In t = 2x both sides have integer coefficients:
    // 2 (T_{n+1} - T_n)(t/2) = prod(t), i.e. 2 (T_{n+1} - T_n)(x) = prod(2x).
    IntPoly lhs = (chebyshev_T(n + 1) - chebyshev_T(n)).scaled(2);
    IntPoly rhs = prod.scale_variable(2);
    return lhs == rhs;
}

int field_degree(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "field level must be at least 2");
    return static_cast<int>(euler_totient(2L * d) / 2);
}

// ------------------------------------------------------------ level data

namespace {

std::atomic<long> g_precision_bits{0};

long initial_precision_bits() {
    long b = g_precision_bits.load();
    if (b > 0) return b;
    const char* env = std::getenv("QUIVERBELT_PRECISION_BITS");
    if (env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 8) return v;
    }
    return 64;
}

}  // namespace

void set_sign_precision_bits(long bits) { g_precision_bits.store(bits); }
long sign_precision_bits() { return initial_precision_bits(); }

struct Enclosure {
    Rational lo, hi;
};

struct LevelData {
    int d = 0;
    int deg = 0;
    std::vector<Integer> mu;                     // monic, lowest first, size deg+1
    std::vector<std::vector<Integer>> reduction;  // x^(deg+j) for j < deg-1
    std::vector<std::vector<Rational>> cos_table; // 2cos(k pi/d), 0 <= k < 2d
    double c_double = 0;
    std::mutex enc_mu;
    std::map<long, Enclosure> enclosures;

    const Enclosure& enclosure(long bits) {
        std::lock_guard<std::mutex> lock(enc_mu);
        auto it = enclosures.find(bits);
        if (it != enclosures.end()) return it->second;
        mpfr_t pi, v;
        mpfr_init2(pi, bits + 32);
        mpfr_init2(v, bits + 32);
        mpfr_const_pi(pi, MPFR_RNDN);
        mpfr_div_si(pi, pi, d, MPFR_RNDN);
        mpfr_cos(v, pi, MPFR_RNDN);
        mpfr_mul_2ui(v, v, 1, MPFR_RNDN);
        Rational mid;
        mpfr_get_q(mid.get_mpq_t(), v);
        mpfr_clear(pi);
        mpfr_clear(v);
        // The rounding error at bits+32 is far below 2^-bits.
        Rational eps(1);
        mpz_mul_2exp(eps.get_den_mpz_t(), eps.get_den_mpz_t(), bits);
        eps.canonicalize();
        Enclosure e{mid - eps, mid + eps};
        return enclosures.emplace(bits, e).first->second;
    }
};

static LevelData& level_data(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "field level must be at least 2");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<LevelData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return *it->second;

    auto L = std::make_unique<LevelData>();
    L->d = d;
    IntPoly m = real_min_poly(d);
    L->deg = m.degree();
    L->mu = m.coeffs();
    int n = L->deg;
    // x^n = -sum_{i<n} mu_i x^i, then shift repeatedly.
    std::vector<Integer> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = -L->mu[i];
    for (int j = 0; j < std::max(1, n - 1); ++j) {
        L->reduction.push_back(cur);
        std::vector<Integer> next(n, 0);
        Integer top = cur[n - 1];
        for (int i = n - 1; i >= 1; --i) next[i] = cur[i - 1];
        for (int i = 0; i < n; ++i) next[i] -= top * L->mu[i];
        cur = std::move(next);
    }
    L->c_double = 2.0 * std::cos(M_PI / d);
    auto* raw = L.get();
    cache.emplace(d, std::move(L));
    return *raw;
}

static std::vector<Rational> reduce_product(LevelData& L, std::vector<Rational> prod) {
    int n = L.deg;
    std::vector<Rational> r(n);
    for (int i = 0; i < n && i < static_cast<int>(prod.size()); ++i) r[i] = prod[i];
    for (int k = n; k < static_cast<int>(prod.size()); ++k) {
        if (prod[k] == 0) continue;
        const auto& red = L.reduction[k - n];
        for (int i = 0; i < n; ++i)
            if (red[i] != 0) r[i] += prod[k] * red[i];
    }
    return r;
}

// ------------------------------------------------------------ FieldElem

FieldElem::FieldElem() : level_(2), c_(1) {}

FieldElem::FieldElem(int level, std::vector<Rational> coeffs) : level_(level) {
    LevelData& L = level_data(level);
    if (static_cast<int>(coeffs.size()) <= L.deg) {
        coeffs.resize(L.deg);
        c_ = std::move(coeffs);
    } else {
        c_ = reduce_product(L, std::move(coeffs));
    }
}

FieldElem FieldElem::zero(int level) { return FieldElem(level, {}); }
FieldElem FieldElem::one(int level) { return FieldElem(level, {Rational(1)}); }
FieldElem FieldElem::rational(int level, const Rational& q) { return FieldElem(level, {q}); }
FieldElem FieldElem::generator(int level) { return FieldElem(level, {Rational(0), Rational(1)}); }

bool FieldElem::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElem::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "element is not rational");
    return c_[0];
}

std::pair<FieldElem, FieldElem> common_level(const FieldElem& a, const FieldElem& b) {
    if (a.level() == b.level()) return {a, b};
    int L = static_cast<int>(lcm_l(a.level(), b.level()));
    return {a.lift(L), b.lift(L)};
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    if (o.level_ != level_) {
        auto [x, y] = common_level(*this, o);
        return x + y;
    }
    FieldElem r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    if (o.level_ != level_) {
        auto [x, y] = common_level(*this, o);
        return x - y;
    }
    FieldElem r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

FieldElem FieldElem::operator-() const {
    FieldElem r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    if (o.level_ != level_) {
        auto [x, y] = common_level(*this, o);
        return x * y;
    }
    int n = static_cast<int>(c_.size());
    if (n == 1) return FieldElem(level_, {c_[0] * o.c_[0]});
    std::vector<Rational> prod(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    FieldElem r;
    r.level_ = level_;
    r.c_ = reduce_product(level_data(level_), std::move(prod));
    return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) { return *this = *this + o; }
FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this = *this - o; }
FieldElem& FieldElem::operator*=(const FieldElem& o) { return *this = *this * o; }

FieldElem FieldElem::scaled(const Rational& q) const {
    FieldElem r(*this);
    for (auto& x : r.c_) x *= q;
    return r;
}

namespace {

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Division with remainder over Q.
void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    r = a;
    qtrim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
    while (!r.empty() && r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        Rational f = r.back() / b.back();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        qtrim(r);
    }
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qtrim(r);
    return r;
}

}  // namespace

FieldElem FieldElem::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero field element");
    if (is_rational()) return FieldElem(level_, {1 / c_[0]});
    LevelData& L = level_data(level_);
    // Extended Euclid: find s with s*a = 1 mod mu.
    QPoly r0(L.mu.begin(), L.mu.end()), r1(c_);
    qtrim(r1);
    QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r1 is a nonzero constant since mu is irreducible.
    Rational k = r1[0];
    for (auto& x : s1) x /= k;
    FieldElem out(level_, std::move(s1));
    return out;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inv(); }

bool FieldElem::operator==(const FieldElem& o) const {
    if (o.level_ != level_) {
        auto [x, y] = common_level(*this, o);
        return x.c_ == y.c_;
    }
    return c_ == o.c_;
}

int FieldElem::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    LevelData& L = level_data(level_);
    // Fast path: double evaluation with a generous error margin.
    {
        double acc = 0, mag = 0, cabs = std::fabs(L.c_double);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            double a = it->get_d();
            acc = acc * L.c_double + a;
            mag = mag * cabs + std::fabs(a);
        }
        if (std::isfinite(acc) && std::isfinite(mag) && std::fabs(acc) > 1e-9 * mag && mag < 1e100)
            return acc > 0 ? 1 : -1;
    }
    for (long bits = initial_precision_bits();; bits *= 2) {
        const Enclosure& e = L.enclosure(bits);
        Rational lo = c_.back(), hi = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) {
            Rational p1 = lo * e.lo, p2 = lo * e.hi, p3 = hi * e.lo, p4 = hi * e.hi;
            Rational nlo = std::min({p1, p2, p3, p4});
            Rational nhi = std::max({p1, p2, p3, p4});
            lo = nlo + c_[i];
            hi = nhi + c_[i];
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (bits > (1L << 20)) throw Error(ErrorCode::InvalidArgument, "sign determination did not converge");
    }
}

double FieldElem::to_double() const {
    LevelData& L = level_data(level_);
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * L.c_double + it->get_d();
    return acc;
}

static FieldElem horner_substitute(const std::vector<Rational>& coeffs, const FieldElem& image) {
    FieldElem acc = FieldElem::zero(image.level());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * image + FieldElem::rational(image.level(), *it);
    return acc;
}

FieldElem FieldElem::lift(int new_level) const {
    if (new_level == level_) return *this;
    if (new_level % level_ != 0)
        throw Error(ErrorCode::InvalidArgument, "lift target level must be a multiple");
    return horner_substitute(c_, cos_multiple(new_level, new_level / level_));
}

std::string FieldElem::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].get_str();
    }
    s += "]@" + std::to_string(level_);
    return s;
}

std::string FieldElem::pretty() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rational mag = ::abs(c_[i]);
        bool neg = c_[i] < 0;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (i == 0 || mag != 1) s += mag.get_str();
        if (i >= 1) {
            if (mag != 1) s += "*";
            s += "c";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

int compare(const FieldElem& a, const FieldElem& b) { return (a - b).sign(); }

// ------------------------------------------------------------ trig values

FieldElem cos_multiple(int d, long k) {
    LevelData& L = level_data(d);
    {
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        if (L.cos_table.empty()) {
            FieldElem c = FieldElem::generator(d);
            FieldElem prev = FieldElem::rational(d, 2), cur = c;
            L.cos_table.push_back(prev.coeffs());
            for (int j = 1; j < 2 * d; ++j) {
                L.cos_table.push_back(cur.coeffs());
                FieldElem next = c * cur - prev;
                prev = cur;
                cur = next;
            }
        }
    }
    return FieldElem(d, L.cos_table[mod_floor(k, 2L * d)]);
}

FieldElem sin_quotient(int d, long k) {
    // U_{k-1}(c/2): S_0 = 0, S_1 = 1, S_{j+1} = c S_j - S_{j-1}.
    long kk = mod_floor(k, 2L * d);
    FieldElem c = FieldElem::generator(d);
    FieldElem prev = FieldElem::zero(d), cur = FieldElem::one(d);
    if (kk == 0) return prev;
    for (long j = 1; j < kk; ++j) {
        FieldElem next = c * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

FieldElem sin_squared(int d, long k) {
    return (FieldElem::rational(d, 2) - cos_multiple(d, 2 * k)).scaled(Rational(1, 4));
}

FieldElem sin_ratio(int d, long k, long l) {
    if (mod_floor(l, d) == 0) throw Error(ErrorCode::DivisionByZero, "sin(l pi/d) = 0");
    return sin_quotient(d, k) / sin_quotient(d, l);
}

// ------------------------------------------------------------ Galois

GaloisMap make_galois(int d, long l) {
    if (std::gcd(l, 2L * d) != 1)
        throw Error(ErrorCode::InvalidMultiplier, "Galois multiplier must be coprime to 2d");
    return GaloisMap{d, mod_floor(l, 2L * d)};
}

FieldElem galois_apply(const GaloisMap& g, const FieldElem& a) {
    if (std::gcd(g.multiplier, 2L * g.level) != 1)
        throw Error(ErrorCode::InvalidMultiplier, "Galois multiplier must be coprime to 2d");
    FieldElem x = a.level() == g.level ? a : a.lift(g.level);
    return horner_substitute(x.coeffs(), cos_multiple(g.level, g.multiplier));
}

// ------------------------------------------------------------ linear algebra over Q

namespace {

int rank_of_rows(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    for (size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                piv = static_cast<int>(r);
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

// Solves sum_j x_j basis[j] = target; empty result if basis is singular.
std::vector<Rational> solve_coordinates(const std::vector<std::vector<Rational>>& basis,
                                        const std::vector<Rational>& target) {
    size_t n = basis.size();
    if (n == 0 || basis[0].size() != n) return {};
    // Augmented matrix with columns = basis vectors.
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = basis[j][i];
        M[i][n] = target[i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return {};
        std::swap(M[col], M[piv]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (size_t c = col; c <= n; ++c) M[r][c] -= f * M[col][c];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = M[i][n] / M[i][i];
    return x;
}

}  // namespace

int rational_rank(const std::vector<FieldElem>& elems) {
    if (elems.empty()) return 0;
    long L = 1;
    for (const auto& e : elems) L = lcm_l(L, e.level());
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : elems) rows.push_back(e.lift(static_cast<int>(L)).coeffs());
    return rank_of_rows(std::move(rows));
}

// ------------------------------------------------------------ number theory suite

FieldElem verlinde_sum(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "verlinde_sum: n must be positive");
    int d = 2 * n + 1;
    FieldElem s = FieldElem::zero(d);
    for (int k = 1; k <= n; ++k) s += sin_squared(d, k).inv();
    return s;
}

bool estimate_check(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "estimate_check: n must be positive");
    int d = 2 * n + 1;
    FieldElem diff = sin_squared(d, 1).inv();
    for (int k = 2; k <= n; ++k) diff -= sin_squared(d, k).inv();
    return diff.sign() == 1;
}

static std::vector<int> unit_indices(int d) {
    std::vector<int> U;
    for (int k = 1; 2 * k < d; ++k)
        if (std::gcd(k, d) == 1) U.push_back(k);
    return U;
}

FieldElem dedekind_det(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dedekind_det: n must be positive");
    int d = 2 * n + 1;
    auto U = unit_indices(d);
    FieldElem a = sin_squared(d, 1).inv();
    auto inv_mod = [d](long r) {
        for (long x = 1; x < d; ++x)
            if ((r * x) % d == 1) return x;
        return 1L;
    };
    // sigma_r^{-1} o sigma_s = sigma_{s r^{-1}}; pick an odd representative
    // so the multiplier is coprime to 2d.
    auto odd_rep = [d](long l) { return l % 2 ? l : l + d; };
    size_t m = U.size();
    std::vector<std::vector<FieldElem>> M(m, std::vector<FieldElem>(m));
    for (size_t r = 0; r < m; ++r)
        for (size_t s = 0; s < m; ++s) {
            long l = mod_floor(U[s] * inv_mod(U[r]), d);
            M[r][s] = galois_apply(make_galois(d, odd_rep(l)), a);
        }
    // Fraction-free (Bareiss) elimination.
    FieldElem prev = FieldElem::one(d);
    int sgn_flip = 1;
    for (size_t k = 0; k + 1 < m; ++k) {
        if (M[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < m && M[piv][k].is_zero()) ++piv;
            if (piv == m) return FieldElem::zero(d);
            std::swap(M[k], M[piv]);
            sgn_flip = -sgn_flip;
        }
        for (size_t i = k + 1; i < m; ++i)
            for (size_t j = k + 1; j < m; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    FieldElem det = M[m - 1][m - 1];
    return sgn_flip < 0 ? -det : det;
}

std::vector<Rational> integral_coordinates(int d, const FieldElem& a) {
    if (d % 2 == 0) throw Error(ErrorCode::InvalidArgument, "integral basis is defined for odd d");
    std::vector<std::vector<Rational>> basis;
    for (int j : unit_indices(d)) basis.push_back(cos_multiple(d, 2 * j).coeffs());
    FieldElem x = a.level() == d ? a : a.lift(d);
    return solve_coordinates(basis, x.coeffs());
}

std::vector<Rational> characteristic_polynomial(const FieldElem& a) {
    // Faddeev-LeVerrier on the multiplication matrix in the power basis.
    int n = a.degree();
    int d = a.level();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    FieldElem basis_vec = FieldElem::one(d);
    FieldElem c = FieldElem::generator(d);
    for (int j = 0; j < n; ++j) {
        FieldElem col = a * basis_vec;
        for (int i = 0; i < n; ++i) A[i][j] = col.coeffs()[i];
        basis_vec = basis_vec * c;
    }
    auto matmul = [n](const std::vector<std::vector<Rational>>& X,
                      const std::vector<std::vector<Rational>>& Y) {
        std::vector<std::vector<Rational>> Z(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (X[i][k] == 0) continue;
                for (int j = 0; j < n; ++j) Z[i][j] += X[i][k] * Y[k][j];
            }
        return Z;
    };
    std::vector<Rational> coef(n + 1);
    coef[n] = 1;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
    for (int k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
        auto AM = matmul(A, M);
        for (int i = 0; i < n; ++i) AM[i][i] += coef[n - k + 1];
        M = AM;
        auto AMk = matmul(A, M);
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += AMk[i][i];
        coef[n - k] = -tr / k;
    }
    return coef;
}

bool is_algebraic_integer(const FieldElem& a) {
    for (const auto& x : characteristic_polynomial(a))
        if (x.get_den() != 1) return false;
    return true;
}

bool is_algebraic_unit(const FieldElem& a) {
    if (a.is_zero() || !is_algebraic_integer(a)) return false;
    return abs(characteristic_polynomial(a)[0]) == 1;
}

static bool all_integral(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

IntegralityVerdict integrality_check(int d, int k) {
    if (d % 2 == 0 || d < 3) throw Error(ErrorCode::InvalidArgument, "integrality_check needs odd d >= 3");
    if (k < 1 || 2 * k >= d) throw Error(ErrorCode::InvalidArgument, "integrality_check needs 1 <= k <= n");
    FieldElem r = sin_ratio(d, k, 1);
    IntegralityVerdict v{};
    v.coordinates = integral_coordinates(d, r);
    v.basis_degenerate = v.coordinates.empty();
    if (!v.basis_degenerate) {
        v.inverse_coordinates = integral_coordinates(d, r.inv());
        v.is_integer = all_integral(v.coordinates);
        v.is_unit = v.is_integer && all_integral(v.inverse_coordinates);
    } else {
        v.is_integer = is_algebraic_integer(r);
        v.is_unit = is_algebraic_unit(r);
    }
    return v;
}

}  // namespace qb
