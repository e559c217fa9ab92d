#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "quiverbelt/cycfield.hpp"

using namespace qb;
using oracle::kPi;

namespace {

std::vector<long> to_long(const IntPoly& p) {
    std::vector<long> r;
    for (const auto& c : p.coeffs()) r.push_back(c.get_si());
    return r;
}

FieldElem random_elem(int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rational> c;
    for (int i = 0; i < field_degree(d); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return FieldElem(d, c);
}

}  // namespace

TEST_CASE("chebyshev T") {
    CHECK(chebyshev_T(0) == IntPoly::constant(1));
    CHECK(to_long(chebyshev_T(2)) == std::vector<long>{-1, 0, 2});
    CHECK(chebyshev_T(5).eval(std::cos(kPi / 5)) == doctest::Approx(-1.0).epsilon(1e-12));
    for (int m = 0; m <= 14; ++m)
        for (double x : {0.1, 0.7, 1.3, 2.9}) CHECK(chebyshev_T(m).eval(std::cos(x)) == doctest::Approx(std::cos(m * x)));
}

TEST_CASE("chebyshev U") {
    CHECK(chebyshev_U(0) == IntPoly::constant(1));
    CHECK(to_long(chebyshev_U(1)) == std::vector<long>{0, 2});
    CHECK(std::fabs(chebyshev_U(3).eval(std::cos(kPi / 4))) < 1e-12);
    for (int m = 0; m <= 14; ++m)
        for (double x : {0.2, 0.9, 2.1})
            CHECK(std::sin(x) * chebyshev_U(m).eval(std::cos(x)) == doctest::Approx(std::sin((m + 1) * x)));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(to_long(cyclotomic_phi(1)) == std::vector<long>{-1, 1});
    CHECK(to_long(cyclotomic_phi(5)) == std::vector<long>{1, 1, 1, 1, 1});

    // x^10 - 1 divided by (x - 1)(x + 1)(x^4 + x^3 + x^2 + x + 1).
    std::vector<long> x10(11, 0);
    x10[0] = -1;
    x10[10] = 1;
    auto den = oracle::multiply(oracle::multiply({-1, 1}, {1, 1}), {1, 1, 1, 1, 1});
    std::vector<long> rem;
    auto q = oracle::divide(x10, den, &rem);
    for (long r : rem) CHECK(r == 0);
    CHECK(to_long(cyclotomic_phi(10)) == q);
    CHECK(to_long(cyclotomic_phi(10)) == std::vector<long>{1, -1, 1, -1, 1});
}

TEST_CASE("cyclotomic roots are primitive roots of unity") {
    for (int m = 1; m <= 40; ++m) {
        auto c = to_long(cyclotomic_phi(m));
        // |Phi_m(e^{2 pi i/m})| = 0 via real and imaginary parts.
        double re = 0, im = 0;
        for (size_t k = 0; k < c.size(); ++k) {
            re += c[k] * std::cos(2 * kPi * k / m);
            im += c[k] * std::sin(2 * kPi * k / m);
        }
        CHECK(std::hypot(re, im) < 1e-7);
    }
}

TEST_CASE("euler totient") {
    CHECK(euler_totient(1) == 1);
    CHECK(euler_totient(5) == 4);
    for (long m = 1; m <= 200; ++m) {
        CHECK(euler_totient(m) == oracle::totient(m));
        CHECK(cyclotomic_phi(static_cast<int>(m)).degree() == euler_totient(m));
    }
}

TEST_CASE("real minimal polynomial") {
    CHECK(to_long(real_min_poly(3)) == std::vector<long>{-1, 1});
    CHECK(to_long(real_min_poly(5)) == std::vector<long>{-1, -1, 1});
    CHECK(to_long(real_min_poly(4)) == std::vector<long>{-2, 0, 1});
    for (int d = 2; d <= 60; ++d) {
        IntPoly mu = real_min_poly(d);
        CHECK(mu.degree() == oracle::totient(2 * d) / 2);
        CHECK(mu.leading() == 1);
        double scale = 0;
        for (const auto& k : mu.coeffs()) scale = scale * 2 + std::fabs(k.get_d());
        CHECK(std::fabs(mu.eval(oracle::two_cos(1, d))) < 1e-12 * scale * 4);
        // Exactly zero in the field: c satisfies its own minimal polynomial.
        FieldElem c = FieldElem::generator(d), acc = FieldElem::zero(d), pw = FieldElem::one(d);
        for (const auto& k : mu.coeffs()) {
            acc += pw.scaled(Rational(k));
            pw *= c;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("Watkins-Zeitlin product") {
    for (int n = 1; n <= 10; ++n) CHECK(watkins_zeitlin_check(n));
}

TEST_CASE("cos multiples") {
    CHECK(cos_multiple(5, 0) == FieldElem::rational(5, 2));
    CHECK(cos_multiple(5, 5) == FieldElem::rational(5, -2));
    CHECK(cos_multiple(5, 1) == FieldElem::generator(5));
    CHECK(cos_multiple(5, 1).to_double() == doctest::Approx(1.618034).epsilon(1e-6));
    for (int d = 2; d <= 24; ++d)
        for (long k = -2 * d; k <= 2 * d; ++k)
            CHECK(cos_multiple(d, k).to_double() == doctest::Approx(oracle::two_cos(k, d)).epsilon(1e-10));
}

TEST_CASE("sine ratios") {
    CHECK(sin_ratio(7, 3, 3) == FieldElem::one(7));
    CHECK(sin_ratio(5, 2, 1) == FieldElem::generator(5));
    CHECK(sin_ratio(5, 3, 1).to_double() == doctest::Approx(std::sin(3 * kPi / 5) / std::sin(kPi / 5)));
    CHECK_THROWS_AS(sin_ratio(5, 1, 5), Error);
    try {
        sin_ratio(5, 1, 5);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
    for (int d = 3; d <= 16; ++d)
        for (long k = 1; k < 2 * d; ++k)
            for (long l = 1; l < 2 * d; ++l) {
                if (l % d == 0) continue;
                double want = std::sin(k * kPi / d) / std::sin(l * kPi / d);
                CHECK(sin_ratio(d, k, l).to_double() == doctest::Approx(want).epsilon(1e-9));
            }
}

TEST_CASE("field arithmetic") {
    std::mt19937 rng(7);
    FieldElem a = cos_multiple(5, 1);
    CHECK(a + FieldElem::zero(5) == a);
    CHECK(a * a.inv() == FieldElem::one(5));
    CHECK(cos_multiple(5, 1) * cos_multiple(5, 2) == cos_multiple(5, 3) + cos_multiple(5, 1));
    CHECK_THROWS_AS(FieldElem::zero(5).inv(), Error);
    for (int d : {3, 4, 5, 7, 9, 12, 15}) {
        for (int t = 0; t < 20; ++t) {
            FieldElem x = random_elem(d, rng), y = random_elem(d, rng);
            double xd = x.to_double(), yd = y.to_double();
            CHECK((x + y).to_double() == doctest::Approx(xd + yd).epsilon(1e-9));
            CHECK((x * y).to_double() == doctest::Approx(xd * yd).epsilon(1e-9));
            CHECK((x - y) + y == x);
            if (!y.is_zero()) CHECK((x / y) * y == x);
        }
    }
}

TEST_CASE("mixed levels lift through Chebyshev images") {
    FieldElem a = cos_multiple(3, 1), b = cos_multiple(4, 1);
    FieldElem s = a + b;
    CHECK(s.level() == 12);
    CHECK(s.to_double() == doctest::Approx(1 + std::sqrt(2.0)));
    CHECK(cos_multiple(5, 2).lift(15) == cos_multiple(15, 6));
}

TEST_CASE("product to sum") {
    for (int d = 2; d <= 30; ++d)
        for (int a = 0; a <= d; ++a)
            for (int b = 0; b <= d; ++b)
                CHECK(cos_multiple(d, a) * cos_multiple(d, b) == cos_multiple(d, a + b) + cos_multiple(d, a - b));
}

TEST_CASE("certified sign") {
    CHECK(FieldElem::zero(5).sign() == 0);
    int want = (oracle::two_cos(2, 5) - 1 > 0) ? 1 : -1;
    CHECK((cos_multiple(5, 2) - FieldElem::one(5)).sign() == want);
    CHECK(cos_multiple(5, 3).sign() == -1);

    // Differences far below the starting precision.
    long saved = sign_precision_bits();
    set_sign_precision_bits(8);
    FieldElem c = cos_multiple(60, 1);
    // The double is within 1e-15 of c; offsets of 2^-40 are far larger.
    Rational q(c.to_double());
    Rational eps(1, Integer(1) << 40);
    Rational below = q - eps, above = q + eps;
    CHECK((c - FieldElem::rational(60, below)).sign() == 1);
    CHECK((c - FieldElem::rational(60, above)).sign() == -1);
    set_sign_precision_bits(saved);
}

TEST_CASE("Galois action") {
    std::mt19937 rng(11);
    FieldElem x = cos_multiple(9, 2);
    CHECK(galois_apply(make_galois(9, 1), x) == x);
    CHECK(galois_apply(make_galois(5, 3), cos_multiple(5, 2)) == cos_multiple(5, 6));
    // The automorphism sending 2cos(2pi/7) to 2cos(4pi/7) is c -> 2cos(5pi/7)
    // at level 7.
    CHECK(galois_apply(make_galois(7, 5), sin_squared(7, 1).inv()) == sin_squared(7, 2).inv());
    CHECK_THROWS_AS(make_galois(5, 5), Error);
    CHECK_THROWS_AS(make_galois(7, 2), Error);
    try {
        make_galois(6, 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidMultiplier);
    }
    for (int d : {5, 7, 8, 9, 11, 12, 15}) {
        for (long l = 1; l < 2 * d; ++l) {
            if (std::gcd(l, 2L * d) != 1) continue;
            GaloisMap g = make_galois(d, l);
            CHECK(galois_apply(g, FieldElem::generator(d)).to_double() ==
                  doctest::Approx(oracle::two_cos(l, d)).epsilon(1e-10));
            for (int t = 0; t < 5; ++t) {
                FieldElem a = random_elem(d, rng), b = random_elem(d, rng);
                CHECK(galois_apply(g, a + b) == galois_apply(g, a) + galois_apply(g, b));
                CHECK(galois_apply(g, a * b) == galois_apply(g, a) * galois_apply(g, b));
            }
            if (d % 2 == 1) {
                std::vector<std::string> before, after;
                for (long k = 1; 2 * k < d; ++k) {
                    if (std::gcd(k, static_cast<long>(d)) != 1) continue;
                    before.push_back(cos_multiple(d, 2 * k).to_string());
                    after.push_back(galois_apply(g, cos_multiple(d, 2 * k)).to_string());
                }
                std::sort(before.begin(), before.end());
                std::sort(after.begin(), after.end());
                CHECK(before == after);
            }
        }
    }
}

TEST_CASE("rational rank") {
    CHECK(rational_rank({FieldElem::rational(5, 1), FieldElem::rational(5, 2), FieldElem::rational(5, 3)}) == 1);
    CHECK(rational_rank({sin_squared(5, 1).inv(), sin_squared(5, 2).inv()}) == 2);
    CHECK(rational_rank({sin_squared(7, 1).inv(), sin_squared(7, 2).inv(), sin_squared(7, 3).inv()}) == 3);
    for (int d = 3; d <= 15; d += 2) {
        std::vector<FieldElem> v;
        for (long k = 1; 2 * k < d; ++k)
            if (std::gcd(k, static_cast<long>(d)) == 1) v.push_back(sin_squared(d, k).inv());
        CHECK(rational_rank(v) == oracle::totient(d) / 2);
    }
}

TEST_CASE("Verlinde sums") {
    CHECK(verlinde_sum(1) == FieldElem::rational(3, Rational(4, 3)));
    CHECK(verlinde_sum(2) == FieldElem::rational(5, 4));
    CHECK(verlinde_sum(5) == FieldElem::rational(11, 20));
    for (int n = 1; n <= 25; ++n) {
        Rational want(2 * n * (n + 1));
        want /= 3;
        REQUIRE(verlinde_sum(n).is_rational());
        CHECK(verlinde_sum(n).rational_value() == want);
        double sum = 0;
        for (int k = 1; k <= n; ++k) sum += 1 / std::pow(std::sin(k * kPi / (2 * n + 1)), 2);
        CHECK(sum == doctest::Approx(want.get_d()));
    }
}

TEST_CASE("first summand dominates") {
    for (int n = 1; n <= 25; ++n) CHECK(estimate_check(n));
}

TEST_CASE("Dedekind determinant") {
    CHECK(dedekind_det(1) == FieldElem::rational(3, Rational(4, 3)));
    CHECK(dedekind_det(1).to_double() == doctest::Approx(1 / std::pow(std::sin(kPi / 3), 2)));
    for (int n = 1; n <= 8; ++n) CHECK(dedekind_det(n).sign() != 0);
}

TEST_CASE("sine ratios are cyclotomic units") {
    auto v = integrality_check(5, 2);
    CHECK(v.is_integer);
    CHECK(v.is_unit);
    v = integrality_check(7, 1);
    CHECK(v.is_integer);
    CHECK(v.is_unit);
    // Numeric norm over the conjugates 2cos(2 j pi/d) -> the ratio at angle j pi/d.
    auto norm = [](int d, int k) {
        double p = 1;
        for (int j = 1; j < d; j += 2)
            if (std::gcd(j, d) == 1 && j < d) p *= std::sin(k * j * kPi / d) / std::sin(j * kPi / d);
        return p;
    };
    for (int d = 3; d <= 15; d += 2)
        for (int k = 1; 2 * k < d; ++k) {
            auto r = integrality_check(d, k);
            CHECK(r.is_integer);
            double nm = std::fabs(norm(d, k));
            CHECK(std::fabs(nm - std::round(nm)) < 1e-6);
            CHECK(r.is_unit == (std::lround(nm) == 1));
            if (std::gcd(k, d) == 1) CHECK(r.is_unit);
        }
    auto r9 = integrality_check(9, 3);
    CHECK(r9.is_integer);
    CHECK_FALSE(r9.is_unit);
}

TEST_CASE("cosine family is dependent for d = 9") {
    // 2cos(2pi/9) + 2cos(4pi/9) + 2cos(8pi/9) = 0, so the family indexed by
    // units is not a basis; integrality falls back to characteristic
    // polynomials there.
    CHECK(cos_multiple(9, 2) + cos_multiple(9, 4) + cos_multiple(9, 8) == FieldElem::zero(9));
    CHECK(integrality_check(9, 2).basis_degenerate);
    CHECK_FALSE(integrality_check(7, 2).basis_degenerate);
    CHECK_FALSE(integrality_check(5, 1).basis_degenerate);
}
