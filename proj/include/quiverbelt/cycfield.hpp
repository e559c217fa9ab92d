#pragma once

// Exact arithmetic in the real cyclotomic fields F_d = Q(2cos(pi/d)).

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "quiverbelt/errors.hpp"

namespace qb {

using Rational = mpq_class;
using Integer = mpz_class;

// Integer polynomial, coefficients lowest degree first. The zero polynomial
// has an empty coefficient list.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    static IntPoly monomial(int degree, const Integer& coeff = 1);
    static IntPoly constant(const Integer& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(int k) const;
    const Integer& leading() const { return c_.back(); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly scaled(const Integer& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    // Exact division by a monic (or unit-leading) divisor; throws if the
    // remainder is nonzero.
    IntPoly exact_div(const IntPoly& divisor) const;
    // p(x) -> p(k x)
    IntPoly scale_variable(const Integer& k) const;
    double eval(double x) const;

    std::vector<std::string> to_strings() const;
    std::string to_string(const char* var = "x") const;

private:
    void trim();
    std::vector<Integer> c_;
};

IntPoly chebyshev_T(int m);
IntPoly chebyshev_U(int m);
IntPoly cyclotomic_phi(int m);
long euler_totient(long m);
// Psi_m with Psi_m(x + 1/x) = x^{-phi(m)/2} Phi_m(x), m >= 3.
IntPoly halved_cyclotomic(int m);
IntPoly real_min_poly(int d);  // halved_cyclotomic(2d), root 2cos(pi/d)
bool watkins_zeitlin_check(int n);

int field_degree(int d);

struct LevelData;

// Element of F_d in the power basis of c = 2cos(pi/d), reduced modulo the
// minimal polynomial of c.
class FieldElem {
public:
    FieldElem();  // zero at level 2 (the rationals)
    FieldElem(int level, std::vector<Rational> coeffs);

    static FieldElem zero(int level);
    static FieldElem one(int level);
    static FieldElem rational(int level, const Rational& q);
    static FieldElem generator(int level);

    int level() const { return level_; }
    int degree() const { return static_cast<int>(c_.size()); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o);
    FieldElem& operator-=(const FieldElem& o);
    FieldElem& operator*=(const FieldElem& o);
    FieldElem scaled(const Rational& q) const;
    FieldElem inv() const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    int sign() const;
    FieldElem abs() const { return sign() < 0 ? -*this : *this; }
    double to_double() const;

    // Same real number at a level that is a multiple of this one.
    FieldElem lift(int new_level) const;

    std::string to_string() const;  // "[p/q,...]@d", used as a canonical key
    std::string pretty() const;     // human readable, e.g. "1/2 + c"

private:
    int level_;
    std::vector<Rational> c_;
};

int compare(const FieldElem& a, const FieldElem& b);  // sign(a - b)

// Brings two elements to a common level (lcm of their levels).
std::pair<FieldElem, FieldElem> common_level(const FieldElem& a, const FieldElem& b);

FieldElem cos_multiple(int d, long k);           // 2cos(k pi/d)
FieldElem sin_quotient(int d, long k);           // sin(k pi/d)/sin(pi/d)
FieldElem sin_squared(int d, long k);            // sin^2(k pi/d)
FieldElem sin_ratio(int d, long k, long l);      // sin(k pi/d)/sin(l pi/d)

struct GaloisMap {
    int level;
    long multiplier;
};
GaloisMap make_galois(int d, long l);
FieldElem galois_apply(const GaloisMap& g, const FieldElem& a);

int rational_rank(const std::vector<FieldElem>& elems);

FieldElem verlinde_sum(int n);
bool estimate_check(int n);
FieldElem dedekind_det(int n);

struct IntegralityVerdict {
    bool is_integer;
    bool is_unit;
    // The family {2cos(2j alpha)} is linearly dependent (d = 9 is the first
    // case); coordinates are then empty and the verdict comes from the
    // characteristic polynomial.
    bool basis_degenerate;
    std::vector<Rational> coordinates;
    std::vector<Rational> inverse_coordinates;
};
// Coordinates of sin(k alpha)/sin(alpha), alpha = pi/d, in the basis
// {2cos(2j alpha) : 1 <= j <= n, gcd(j, d) = 1} for odd d = 2n+1.
IntegralityVerdict integrality_check(int d, int k);
// Coordinates of a in that family; empty if the family is not a basis.
std::vector<Rational> integral_coordinates(int d, const FieldElem& a);
// Characteristic polynomial of multiplication by a over Q, monic, lowest
// degree first.
std::vector<Rational> characteristic_polynomial(const FieldElem& a);
bool is_algebraic_integer(const FieldElem& a);
bool is_algebraic_unit(const FieldElem& a);

// Initial number of fractional bits for sign determination.
void set_sign_precision_bits(long bits);
long sign_precision_bits();

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long mod_floor(long a, long m);

}  // namespace qb
