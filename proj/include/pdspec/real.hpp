#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace pdspec {

// Owning wrapper around an MPFR number. Binary operations produce a result
// with the larger of the operand precisions.
class Real {
public:
    explicit Real(mpfr_prec_t bits = 64);
    Real(double value, mpfr_prec_t bits);
    Real(long value, mpfr_prec_t bits);
    Real(int value, mpfr_prec_t bits) : Real(static_cast<long>(value), bits) {}
    Real(const Real& other);
    Real(const Real& other, mpfr_prec_t bits);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    // Parses a decimal or hexadecimal ("0x1.8p+1") literal; throws
    // std::invalid_argument on malformed input.
    static Real parse(std::string_view text, mpfr_prec_t bits);
    static Real infinity(int sign, mpfr_prec_t bits);

    mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
    mpfr_ptr raw() { return value_; }
    mpfr_srcptr raw() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    long exponent() const { return mpfr_get_exp(value_); }
    int sign() const { return mpfr_sgn(value_); }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }

    // Exact hexadecimal representation, e.g. "0x1.6a09e667f3bcdp+0".
    std::string hex() const;
    // Decimal rendering with the given number of significant digits.
    std::string decimal(int digits = 20) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator+=(long rhs);
    Real& operator-=(long rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);

    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(long a, const Real& b) { return -(b - a); }
    friend Real operator*(long a, const Real& b) { return b * a; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, double b);

private:
    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
// x * 2^k, exact.
Real ldexp(const Real& x, long k);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// 2^k at the given precision.
Real pow2(long k, mpfr_prec_t bits);

// Closed real interval carried by its two bounds.
struct Enclosure {
    Real lo;
    Real hi;

    explicit Enclosure(mpfr_prec_t bits = 64) : lo(bits), hi(bits) {}
    Enclosure(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}
    static Enclosure point(const Real& x) { return {x, x}; }

    Real mid() const;
    Real width() const { return hi - lo; }
    bool contains(const Real& x) const { return lo <= x && x <= hi; }
    // True when every point of *this is strictly below every point of other.
    bool certainly_below(const Enclosure& other) const { return hi < other.lo; }
    bool overlaps(const Enclosure& other) const { return !(hi < other.lo) && !(other.hi < lo); }
};

}  // namespace pdspec
