#include "pdspec/real.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace pdspec {

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }

std::partial_ordering to_ordering(int cmp) {
    if (cmp < 0) return std::partial_ordering::less;
    if (cmp > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

}  // namespace

Real::Real(mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(const Real& other, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.bits());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, mpfr_prec_t bits) {
    std::string buffer(text);
    Real out(bits);
    if (buffer.empty()) throw std::invalid_argument("empty real literal");
    char* end = nullptr;
    mpfr_strtofr(out.value_, buffer.c_str(), &end, 0, MPFR_RNDN);
    if (end == buffer.c_str() || *end != '\0' || mpfr_nan_p(out.value_)) {
        throw std::invalid_argument("not a real number: '" + buffer + "'");
    }
    return out;
}

Real Real::infinity(int sign, mpfr_prec_t bits) {
    Real out(bits);
    mpfr_set_inf(out.value_, sign);
    return out;
}

std::string Real::hex() const {
    char* text = nullptr;
    mpfr_asprintf(&text, "%Ra", value_);
    std::string out(text);
    mpfr_free_str(text);
    return out;
}

std::string Real::decimal(int digits) const {
    char* text = nullptr;
    mpfr_asprintf(&text, "%.*Rg", digits, value_);
    std::string out(text);
    mpfr_free_str(text);
    return out;
}

Real& Real::operator+=(const Real& rhs) {
    if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator+=(long rhs) {
    mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(long rhs) {
    mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long rhs) {
    mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real out(bits());
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

Real operator+(const Real& a, const Real& b) {
    Real out(wider(a, b));
    mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

Real operator-(const Real& a, const Real& b) {
    Real out(wider(a, b));
    mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

Real operator*(const Real& a, const Real& b) {
    Real out(wider(a, b));
    mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

Real operator/(const Real& a, const Real& b) {
    Real out(wider(a, b));
    mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

Real operator+(const Real& a, long b) {
    Real out(a.bits());
    mpfr_add_si(out.value_, a.value_, b, MPFR_RNDN);
    return out;
}

Real operator-(const Real& a, long b) {
    Real out(a.bits());
    mpfr_sub_si(out.value_, a.value_, b, MPFR_RNDN);
    return out;
}

Real operator*(const Real& a, long b) {
    Real out(a.bits());
    mpfr_mul_si(out.value_, a.value_, b, MPFR_RNDN);
    return out;
}

Real operator/(const Real& a, long b) {
    Real out(a.bits());
    mpfr_div_si(out.value_, a.value_, b, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    return to_ordering(mpfr_cmp(a.value_, b.value_));
}

std::partial_ordering operator<=>(const Real& a, double b) {
    if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
    return to_ordering(mpfr_cmp_d(a.value_, b));
}

Real abs(const Real& x) {
    Real out(x.bits());
    mpfr_abs(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

Real sqrt(const Real& x) {
    Real out(x.bits());
    mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

Real log(const Real& x) {
    Real out(x.bits());
    mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

Real ldexp(const Real& x, long k) {
    Real out(x.bits());
    mpfr_mul_2si(out.raw(), x.raw(), k, MPFR_RNDN);
    return out;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pow2(long k, mpfr_prec_t bits) {
    Real out(1L, bits);
    mpfr_mul_2si(out.raw(), out.raw(), k, MPFR_RNDN);
    return out;
}

Real Enclosure::mid() const {
    Real out = lo + hi;
    mpfr_div_2ui(out.raw(), out.raw(), 1, MPFR_RNDN);
    return out;
}

}  // namespace pdspec
