#include "pdspec/traces.hpp"

#include <algorithm>
#include <array>

namespace pdspec {

const long kSaturationExponent = 1000;

ModelParams ModelParams::make(const std::string& lambda_text, mpfr_prec_t bits) {
    if (bits < 53) throw std::invalid_argument("precision must be at least 53 bits");
    Real lambda = Real::parse(lambda_text, bits);
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    return ModelParams{lambda_text, std::move(lambda), bits};
}

mpfr_prec_t default_bits(int level) { return std::max<mpfr_prec_t>(64, 4 * level + 64); }

namespace {

void check_finite(const Real& x, int index) {
    if (!x.is_finite()) throw OrbitOverflow(index - 1);
}

}  // namespace

TraceVector eval_traces(const Real& energy, int n, const ModelParams& params) {
    if (n < 1) throw std::invalid_argument("eval_traces needs n >= 1");
    const mpfr_prec_t p = params.precision_bits;
    Real e(energy, p);
    TraceVector out{e, {}, {}};
    out.values.reserve(n + 1);
    out.values.push_back(e - params.lambda);
    out.values.push_back(e * e - params.lambda * params.lambda - 2L);
    for (int k = 1; k < n; ++k) {
        const Real& prev = out.values[k - 1];
        Real next = out.values[k] * (prev * prev - 2L) - 2L;
        check_finite(next, k + 1);
        out.values.push_back(std::move(next));
    }
    return out;
}

TraceVector eval_derivatives(const Real& energy, int n, const ModelParams& params) {
    TraceVector out = eval_traces(energy, n, params);
    const mpfr_prec_t p = params.precision_bits;
    out.derivs.reserve(n + 1);
    out.derivs.emplace_back(1L, p);
    out.derivs.push_back(out.energy * 2L);
    for (int k = 1; k < n; ++k) {
        const Real& hp = out.values[k - 1];
        const Real& hc = out.values[k];
        Real next = out.derivs[k] * (hp * hp - 2L) + hc * hp * out.derivs[k - 1] * 2L;
        check_finite(next, k + 1);
        out.derivs.push_back(std::move(next));
    }
    return out;
}

Residual fundamental_residual(const Real& energy, int n, const ModelParams& params) {
    if (n < 0) throw std::invalid_argument("fundamental_residual needs n >= 0");
    TraceVector t = eval_traces(energy, std::max(n + 1, 1), params);
    Real product(1L, params.precision_bits);
    for (int j = 0; j <= n; ++j) product *= t.values[j];
    Real rhs = product * params.lambda * 2L;
    if (n % 2 == 1) rhs = -rhs;
    Real square = t.values[n] * t.values[n];
    Real lhs = t.values[n + 1] - (square - 2L);
    Real scale = max(max(abs(t.values[n + 1]), square), abs(rhs));
    scale = max(scale, Real(1L, params.precision_bits));
    return Residual{lhs - rhs, scale};
}

std::string substitution_word(int n) {
    if (n < 0 || n > 22) throw std::length_error("substitution words are limited to 2^22 letters");
    std::string word = "a";
    for (int k = 0; k < n; ++k) {
        std::string next;
        next.reserve(word.size() * 2);
        for (char c : word) next += (c == 'a') ? "ab" : "aa";
        word.swap(next);
    }
    return word;
}

namespace {

using Matrix = std::array<Real, 4>;  // row-major 2x2

Matrix multiply(const Matrix& x, const Matrix& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

Matrix letter_matrix(char letter, const Real& energy, const Real& lambda) {
    const mpfr_prec_t p = energy.bits();
    Real diag = letter == 'a' ? energy - lambda : energy + lambda;
    return {diag, Real(-1L, p), Real(1L, p), Real(0L, p)};
}

Matrix identity(mpfr_prec_t p) { return {Real(1L, p), Real(0L, p), Real(0L, p), Real(1L, p)}; }

// The map from words to matrices reverses products: the matrix of a word is
// the product of its letter matrices taken right to left.
Matrix word_matrix(const std::string& word, const Real& energy, const Real& lambda) {
    const Matrix ta = letter_matrix('a', energy, lambda);
    const Matrix tb = letter_matrix('b', energy, lambda);
    Matrix m = identity(energy.bits());
    for (char c : word) m = multiply(c == 'a' ? ta : tb, m);
    return m;
}

}  // namespace

Real transfer_trace(const Real& energy, int n, const ModelParams& params, TransferOptions options) {
    if (n < 0) throw std::invalid_argument("transfer_trace needs n >= 0");
    if (n > options.max_level) throw std::length_error("level exceeds the configured word-length bound");
    if (options.literal_level > 22) throw std::length_error("literal expansion limited to 2^22 letters");
    const Real e(energy, params.precision_bits);
    const int literal = std::min(n, options.literal_level);
    // Matrices of eta^k(a) and eta^k(b) at k = literal, streamed over the words.
    const std::string word_a = substitution_word(literal);
    std::string word_b = word_a;
    word_b[0] = 'b';
    if (literal > 0) {
        // eta^k(b) = eta^{k-1}(a) eta^{k-1}(a)
        const std::string half = substitution_word(literal - 1);
        word_b = half + half;
    }
    Matrix ma = word_matrix(word_a, e, params.lambda);
    Matrix mb = word_matrix(word_b, e, params.lambda);
    for (int k = literal; k < n; ++k) {
        // eta^{k+1}(a) = eta^k(a) eta^k(b), eta^{k+1}(b) = eta^k(a) eta^k(a)
        Matrix next_a = multiply(mb, ma);
        Matrix next_b = multiply(ma, ma);
        ma = std::move(next_a);
        mb = std::move(next_b);
    }
    return ma[0] + ma[3];
}

OrbitTrace trace_orbit(const Real& energy, int n, const ModelParams& params) {
    const mpfr_prec_t p = params.precision_bits;
    const Real e(energy, p);
    OrbitTrace out;
    out.values.push_back(e - params.lambda);
    if (n >= 1) out.values.push_back(e * e - params.lambda * params.lambda - 2L);
    auto huge = [](const Real& x) { return x.is_finite() && !x.is_zero() && x.exponent() > kSaturationExponent; };
    for (int k = 1; k < n; ++k) {
        if (huge(out.values[k - 1]) && huge(out.values[k])) {
            out.saturated_from = k - 1;
            break;
        }
        const Real& prev = out.values[k - 1];
        out.values.push_back(out.values[k] * (prev * prev - 2L) - 2L);
    }
    if (!out.saturated_from && out.values.size() >= 2) {
        const std::size_t m = out.values.size();
        if (huge(out.values[m - 2]) && huge(out.values[m - 1])) out.saturated_from = static_cast<int>(m - 2);
    }
    return out;
}

std::optional<DivergenceCertificate> certify_unbounded(const Real& energy, int max_n, const Real& min_slack,
                                                       const ModelParams& params) {
    if (max_n < 1) throw std::invalid_argument("certify_unbounded needs maxN >= 1");
    OrbitTrace orbit = trace_orbit(energy, max_n, params);
    const Real threshold = min_slack + 2L;
    for (std::size_t k = 0; k + 1 < orbit.values.size(); ++k) {
        Real x = abs(orbit.values[k]);
        Real y = abs(orbit.values[k + 1]);
        if (x >= threshold && y >= threshold) {
            return DivergenceCertificate{static_cast<int>(k), min(x, y) - 2L};
        }
    }
    return std::nullopt;
}

TraceKernel::TraceKernel(const Real& lambda, mpfr_prec_t bits) : bits_(bits) {
    mpfr_inits2(bits, lambda_, prev_, cur_, next_, dprev_, dcur_, dnext_, t1_, t2_, static_cast<mpfr_ptr>(nullptr));
    mpfr_set(lambda_, lambda.raw(), MPFR_RNDN);
}

TraceKernel::~TraceKernel() {
    mpfr_clears(lambda_, prev_, cur_, next_, dprev_, dcur_, dnext_, t1_, t2_, static_cast<mpfr_ptr>(nullptr));
}

void TraceKernel::eval(const Real& energy, int n, Real& value, Real* derivative) {
    const bool want_d = derivative != nullptr;
    mpfr_srcptr e = energy.raw();
    // h_0 = E - lambda, h_0' = 1
    mpfr_sub(prev_, e, lambda_, MPFR_RNDN);
    mpfr_set_ui(dprev_, 1, MPFR_RNDN);
    if (n == 0) {
        mpfr_set_prec(value.raw(), bits_);
        mpfr_set(value.raw(), prev_, MPFR_RNDN);
        if (want_d) {
            mpfr_set_prec(derivative->raw(), bits_);
            mpfr_set(derivative->raw(), dprev_, MPFR_RNDN);
        }
        return;
    }
    // h_1 = E^2 - lambda^2 - 2, h_1' = 2E
    mpfr_sqr(cur_, e, MPFR_RNDN);
    mpfr_sqr(t1_, lambda_, MPFR_RNDN);
    mpfr_sub(cur_, cur_, t1_, MPFR_RNDN);
    mpfr_sub_ui(cur_, cur_, 2, MPFR_RNDN);
    mpfr_mul_2ui(dcur_, e, 1, MPFR_RNDN);
    for (int k = 1; k < n; ++k) {
        mpfr_sqr(t1_, prev_, MPFR_RNDN);
        mpfr_sub_ui(t1_, t1_, 2, MPFR_RNDN);  // h_{k-1}^2 - 2
        mpfr_mul(next_, cur_, t1_, MPFR_RNDN);
        mpfr_sub_ui(next_, next_, 2, MPFR_RNDN);
        if (want_d) {
            mpfr_mul(dnext_, dcur_, t1_, MPFR_RNDN);
            mpfr_mul(t2_, cur_, prev_, MPFR_RNDN);
            mpfr_mul(t2_, t2_, dprev_, MPFR_RNDN);
            mpfr_mul_2ui(t2_, t2_, 1, MPFR_RNDN);
            mpfr_add(dnext_, dnext_, t2_, MPFR_RNDN);
            mpfr_swap(dprev_, dcur_);
            mpfr_swap(dcur_, dnext_);
        }
        mpfr_swap(prev_, cur_);
        mpfr_swap(cur_, next_);
    }
    mpfr_set_prec(value.raw(), bits_);
    mpfr_set(value.raw(), cur_, MPFR_RNDN);
    if (want_d) {
        mpfr_set_prec(derivative->raw(), bits_);
        mpfr_set(derivative->raw(), dcur_, MPFR_RNDN);
    }
}

}  // namespace pdspec
