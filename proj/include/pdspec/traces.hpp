#pragma once

#include "pdspec/real.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdspec {

// Coupling constant and working precision shared by every computation.
struct ModelParams {
    std::string lambda_text;  // exact decimal form, used for cache keys and exports
    Real lambda;
    mpfr_prec_t precision_bits;

    // Throws std::invalid_argument unless lambda > 0 and bits >= 53.
    static ModelParams make(const std::string& lambda_text, mpfr_prec_t bits);
    Real real(double v) const { return Real(v, precision_bits); }
    Real real(long v) const { return Real(v, precision_bits); }
};

// Significand width used when working at the given level.
mpfr_prec_t default_bits(int level);

struct TraceVector {
    Real energy;
    std::vector<Real> values;  // h_0 .. h_n
    std::vector<Real> derivs;  // h_0' .. h_n' when requested, else empty
};

class OrbitOverflow : public std::runtime_error {
public:
    OrbitOverflow(int last_finite) :
        std::runtime_error("orbit magnitude overflow after index " + std::to_string(last_finite)),
        last_finite_index(last_finite) {}
    int last_finite_index;
};

TraceVector eval_traces(const Real& energy, int n, const ModelParams& params);
TraceVector eval_derivatives(const Real& energy, int n, const ModelParams& params);

struct Residual {
    Real value;  // h_{n+1} - (h_n^2 - 2) - (-1)^n 2 lambda prod h_j
    Real scale;  // largest magnitude among the compared quantities
};
Residual fundamental_residual(const Real& energy, int n, const ModelParams& params);

struct TransferOptions {
    int max_level = 40;      // largest n accepted
    int literal_level = 10;  // levels expanded letter by letter before doubling
};

// Trace of the transfer matrix product over the substituted word. Throws
// std::length_error when n exceeds options.max_level or literal_level > 22.
Real transfer_trace(const Real& energy, int n, const ModelParams& params, TransferOptions options = {});

// The word obtained by applying a->ab, b->aa to "a" n times (n <= 22).
std::string substitution_word(int n);

struct DivergenceCertificate {
    int start_index;
    Real slack;
};

// Traces with saturation: evaluation stops once two consecutive magnitudes
// exceed 2^1000, which is reported through saturated_from.
struct OrbitTrace {
    std::vector<Real> values;
    std::optional<int> saturated_from;
};
OrbitTrace trace_orbit(const Real& energy, int n, const ModelParams& params);
extern const long kSaturationExponent;

std::optional<DivergenceCertificate> certify_unbounded(const Real& energy, int max_n, const Real& min_slack,
                                                       const ModelParams& params);

// Reusable scratch space for evaluating h_n and h_n' at many energies.
class TraceKernel {
public:
    TraceKernel(const Real& lambda, mpfr_prec_t bits);
    TraceKernel(const TraceKernel&) = delete;
    TraceKernel& operator=(const TraceKernel&) = delete;
    ~TraceKernel();

    // Writes h_n(E) and, when derivative is non-null, h_n'(E).
    void eval(const Real& energy, int n, Real& value, Real* derivative);
    mpfr_prec_t bits() const { return bits_; }

private:
    mpfr_prec_t bits_;
    mpfr_t lambda_, prev_, cur_, next_, dprev_, dcur_, dnext_, t1_, t2_;
};

}  // namespace pdspec
