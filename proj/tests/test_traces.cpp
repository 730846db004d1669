#include "doctest.h"
#include "pdspec/traces.hpp"

#include <random>

using namespace pdspec;

namespace {
ModelParams params(const char* lambda, mpfr_prec_t bits = 128) { return ModelParams::make(lambda, bits); }
double at(const TraceVector& t, int k) { return t.values[k].to_double(); }
}  // namespace

TEST_CASE("trace recurrence at hand-checked points") {
    const auto p2 = params("2");
    const auto t = eval_traces(p2.real(2.0), 4, p2);
    CHECK(at(t, 0) == 0.0);
    CHECK(at(t, 1) == -2.0);
    CHECK(at(t, 2) == 2.0);
    CHECK(at(t, 3) == 2.0);
    CHECK(at(t, 4) == 2.0);

    const auto p1 = params("1");
    const auto u = eval_traces(p1.real(0.0), 3, p1);
    CHECK(at(u, 0) == -1.0);
    CHECK(at(u, 1) == -3.0);
    CHECK(at(u, 2) == 1.0);
    CHECK(at(u, 3) == 5.0);

    const auto p = params("0.7");
    const auto v = eval_traces(p.lambda, 1, p);
    CHECK(v.values[0].is_zero());
    CHECK(at(v, 1) == doctest::Approx(-2.0));
}

TEST_CASE("derivative recurrence") {
    const auto p2 = params("2");
    const auto t = eval_derivatives(p2.real(2.0), 2, p2);
    CHECK(t.derivs[0].to_double() == 1.0);
    CHECK(t.derivs[1].to_double() == 4.0);
    CHECK(t.derivs[1].sign() > 0);
    CHECK(t.derivs[2].sign() < 0);
    CHECK(t.derivs[2].to_double() == -2.0 * t.derivs[1].to_double());

    const auto p1 = params("1");
    const auto u = eval_derivatives(p1.real(0.0), 2, p1);
    CHECK(u.derivs[1].to_double() == 0.0);
    CHECK(u.derivs[2].to_double() == 6.0);
}

TEST_CASE("derivatives agree with the kernel") {
    const auto p = params("1.3");
    TraceKernel kernel(p.lambda, p.precision_bits);
    Real value(p.precision_bits);
    Real deriv(p.precision_bits);
    const Real e = p.real(0.37);
    const auto t = eval_derivatives(e, 9, p);
    kernel.eval(e, 9, value, &deriv);
    CHECK(value == t.values[9]);
    CHECK(deriv == t.derivs[9]);
}

TEST_CASE("fundamental identity") {
    const auto p2 = params("2");
    CHECK(fundamental_residual(p2.real(0.0), 0, p2).value.is_zero());
    const auto p1 = params("1");
    CHECK(fundamental_residual(p1.real(0.0), 2, p1).value.is_zero());
    const auto r = fundamental_residual(p2.real(2.7), 12, p2);
    CHECK(abs(r.value) <= r.scale * pow2(-64, 128));
}

TEST_CASE("transfer matrix oracle") {
    const auto p2 = params("2");
    CHECK(transfer_trace(p2.real(2.0), 1, p2).to_double() == -2.0);
    const auto p = params("0.9");
    CHECK(transfer_trace(p.real(1.5), 0, p) == p.real(1.5) - p.lambda);
    const auto p1 = params("1");
    CHECK(transfer_trace(p1.real(0.0), 3, p1).to_double() == 5.0);
    CHECK(substitution_word(2) == "abaa");
    CHECK(substitution_word(3) == "abaaabab");
    CHECK_THROWS_AS(transfer_trace(p1.real(0.0), 50, p1), std::length_error);
}

TEST_CASE("transfer trace matches recurrence on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lam(0.1, 5.0);
    std::uniform_real_distribution<double> en(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto p = ModelParams::make(std::to_string(lam(rng)), 128);
        const Real e = p.real(en(rng) * (p.lambda.to_double() + 3.0));
        const int n = 1 + i % 14;
        const Real x = transfer_trace(e, n, p);
        const Real y = eval_traces(e, n, p).values[n];
        CHECK(abs(x - y) <= max(max(abs(x), abs(y)), p.real(1L)) * pow2(-64, 128));
    }
}

TEST_CASE("divergence certificate") {
    const auto p2 = params("2");
    const auto c = certify_unbounded(p2.real(5.0), 2, p2.real(0.5), p2);
    REQUIRE(c.has_value());
    CHECK(c->start_index == 0);
    CHECK_FALSE(certify_unbounded(p2.real(2.0), 50, p2.real(1e-9), p2).has_value());
    const auto far = certify_unbounded(p2.lambda + 10L, 2, p2.real(0.5), p2);
    REQUIRE(far.has_value());
    CHECK(far->start_index == 0);
}

TEST_CASE("saturation instead of overflow") {
    const auto p2 = params("2");
    const auto orbit = trace_orbit(p2.real(5.0), 40, p2);
    REQUIRE(orbit.saturated_from.has_value());
    CHECK(*orbit.saturated_from < 20);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelParams::make("-1", 64), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make("0", 64), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make("2", 40), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::make("abc", 64), std::invalid_argument);
    CHECK(default_bits(0) == 64);
    CHECK(default_bits(10) == 104);
}
