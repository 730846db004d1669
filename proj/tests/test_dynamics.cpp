#include "doctest.h"
#include "pdspec/dynamics.hpp"

#include <cmath>
#include <random>

using namespace pdspec;

namespace {

constexpr mpfr_prec_t kBits = 128;

Real r(double v) { return Real(v, kBits); }

double gap(const PlanePoint& p, const PlanePoint& q) {
    return std::max(std::abs((p.x - q.x).to_double()), std::abs((p.y - q.y).to_double()));
}

}  // namespace

TEST_CASE("f at the vertices and fixed points") {
    const auto v = region_vertices(kBits);
    CHECK(gap(f_map(v.F), v.F) == 0.0);
    CHECK(gap(f_map(v.B), {r(-2), r(2)}) < 1e-30);
    CHECK(gap(f_map(v.C), {r(0), r(-2)}) < 1e-30);
    CHECK(gap(f_map({r(0), r(0)}), {r(-2), r(2)}) == 0.0);
    for (const PlanePoint& p : fixed_points(kBits)) CHECK(gap(f_map(p), p) < 1e-30);
    CHECK(in_U(v.F));
    CHECK_FALSE(in_U(v.B));
    // C lies on the curve y(x^2-2) = 2 bounding U.
    CHECK(std::abs((v.C.y * (v.C.x * v.C.x - 2L) - 2L).to_double()) < 1e-30);
    CHECK_THROWS_AS(g_map({r(1), r(1)}), DomainError);
}

TEST_CASE("g inverts f on U") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-2.5, 0.0);
    int tried = 0;
    while (tried < 1000) {
        const PlanePoint p{r(coord(rng)), r(coord(rng))};
        if (!in_U(p)) continue;
        ++tried;
        const PlanePoint q = f_map(p);
        REQUIRE(in_f_of_U(q));
        const double scale = 1.0 + std::hypot(p.x.to_double(), p.y.to_double());
        CHECK(gap(g_map(q), p) <= std::ldexp(1.0, -64) * scale);
    }
}

TEST_CASE("Jacobian determinant against finite differences") {
    const double h = 1e-12;
    const Real step = r(h);
    for (const auto& [x, y] : {std::pair{-1.2, -0.9}, std::pair{-0.5, -1.7}, std::pair{0.4, 1.1}}) {
        const PlanePoint p{r(x), r(y)};
        const PlanePoint px = f_map({p.x + step, p.y}), mx = f_map({p.x - step, p.y});
        const PlanePoint py = f_map({p.x, p.y + step}), my = f_map({p.x, p.y - step});
        const double a = (px.x - mx.x).to_double() / (2 * h), b = (py.x - my.x).to_double() / (2 * h);
        const double c = (px.y - mx.y).to_double() / (2 * h), d = (py.y - my.y).to_double() / (2 * h);
        const double det = jacobian_det(p).to_double();
        CHECK(a * d - b * c == doctest::Approx(det).epsilon(1e-6));
    }
}

TEST_CASE("contraction of g on D") {
    const auto result = verify_contraction(12, 30, kBits);
    INFO(result.report.summary());
    CHECK(result.report.ok());
    // Measured baseline: the neutral direction at F makes the decay slow.
    CHECK(result.diameters[8] == doctest::Approx(0.0833946).epsilon(1e-5));
    CHECK(result.diameters[12] < result.diameters[8]);
}

TEST_CASE("escape from D") {
    const auto v = region_vertices(kBits);
    CHECK_FALSE(escape_check(v.F, 10000).has_value());
    CHECK(escape_check(v.A, 10000) == 1);
    const auto near = escape_check({r(-1), r(-1) - r(1e-6)}, 10000);
    REQUIRE(near.has_value());
    CHECK(*near == 10);
}

TEST_CASE("orbit classification") {
    const auto params = ModelParams::make("2", kBits);
    const auto zero = classify_orbit(Enclosure::point(r(2)), 8, params);
    CHECK(zero.status == OrbitStatus::zero_tail);
    CHECK(zero.zero_index == 0);
    CHECK(zero.values[1] == -2.0);
    CHECK(zero.values[8] == 2.0);
    const auto far = classify_orbit(Enclosure::point(r(5)), 8, params);
    CHECK(far.status == OrbitStatus::unbounded);
    CHECK(far.certificate->start_index == 0);
    BandTables tables(ModelParams::make("2", default_bits(4)));
    tables.extend(4);
    const Band& band = tables.band(BandCode("0110"));
    const auto deep = classify_orbit(band.z, 12, params, &tables);
    CHECK(deep.status == OrbitStatus::zero_tail);
    CHECK(deep.zero_index == 4);
}
