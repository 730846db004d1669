#include "doctest.h"
#include "pdspec/bands.hpp"

#include <cmath>

using namespace pdspec;

namespace {

BandTables build(const ModelParams& p, int levels, unsigned threads = 1) {
    BandTables t(p);
    t.extend(levels, threads);
    return t;
}

double lo(const Enclosure& e) { return e.lo.to_double(); }

}  // namespace

TEST_CASE("closed forms at levels 0 and 1") {
    const auto p = ModelParams::make("2", 128);
    const auto t = build(p, 1);
    const Band& root = t.band(BandCode());
    CHECK(lo(root.a) == 0.0);
    CHECK(lo(root.b) == 4.0);
    CHECK(lo(root.z) == 2.0);
    const Band& b0 = t.band(BandCode("0"));
    const Band& b1 = t.band(BandCode("1"));
    CHECK(lo(b0.a) == doctest::Approx(-std::sqrt(8.0)).epsilon(1e-14));
    CHECK(lo(b0.b) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(lo(b0.z) == doctest::Approx(-std::sqrt(6.0)).epsilon(1e-14));
    CHECK(lo(b1.a) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lo(b1.b) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK(lo(b1.z) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("structural checks pass for small levels") {
    for (const char* lambda : {"0.2", "1", "2", "4"}) {
        const auto p = ModelParams::make(lambda, default_bits(8));
        const auto t = build(p, 8);
        for (int n = 0; n <= 8; ++n) {
            const Report r = verify_level(t, n);
            INFO("lambda " << std::string(lambda) << " level " << n << "\n" << r.summary());
            CHECK(r.ok());
        }
    }
}

TEST_CASE("level 2 endpoints against a grid scan") {
    const auto p = ModelParams::make("2", 128);
    const auto t = build(p, 2);
    // Sign changes of h_2 -+ 2 on a fine grid bracket every endpoint.
    std::vector<double> roots;
    const int steps = 200000;
    const double start = -4.0000123;
    double prev_e = start;
    auto h2 = [&](double e) { return eval_traces(p.real(e), 2, p).values[2].to_double(); };
    double prev_v = h2(prev_e);
    for (int i = 1; i <= steps; ++i) {
        const double e = start + 10.0 * i / steps;
        const double v = h2(e);
        for (double target : {-2.0, 2.0}) {
            if ((prev_v - target) * (v - target) < 0) {
                double a = prev_e, b = e;
                for (int k = 0; k < 60; ++k) {
                    const double m = 0.5 * (a + b);
                    if ((h2(a) - target) * (h2(m) - target) <= 0) b = m; else a = m;
                }
                roots.push_back(0.5 * (a + b));
            }
        }
        prev_e = e;
        prev_v = v;
    }
    std::vector<double> ends;
    for (const Band& b : t.level(2).bands) {
        ends.push_back(lo(b.a));
        ends.push_back(lo(b.b));
    }
    std::sort(roots.begin(), roots.end());
    REQUIRE(roots.size() == ends.size());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(roots[i] == doctest::Approx(ends[i]).epsilon(1e-9));
}

TEST_CASE("zero order against code order") {
    const auto p = ModelParams::make("1", default_bits(6));
    const auto t = build(p, 6);
    std::vector<BandCode> codes;
    for (int n = 0; n <= 6; ++n) {
        for (const Band& b : t.level(n).bands) codes.push_back(b.code);
    }
    std::vector<std::pair<BandCode, BandCode>> pairs;
    for (const auto& s : codes) {
        for (const auto& u : codes) pairs.emplace_back(s, u);
    }
    CHECK(zero_order_check(pairs, t));
}

TEST_CASE("sign of the trace product on bands") {
    const auto p = ModelParams::make("1", 128);
    const auto t = build(p, 5);
    for (int n = 1; n <= 5; ++n) {
        for (const Band& b : t.level(n).bands) CHECK(sign_product_check(b, 3, p));
    }
}

TEST_CASE("thread count does not change the table") {
    const auto p = ModelParams::make("2", default_bits(7));
    const auto one = build(p, 7, 1);
    const auto four = build(p, 7, 4);
    for (int n = 0; n <= 7; ++n) {
        for (std::size_t i = 0; i < one.level(n).bands.size(); ++i) {
            CHECK(one.level(n).bands[i].a.lo.hex() == four.level(n).bands[i].a.lo.hex());
            CHECK(one.level(n).bands[i].b.hi.hex() == four.level(n).bands[i].b.hi.hex());
        }
    }
}

TEST_CASE("atlas bands agree with full tables") {
    const auto p = ModelParams::make("2", default_bits(9));
    const auto full = build(p, 9);
    const auto shallow = build(p, 4);
    BandAtlas atlas(shallow);
    for (const char* bits : {"100111111", "010101010", "000000000", "111111111", "1001"}) {
        const BandCode code(bits);
        const Band& deep = atlas.band(code);
        const Band& ref = full.band(code);
        CHECK(same_point(deep.a, ref.a));
        CHECK(same_point(deep.b, ref.b));
        CHECK(same_point(deep.z, ref.z));
    }
    CHECK(atlas.solved_count() <= 4 * 5 * 3);
}
