#include "doctest.h"
#include "pdspec/dimension.hpp"

#include <cmath>

using namespace pdspec;

TEST_CASE("sub-covering counts follow Fibonacci") {
    const std::uint64_t expected[] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int n = 0; n <= 10; ++n) {
        CHECK(fibonacci(n) == expected[n]);
        CHECK(sns_count(n) == expected[n]);
        CHECK(sns_words(n).size() == expected[n]);
    }
    CHECK(fibonacci(20) == 17711);
    for (int n = 11; n <= 20; ++n) CHECK(sns_count(n) == fibonacci(n));
    for (int n = 1; n <= 6; ++n) {
        for (const Word& w : sns_words(n)) {
            CHECK(admissible(w));
            CHECK(pi_star(w).level() == n + 2);
        }
    }
}

TEST_CASE("sub-covering at lambda 2") {
    BandTables tables(ModelParams::make("2", default_bits(6)));
    tables.extend(6);
    BandAtlas atlas(tables);
    const auto levels = build_sns(10, atlas);
    const Report r = verify_sns(levels, tables.params(), 3);
    INFO(r.summary());
    CHECK(r.ok());
    const auto scaling = min_length_scaling(levels);
    for (double c : scaling) CHECK(c > 0.5);
    for (std::size_t n = 1; n < levels.size(); ++n) CHECK(levels[n].total_length < levels[n - 1].total_length);
    // The seed is B_1 = [2, sqrt8].
    CHECK(levels[0].entries[0].code().display() == "1");
}

TEST_CASE("dimension estimate") {
    const auto d = dimension_lower_estimate(20);
    CHECK(d.estimate == doctest::Approx(std::log(17711.0) / (20 * std::log(4.0))));
    CHECK(std::abs(d.estimate - 0.3528) < 1e-4);
    CHECK(std::abs(d.limit - 0.34712) < 1e-5);
    CHECK(d.estimate > d.limit);
}
