#include "doctest.h"
#include "pdspec/io.hpp"

#include <fstream>

using namespace pdspec;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("pdspec-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

bool identical(const Enclosure& x, const Enclosure& y) {
    return x.lo.bits() == y.lo.bits() && x.lo == y.lo && x.hi == y.hi;
}

}  // namespace

TEST_CASE("cache round trip is bit exact") {
    const auto dir = scratch_dir("roundtrip");
    const auto params = ModelParams::make("2", default_bits(8));
    BandTables built(params);
    built.extend(8);
    cache_store(dir, built);
    std::vector<std::string> warnings;
    const auto loaded = cache_load(dir, params, 8, [&](const std::string& w) { warnings.push_back(w); });
    REQUIRE(loaded.has_value());
    CHECK(warnings.empty());
    for (int n = 0; n <= 8; ++n) {
        const auto& a = built.level(n);
        const auto& b = loaded->level(n);
        REQUIRE(a.bands.size() == b.bands.size());
        CHECK(a.cumulative == b.cumulative);
        for (std::size_t i = 0; i < a.bands.size(); ++i) {
            CHECK(identical(a.bands[i].a, b.bands[i].a));
            CHECK(identical(a.bands[i].b, b.bands[i].b));
            CHECK(identical(a.bands[i].z, b.bands[i].z));
        }
    }
    CHECK(export_bands(built, 8, Format::json) == export_bands(*loaded, 8, Format::json));
    // A lower level is served from the same file; a higher one is a miss.
    CHECK(cache_load(dir, params, 5, [](const std::string&) {})->top() == 5);
    CHECK_FALSE(cache_load(dir, params, 9, [](const std::string&) {}).has_value());
}

TEST_CASE("cache keys") {
    const auto dir = scratch_dir("keys");
    const auto params = ModelParams::make("2", 128);
    BandTables built(params);
    built.extend(3);
    cache_store(dir, built);
    auto quiet = [](const std::string&) {};
    CHECK_FALSE(cache_load(dir, ModelParams::make("2.5", 128), 3, quiet).has_value());
    CHECK_FALSE(cache_load(dir, ModelParams::make("2", 192), 3, quiet).has_value());
    CHECK(std::filesystem::exists(cache_path(dir, params)));
    // Raising the width writes a second file and keeps the first.
    const auto wider = load_or_build(ModelParams::make("2", 192), 3, dir, 1, quiet);
    CHECK(std::filesystem::exists(cache_path(dir, ModelParams::make("2", 192))));
    CHECK(std::filesystem::exists(cache_path(dir, params)));
    CHECK(wider.top() == 3);
}

TEST_CASE("corrupt cache is recomputed with a warning") {
    const auto dir = scratch_dir("corrupt");
    const auto params = ModelParams::make("1", 128);
    std::filesystem::create_directories(dir);
    std::ofstream(cache_path(dir, params)) << "{not json";
    std::vector<std::string> warnings;
    const auto tables = load_or_build(params, 2, dir, 1, [&](const std::string& w) { warnings.push_back(w); });
    CHECK(tables.top() == 2);
    CHECK(warnings.size() == 1);
    CHECK(cache_load(dir, params, 2, [](const std::string&) {}).has_value());
}

TEST_CASE("exports do not depend on the thread count") {
    const auto params = ModelParams::make("0.5", default_bits(9));
    BandTables one(params), four(params);
    one.extend(9, 1);
    four.extend(9, 4);
    for (Format f : {Format::json, Format::csv}) CHECK(export_bands(one, 9, f) == export_bands(four, 9, f));
    const auto cov = build_coverings(one, 8);
    const auto cov4 = build_coverings(four, 8);
    CHECK(export_covering(cov[8], params, Format::csv) == export_covering(cov4[8], params, Format::csv));
    CHECK(export_gaps(enumerate_gaps(cov[8]), params, 8, Format::json) ==
          export_gaps(enumerate_gaps(cov4[8]), params, 8, Format::json));
}

TEST_CASE("report and dynamics exports") {
    Report r;
    r.check("first", true);
    r.check("second", false, "detail");
    const auto json = export_report({{"section", r}}, Format::json);
    CHECK(json.find("\"ok\": false") != std::string::npos);
    CHECK(json.find("detail") != std::string::npos);
    CHECK(export_report({{"section", r}}, Format::csv) == "section,check,checked,failed\nsection,\"first\",1,0\nsection,\"second\",1,1\n");
    const auto dynamics = export_dynamics(verify_contraction(4, 10, 128), 128, Format::csv);
    CHECK(dynamics.rfind("n,diameter\n0,", 0) == 0);
}
