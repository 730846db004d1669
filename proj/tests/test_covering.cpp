#include "doctest.h"
#include "pdspec/covering.hpp"

using namespace pdspec;

namespace {

BandTables build(const char* lambda, int levels) {
    BandTables t(ModelParams::make(lambda, default_bits(levels)));
    t.extend(levels);
    return t;
}

std::string describe(const OptimalCovering& cov) {
    std::string out;
    for (const TypedBand& e : cov.entries) out += e.code().display() + ":" + format_word(e.word) + "; ";
    return out;
}

}  // namespace

TEST_CASE("first coverings at lambda 2") {
    const auto t = build("2", 3);
    const auto cov = build_coverings(t, 2);
    INFO(describe(cov[0]));
    REQUIRE(cov[0].entries.size() == 2);
    CHECK(cov[0].entries[0].code().display() == "0");
    CHECK(cov[0].entries[0].type == Letter::t3el);
    CHECK(cov[0].entries[1].code().empty());
    CHECK(cov[0].entries[1].type == Letter::t0e);

    INFO(describe(cov[1]));
    REQUIRE(cov[1].entries.size() == 4);
    const char* codes[] = {"0", "1", "01", "11"};
    const Letter types[] = {Letter::t0o, Letter::t1o, Letter::t3ol, Letter::t3or};
    // Word order puts 3_ol first among the children of 0_e.
    std::vector<std::pair<std::string, Letter>> found;
    for (const TypedBand& e : cov[1].entries) found.emplace_back(e.code().display(), e.type);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::find(found.begin(), found.end(), std::make_pair(std::string(codes[i]), types[i])) != found.end());
    }
    CHECK(format_word(cov[1].entries.front().word) == format_word(parse_word("3_el 0_o")));
}

TEST_CASE("children follow the graph") {
    const auto t = build("2", 5);
    const auto cov = build_coverings(t, 4);
    for (std::size_t n = 0; n + 1 < cov.size(); ++n) {
        std::size_t total = 0;
        for (const TypedBand& e : cov[n].entries) total += children(e, cov[n + 1]).size();
        CHECK(total == cov[n + 1].entries.size());
    }
}

TEST_CASE("evolution checks pass for several couplings") {
    for (const char* lambda : {"0.2", "0.5", "1", "2", "4"}) {
        const auto t = build(lambda, 8);
        const auto cov = build_coverings(t, 7);
        const Report r = verify_evolution(cov, t);
        INFO("lambda " << std::string(lambda) << "\n" << r.summary());
        CHECK(r.ok());
        for (const auto& c : cov) CHECK(c.entries.size() == admissible_words(c.level).size());
    }
}

TEST_CASE("weakly ordered neighbours may overlap") {
    const auto t = build("0.2", 6);
    std::size_t overlaps = 0;
    for (const auto& c : build_coverings(t, 5)) overlaps += count_overlaps(c);
    CHECK(overlaps > 0);
}
