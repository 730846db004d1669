#include "doctest.h"
#include "pdspec/suite.hpp"

using namespace pdspec;

TEST_CASE("model suite passes at small levels") {
    for (const char* lambda : {"0.2", "2"}) {
        BandTables tables(ModelParams::make(lambda, default_bits(8)));
        tables.extend(8);
        const Report r = verify_model(tables, 7);
        INFO(r.summary());
        CHECK(r.ok());
        CHECK(r.checked() > 10000);
    }
    BandTables short_tables(ModelParams::make("1", 64));
    short_tables.extend(3);
    CHECK_THROWS_AS(verify_model(short_tables, 3), std::invalid_argument);
}

TEST_CASE("zero count oracle") {
    BandTables tables(ModelParams::make("1", default_bits(9)));
    tables.extend(9);
    const Report r = verify_ids_count(tables, 3, 6);
    CHECK(r.ok());
    CHECK(r.checked() == 15);
}

TEST_CASE("coupling-free suite") {
    const Report r = verify_model_free(128);
    INFO(r.summary());
    CHECK(r.ok());
}
