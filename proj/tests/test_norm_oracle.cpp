#include <doctest.h>

#include "norm_oracle.hpp"

using namespace shimura;

TEST_CASE("quadratic norm values agree with interval embedding products")
{
    auto cases = oracle::norm_cases(20240611, 100);
    REQUIRE(cases.size() == 100);
    size_t split = 0;
    for (const auto& c : cases) {
        auto k = NumberField::from_spec(AbelianFieldSpec::quadratic(c.m));
        split += roots_in_field(k, c.a, c.q);
        BigInt exact = oracle::library_norm(c);
        auto approx = oracle::interval_norm(c);
        CAPTURE(c.m);
        CAPTURE(c.x);
        CAPTURE(c.y);
        CAPTURE(c.a);
        CAPTURE(c.q);
        CAPTURE(c.e);
        REQUIRE(approx.has_value());
        CHECK(*approx == exact);
    }
    CHECK(split >= 4);
}
