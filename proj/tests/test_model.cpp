#include <cmath>

#include <doctest.h>

#include "mdfs/model.hpp"

using namespace mdfs;

TEST_CASE("coupling conversion") {
  const ModelParams p = from_jh(0.5, 0.5);
  CHECK(p.a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.b == doctest::Approx(0.0).epsilon(1e-15));

  const ModelParams z = from_jh(0.0, 0.0);
  CHECK(z.a == 0.0);
  CHECK(z.b == 0.0);

  const ModelParams c = from_jh(1.45711, -0.34412);
  CHECK(c.a == doctest::Approx(2.91421).epsilon(1e-5));
  CHECK(c.b == doctest::Approx(-1.80123).epsilon(1e-5));
}

TEST_CASE("critical point values") {
  const CriticalValues cv = critical_point();
  CHECK(cv.a_c == doctest::Approx((3.0 + 2.0 * std::sqrt(2.0)) / 2.0)
                      .epsilon(1e-15));
  CHECK(cv.a_c == doctest::Approx(2.914214).epsilon(1e-6));
  CHECK(cv.y_c == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cv.y_c == doctest::Approx(0.585786).epsilon(1e-6));
  // y_c written through the root-bound formula at a_c
  CHECK(cv.y_c ==
        doctest::Approx((2.0 * cv.a_c + 1.0) / (4.0 * cv.a_c)).epsilon(1e-14));
  // a_c is the discriminant root
  CHECK(std::abs(4.0 * cv.a_c * cv.a_c - 12.0 * cv.a_c + 1.0) < 1e-12);
}

TEST_CASE("stationary interval bounds") {
  SUBCASE("two real bounds above the critical coupling") {
    const auto bounds = stationary_bounds(4.0);
    REQUIRE(bounds.has_value());
    const double s = std::sqrt(17.0);
    CHECK(bounds->first == doctest::Approx((9.0 - s) / 16.0).epsilon(1e-14));
    CHECK(bounds->second == doctest::Approx((9.0 + s) / 16.0).epsilon(1e-14));
    // coarse published decimals
    CHECK(bounds->first == doctest::Approx(0.30475).epsilon(2e-3));
    CHECK(bounds->second == doctest::Approx(0.82025).epsilon(2e-3));
    CHECK(0.0 < bounds->first);
    CHECK(bounds->first <= bounds->second);
    CHECK(bounds->second < 1.0);
  }
  SUBCASE("negative discriminant") {
    CHECK_FALSE(stationary_bounds(2.0).has_value());
    CHECK_FALSE(stationary_bounds(1.0).has_value());
  }
  SUBCASE("double root exactly at the critical coupling") {
    const CriticalValues cv = critical_point();
    const auto bounds = stationary_bounds(cv.a_c);
    REQUIRE(bounds.has_value());
    CHECK(bounds->first == doctest::Approx(cv.y_c).epsilon(1e-7));
    CHECK(bounds->second == doctest::Approx(cv.y_c).epsilon(1e-7));
  }
  SUBCASE("small couplings have real discriminant but no interior bounds") {
    CHECK_FALSE(stationary_bounds(0.02).has_value());
    CHECK_FALSE(stationary_bounds(1e-6).has_value());
  }
}
