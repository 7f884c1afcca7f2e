#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cartan/bounds.hpp"

using namespace cartan;

TEST_CASE("runge_height_bound: pinned values") {
  CHECK(std::fabs(runge_height_bound(13) - 76.36) < 0.05);
  CHECK(std::fabs(runge_height_bound(3) - 32.11) < 0.01);
  // leading-term asymptotics
  double p = 1e12;
  CHECK(std::fabs(runge_height_bound(p) / (2 * M_PI * std::sqrt(p)) - 1.0) < 1e-4);
  CHECK_THROWS_AS(runge_height_bound(2.9), std::domain_error);
}

TEST_CASE("faltings_height_bound: pinned values") {
  CHECK(std::fabs(faltings_height_bound(3) - (6 * std::log(3.0) + 12)) < 1e-12);
  CHECK(std::fabs(faltings_height_bound(3) - 18.59) < 0.01);
  // ln p = 1 plumbing hook, via the unchecked formula
  CHECK(std::fabs(faltings_rhs(M_E) - 6 * M_E) < 1e-9);
  CHECK_THROWS_AS(faltings_height_bound(2.0), std::domain_error);
}

TEST_CASE("split_cartan_height_bound: pinned values") {
  CHECK(std::fabs(split_cartan_height_bound(3) - 72 * std::log(9.0)) < 1e-12);
  CHECK(std::fabs(split_cartan_height_bound(3) - 158.2) < 0.1);
  CHECK(std::fabs(split_cartan_height_bound(13) - 1143.1) < 0.1);
  // degenerate plumbing check: 24*(1/3)*ln(1) = 0
  CHECK(std::fabs(split_cartan_rhs(1.0 / 3.0)) < 1e-12);
  CHECK_THROWS_AS(split_cartan_height_bound(1.0), std::domain_error);
}

TEST_CASE("faltings transfer and j-height bound") {
  CHECK(faltings_transfer(7.25, 1) == 7.25);
  CHECK(faltings_from_j(0) == 3.0);
  double composed = faltings_transfer(faltings_from_j(76.36), 13);
  CHECK(std::fabs(composed - 10.65) < 0.01);
  CHECK_THROWS_AS(faltings_transfer(1.0, 0), std::domain_error);
  CHECK_THROWS_AS(faltings_from_j(-1.0), std::domain_error);
}

TEST_CASE("gr_isogeny_bound: pinned values") {
  CHECK(gr_isogeny_bound(1, 0) == doctest::Approx(9.70225e12).epsilon(1e-12));
  double l2 = std::log(2.0);
  CHECK(gr_isogeny_bound(2, 985) ==
        doctest::Approx(1e7 * 4 * (985 + 4 * l2) * (985 + 4 * l2)).epsilon(1e-12));
  CHECK(gr_isogeny_bound(2, 1000) ==
        doctest::Approx(4e7 * (1000 + 2.772588722239781) * (1000 + 2.772588722239781)).epsilon(1e-9));
  CHECK_THROWS_AS(gr_isogeny_bound(0, 100), std::domain_error);
}

TEST_CASE("crossovers: in the stated windows with exact bracketing") {
  auto r2 = crossover_r2();
  CHECK(r2 > 13'000'000);
  CHECK(r2 <= 14'000'000);
  CHECK(inequality_r2_holds(static_cast<double>(r2 - 1)));
  CHECK_FALSE(inequality_r2_holds(static_cast<double>(r2)));

  auto r3 = crossover_r3();
  CHECK(r3 > 150'000'000'000LL);
  CHECK(r3 <= 170'000'000'000LL);
  CHECK(inequality_r3_holds(static_cast<double>(r3 - 1)));
  CHECK_FALSE(inequality_r3_holds(static_cast<double>(r3)));
}

TEST_CASE("crossovers: auxiliary bound at 1e7") {
  CHECK(inequality_r2_rhs(1e7) <= 3.71e3 * std::sqrt(1e7));
}

TEST_CASE("evaluate_bounds: finite positive table") {
  for (double p : {3.0, 13.0, 1e7}) {
    auto rows = evaluate_bounds(p);
    CHECK(rows.size() >= 5);
    for (const auto& r : rows) {
      CAPTURE(r.quantity);
      CHECK(std::isfinite(r.value));
      CHECK(r.value > 0.0);
      CHECK(r.p == p);
      CHECK_FALSE(r.formula.empty());
    }
  }
  CHECK_THROWS_AS(evaluate_bounds(2.0), std::domain_error);
}

TEST_CASE("bound functions: strictly increasing for p >= 11") {
  double prev_r = runge_height_bound(11), prev_f = faltings_height_bound(11),
         prev_s = split_cartan_height_bound(11);
  for (double p = 11.5; p < 1e9; p *= 1.37) {
    double r = runge_height_bound(p), f = faltings_height_bound(p), s = split_cartan_height_bound(p);
    CHECK(r > prev_r);
    CHECK(f > prev_f);
    CHECK(s > prev_s);
    prev_r = r;
    prev_f = f;
    prev_s = s;
  }
}
