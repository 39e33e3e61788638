#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "subjectivity/schedule.hpp"

using namespace subjectivity;

TEST_CASE("min_data_samples on the worked examples") {
  CHECK(min_data_samples(10, 0.5) == 29);  // rhs = 8 ln 10 + 10 ~ 28.42
  CHECK(min_data_samples(1, 0.5) == 2);    // rhs = 1 exactly, strict bound
  CHECK(min_data_samples(3, 10.0) == 4);   // rhs = 0.02 ln 3 + 3 ~ 3.022

  CHECK_THROWS_AS(min_data_samples(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(min_data_samples(4, 0.0), std::domain_error);
  CHECK_THROWS_AS(min_data_samples(4, -1.0), std::domain_error);
  CHECK_THROWS_AS(min_data_samples(4, 0.5, RangeSpec{0.0, 1.0}), std::domain_error);
}

TEST_CASE("make_schedule emits the expected pairs") {
  const std::vector<std::uint64_t> ms{1, 10};
  const auto points = make_schedule(ms, 0.5);
  REQUIRE(points.size() == 2);
  CHECK(points[0].m == 1);
  CHECK(points[0].l == 2);
  CHECK(points[1].m == 10);
  CHECK(points[1].l == 29);

  const std::vector<std::uint64_t> single{5};
  CHECK(make_schedule(single, 0.5).size() == 1);

  const std::vector<std::uint64_t> repeated{2, 2};
  CHECK_THROWS_AS(make_schedule(repeated, 0.5), std::domain_error);
}

TEST_CASE("the rule is monotone in m and eps") {
  std::uint64_t prev = 0;
  for (std::uint64_t m = 1; m <= 64; m *= 2) {
    const std::uint64_t l = min_data_samples(m, 0.5);
    CHECK(l > prev);
    prev = l;
  }
  std::uint64_t prev_eps = UINT64_MAX;
  for (const double eps : {0.1, 0.2, 0.5, 1.0, 2.0}) {
    const std::uint64_t l = min_data_samples(16, eps);
    CHECK(l <= prev_eps);
    prev_eps = l;
  }
}

TEST_CASE("emitted l strictly beats the rule in extended precision") {
  for (const double eps : {0.2, 0.5, 1.0}) {
    for (std::uint64_t m = 1; m <= 128; m = m * 3 + 1) {
      const std::uint64_t l = min_data_samples(m, eps);
      const long double rhs =
          (2.0L / (static_cast<long double>(eps) * eps)) * std::log(static_cast<long double>(m)) +
          static_cast<long double>(m);
      CHECK(static_cast<long double>(l) > rhs);
      // and l is the smallest such integer
      if (l >= 2) CHECK(static_cast<long double>(l - 1) <= rhs);
    }
  }
}

TEST_CASE("schedules satisfy the vanishing ln(m)/l consistency condition") {
  const std::vector<std::uint64_t> ms{3, 4, 8, 16, 32, 64, 128};
  for (const double eps : {0.1, 0.25, 0.5, 1.0}) {
    for (const auto& point : make_schedule(ms, eps)) {
      if (point.m < 3) continue;
      const double md = static_cast<double>(point.m);
      const double lhs = std::log(md) / static_cast<double>(point.l);
      // l >= m under unit ranges, and ln(m) < sqrt(m), so the ratio
      // vanishes at least as fast as 1/sqrt(m)
      CHECK(lhs < 1.0 / std::sqrt(md));
      // the stronger 1/m form needs the log term of the rule to dominate,
      // which is guaranteed for m <= 2 bz^2 / eps^2
      if (md <= 2.0 / (eps * eps)) CHECK(lhs < 1.0 / md);
    }
  }
}
