#include <stdexcept>
#include <string>

#include "bhh/report.hpp"
#include "doctest.h"

using namespace bhh;

TEST_CASE("storage report for 7x4") {
  const auto r = storage_report(7, 4);
  CHECK(r.dense_floats == 28);
  CHECK(r.householder_floats() == 18.0);
  CHECK(r.banded_floats == 12);
  CHECK(*r.banded_over_dense_percent() == doctest::Approx(42.857142857));
  const auto text = format_report(r);
  CHECK(text.find("42.9%") != std::string::npos);
  CHECK(text.find("66.7%") != std::string::npos);
  CHECK(text.find("18.0") != std::string::npos);
}

TEST_CASE("storage report edge shapes") {
  CHECK(storage_report(9, 9).banded_floats == 0);
  CHECK(storage_report(10, 3).householder_floats() == 24.0);
  CHECK(storage_report(10, 4).householder_floats() == 30.0);
  CHECK(storage_report(5, 2).householder_floats() == 7.0);
  CHECK(storage_report(4, 1).householder_floats() == 3.0);
  CHECK(storage_report(6, 2).householder_floats_x2 == 18);
  for (std::int64_t n = 1; n <= 40; ++n) CHECK(*storage_report(2 * n, n).banded_over_dense_percent() == 50.0);
  CHECK_FALSE(storage_report(5, 0).banded_over_dense_percent().has_value());
  CHECK(format_report(storage_report(5, 0)).find("n/a") != std::string::npos);
  CHECK_THROWS_AS(storage_report(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(storage_report(3, -1), std::invalid_argument);
}

TEST_CASE("storage report ordering over a sweep") {
  for (std::int64_t m = 1; m <= 100; ++m)
    for (std::int64_t n = 1; n <= m; ++n) {
      const auto r = storage_report(m, n);
      CHECK(2 * r.banded_floats <= r.householder_floats_x2);
      CHECK(r.householder_floats_x2 <= 2 * r.dense_floats);
    }
}
