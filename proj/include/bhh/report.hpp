#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bhh {

/// Float counts for an m x n orthonormal basis under three storage schemes.
/// Classical Householder storage n(m - (n+1)/2) is a half-integer in general,
/// so it is kept as twice its value.
struct StorageReport {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t dense_floats = 0;
  std::int64_t householder_floats_x2 = 0;
  std::int64_t banded_floats = 0;

  double householder_floats() const { return static_cast<double>(householder_floats_x2) / 2.0; }
  std::optional<double> banded_over_dense_percent() const;
  std::optional<double> banded_over_householder_percent() const;
};

StorageReport storage_report(std::int64_t m, std::int64_t n);

std::string format_report(const StorageReport& r);

}  // namespace bhh
