#include "bhh/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace bhh {

namespace {

std::string percent(std::optional<double> p) {
  if (!p) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *p);
  return buf;
}

}  // namespace

std::optional<double> StorageReport::banded_over_dense_percent() const {
  if (dense_floats == 0) return std::nullopt;
  return 100.0 * static_cast<double>(banded_floats) / static_cast<double>(dense_floats);
}

std::optional<double> StorageReport::banded_over_householder_percent() const {
  if (householder_floats_x2 == 0) return std::nullopt;
  return 200.0 * static_cast<double>(banded_floats) / static_cast<double>(householder_floats_x2);
}

StorageReport storage_report(std::int64_t m, std::int64_t n) {
  if (n < 0 || m < n) throw std::invalid_argument("storage report requires m >= n >= 0");
  StorageReport r;
  r.m = m;
  r.n = n;
  r.dense_floats = m * n;
  r.householder_floats_x2 = n * (2 * m - n - 1);
  r.banded_floats = n * (m - n);
  return r;
}

std::string format_report(const StorageReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "m = %lld, n = %lld\n"
                "%-22s %14s\n"
                "%-22s %14lld\n"
                "%-22s %14.1f\n"
                "%-22s %14lld\n"
                "%-22s %14s\n"
                "%-22s %14s\n",
                static_cast<long long>(r.m), static_cast<long long>(r.n), "scheme", "floats", "dense",
                static_cast<long long>(r.dense_floats), "householder", r.householder_floats(), "banded",
                static_cast<long long>(r.banded_floats), "banded / dense", percent(r.banded_over_dense_percent()).c_str(),
                "banded / householder", percent(r.banded_over_householder_percent()).c_str());
  return buf;
}

}  // namespace bhh
