#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bhh/reflectors.hpp"

namespace bhh {

enum class StorageErrorKind {
  BadMagic,
  Truncated,
  DimensionMismatch,
  TrailingData,
  MalformedNumber,
  ShapeMismatch,
  EmptyFile,
  NonFinite,
  Io,
};

const char* to_string(StorageErrorKind kind);

/// Parse or I/O failure. `position()` is a byte offset for the binary factor
/// format and a 1-based line number for the text matrix format.
class StorageError : public std::runtime_error {
 public:
  StorageError(StorageErrorKind kind, std::size_t position, const std::string& message);

  StorageErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  StorageErrorKind kind_;
  std::size_t position_;
};

// Binary factor file, all fields little-endian:
//   "BHF1" | u32 m, n, placement (0 TOP, 1 BOTTOM), count k, bandwidth w
//   | k betas | k*w free entries, row-major by reflection | n*n B, row-major
// as IEEE-754 doubles.
inline constexpr std::size_t kFactorHeaderBytes = 4 + 5 * 4;

std::size_t factor_file_size(std::size_t n, std::size_t k, std::size_t w);

std::vector<std::uint8_t> encode_factor(const CompactSubspaceFactor<double>& f);
CompactSubspaceFactor<double> decode_factor(std::span<const std::uint8_t> bytes);

/// Returns bytes written; throws StorageError(Io) if the sink fails.
std::size_t write_factor(const CompactSubspaceFactor<double>& f, std::ostream& sink);
CompactSubspaceFactor<double> read_factor(std::istream& source);

std::size_t write_factor_file(const CompactSubspaceFactor<double>& f, const std::string& path);
CompactSubspaceFactor<double> read_factor_file(const std::string& path);

// Text matrix: "m n" header line, then m lines of n numbers separated by
// single spaces, written with 17 significant digits.
std::size_t write_matrix(const Eigen::MatrixXd& a, std::ostream& sink);
Eigen::MatrixXd read_matrix(std::istream& source);

std::size_t write_matrix_file(const Eigen::MatrixXd& a, const std::string& path);
Eigen::MatrixXd read_matrix_file(const std::string& path);

}  // namespace bhh
