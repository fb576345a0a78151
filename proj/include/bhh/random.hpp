#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "bhh/dense.hpp"
#include "bhh/types.hpp"

namespace bhh {

/// Reproducible entries in [-1, 1) from std::mt19937_64. The mapping from raw
/// 64-bit draws to doubles is done here rather than by a std distribution so
/// the stream is identical across standard libraries.
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return static_cast<double>(bits) * 0x1.0p-52 - 1.0;
  }

  template <typename Scalar = double>
  Matrix<Scalar> matrix(Index rows, Index cols) {
    Matrix<Scalar> a(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) a(i, j) = static_cast<Scalar>(uniform());
    return a;
  }

  template <typename Scalar = double>
  Vector<Scalar> vector(Index size) {
    return matrix<Scalar>(size, 1);
  }

  /// m x n with orthonormal columns: leading columns of the QR factor of a
  /// random matrix.
  template <typename Scalar = double>
  Matrix<Scalar> orthonormal(Index rows, Index cols) {
    return form_q_columns(householder_qr(matrix<Scalar>(rows, cols)), 0, cols);
  }

 private:
  std::mt19937_64 engine_;
};

inline Matrix<double> random_matrix(Index rows, Index cols, std::uint64_t seed) {
  return SeededGenerator(seed).matrix(rows, cols);
}

}  // namespace bhh
