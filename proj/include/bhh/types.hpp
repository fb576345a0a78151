#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace bhh {

using Index = Eigen::Index;

// Dense storage is Eigen's default column-major layout.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Where the square factor sits relative to the zero block:
/// TOP means A = G (B; 0), BOTTOM means A = G (0; B).
enum class Placement : unsigned { Top = 0, Bottom = 1 };

inline const char* to_string(Placement p) { return p == Placement::Top ? "TOP" : "BOTTOM"; }

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& a, const char* what = "matrix") {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j)))
        throw std::invalid_argument(std::string(what) + " has a non-finite entry at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
}

inline void require_tall(Index rows, Index cols, const char* op) {
  if (rows < cols)
    throw std::invalid_argument(std::string(op) + " requires m >= n (got " + std::to_string(rows) +
                                "x" + std::to_string(cols) + ")");
}

}  // namespace bhh
