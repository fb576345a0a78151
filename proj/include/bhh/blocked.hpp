#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bhh/apply.hpp"
#include "bhh/reflectors.hpp"
#include "bhh/types.hpp"

namespace bhh {

/// H_s H_{s+1} ... H_{s+b-1} written as I - V T V^T (compact WY form).
///
/// Column j of v_block is the full length-m v_{s+j}; t_block is b x b upper
/// triangular. Only rows s .. s+b-1+w of V can be nonzero.
template <typename Scalar>
struct BlockedWY {
  Matrix<Scalar> v_block;
  Matrix<Scalar> t_block;
  Index start_index = 0;

  Index size() const { return t_block.rows(); }

  // Scalars added on top of the banded vectors and betas by this block.
  Index extra_storage() const { return size() * (size() + 1) / 2; }

  Index first_row() const { return start_index; }
  Index row_span(Index bandwidth) const {
    return std::min<Index>(v_block.rows() - start_index, size() + bandwidth);
  }

  Matrix<Scalar> dense() const {
    const Index m = v_block.rows();
    return Matrix<Scalar>::Identity(m, m) - v_block * t_block.template triangularView<Eigen::Upper>() *
                                                v_block.transpose();
  }
};

/// Accumulates T column by column: T_1 = (beta_s); appending v_j adds the
/// column (-beta_j T V^T v_j; beta_j).
template <typename Scalar>
BlockedWY<Scalar> build_wy(const BandedReflectors<Scalar>& g, Index start, Index b) {
  if (b < 1) throw std::invalid_argument("build_wy: block size must be at least 1");
  if (start < 0 || start + b > g.count())
    throw std::out_of_range("build_wy: reflections [" + std::to_string(start) + ", " +
                            std::to_string(start + b) + ") outside [0, " + std::to_string(g.count()) + ")");
  const Index m = g.ambient_dim();
  BlockedWY<Scalar> wy;
  wy.start_index = start;
  wy.v_block = Matrix<Scalar>::Zero(m, b);
  wy.t_block = Matrix<Scalar>::Zero(b, b);
  for (Index j = 0; j < b; ++j) wy.v_block.col(j) = g.implied_vector(start + j);

  wy.t_block(0, 0) = g.beta(start);
  for (Index j = 1; j < b; ++j) {
    const Scalar beta = g.beta(start + j);
    const Vector<Scalar> vtv = wy.v_block.leftCols(j).transpose() * wy.v_block.col(j);
    const Vector<Scalar> tz = wy.t_block.topLeftCorner(j, j).template triangularView<Eigen::Upper>() * vtv;
    wy.t_block.col(j).head(j) = -beta * tz;
    wy.t_block(j, j) = beta;
  }
  return wy;
}

/// Splits the k reflections into ceil(k / b) consecutive blocks.
template <typename Scalar>
std::vector<BlockedWY<Scalar>> build_blocks(const BandedReflectors<Scalar>& g, Index b) {
  if (b < 1) throw std::invalid_argument("build_blocks: block size must be at least 1");
  std::vector<BlockedWY<Scalar>> blocks;
  for (Index s = 0; s < g.count(); s += b) blocks.push_back(build_wy(g, s, std::min(b, g.count() - s)));
  return blocks;
}

inline Index block_count(Index k, Index b) { return b < 1 ? 0 : (k + b - 1) / b; }

namespace detail {

template <typename Scalar>
void apply_wy(const BlockedWY<Scalar>& wy, Index bandwidth, Vector<Scalar>& x, bool transpose) {
  const Index r0 = wy.first_row();
  const Index rows = wy.row_span(bandwidth);
  const auto v = wy.v_block.middleRows(r0, rows);
  auto seg = x.segment(r0, rows);
  Vector<Scalar> c = v.transpose() * seg;
  if (transpose)
    c = wy.t_block.template triangularView<Eigen::Upper>().transpose() * c;
  else
    c = wy.t_block.template triangularView<Eigen::Upper>() * c;
  seg.noalias() -= v * c;
}

}  // namespace detail

/// G x with prebuilt blocks, applied last block first.
template <typename Scalar, typename Derived>
Vector<Scalar> apply_blocked(const BandedReflectors<Scalar>& g, const std::vector<BlockedWY<Scalar>>& blocks,
                             const Eigen::MatrixBase<Derived>& x) {
  detail::require_length(g, x.size(), "apply_blocked");
  Vector<Scalar> y = x;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) detail::apply_wy(*it, g.bandwidth(), y, false);
  return y;
}

/// G^T y with prebuilt blocks: each block contributes I - V T^T V^T, first block first.
template <typename Scalar, typename Derived>
Vector<Scalar> apply_blocked_transpose(const BandedReflectors<Scalar>& g,
                                       const std::vector<BlockedWY<Scalar>>& blocks,
                                       const Eigen::MatrixBase<Derived>& y) {
  detail::require_length(g, y.size(), "apply_blocked_transpose");
  Vector<Scalar> x = y;
  for (const auto& wy : blocks) detail::apply_wy(wy, g.bandwidth(), x, true);
  return x;
}

template <typename Scalar, typename Derived>
Vector<Scalar> apply_blocked(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& x, Index b) {
  detail::require_length(g, x.size(), "apply_blocked");
  return apply_blocked(g, build_blocks(g, b), x);
}

template <typename Scalar, typename Derived>
Vector<Scalar> apply_blocked_transpose(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& y,
                                       Index b) {
  detail::require_length(g, y.size(), "apply_blocked_transpose");
  return apply_blocked_transpose(g, build_blocks(g, b), y);
}

}  // namespace bhh
