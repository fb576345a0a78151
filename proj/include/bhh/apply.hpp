#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "bhh/reflectors.hpp"
#include "bhh/types.hpp"

namespace bhh {

/// Flop tally for reflection kernels.
///
/// One reflection with tail width w costs 4w + 2: the dot product against
/// (1, tail) is w multiplies and w additions, scaling by beta is one multiply,
/// and the update is one addition at the unit position plus w multiplies and
/// w additions along the tail. Skipped reflections cost nothing.
struct FlopCounter {
  std::int64_t multiplies = 0;
  std::int64_t additions = 0;

  std::int64_t total() const { return multiplies + additions; }
  void record(std::int64_t mul, std::int64_t add) {
    multiplies += mul;
    additions += add;
  }
};

namespace detail {

struct NoCount {
  void record(std::int64_t, std::int64_t) {}
};

template <typename Scalar>
void require_length(const BandedReflectors<Scalar>& g, Index len, const char* op) {
  if (len != g.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": vector length " + std::to_string(len) +
                                " does not match ambient dimension " + std::to_string(g.ambient_dim()));
}

}  // namespace detail

/// x <- H_i x, touching only positions i .. i + w.
template <typename Scalar, typename Derived, typename Counter>
void apply_reflection(const BandedReflectors<Scalar>& g, Index i, Eigen::MatrixBase<Derived>& x,
                      Counter& counter) {
  const Scalar beta = g.beta(i);
  if (beta == Scalar(0)) return;
  const Index w = g.bandwidth();
  auto tail = g.tail(i).transpose();
  auto seg = x.segment(i + 1, w);
  const Scalar t = beta * (x(i) + tail.dot(seg));
  x(i) -= t;
  seg -= t * tail;
  counter.record(2 * w + 1, 2 * w + 1);
}

template <typename Scalar, typename Derived>
void apply_reflection(const BandedReflectors<Scalar>& g, Index i, Eigen::MatrixBase<Derived>& x) {
  detail::NoCount none;
  apply_reflection(g, i, x, none);
}

/// G x = H_0 (H_1 (... (H_{k-1} x))), reflections in descending order.
template <typename Scalar, typename Derived>
Vector<Scalar> apply(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& x) {
  detail::require_length(g, x.size(), "apply");
  Vector<Scalar> y = x;
  for (Index i = g.count() - 1; i >= 0; --i) apply_reflection(g, i, y);
  return y;
}

/// G^T y = H_{k-1} (... (H_0 y)), ascending order since each H_i is symmetric.
template <typename Scalar, typename Derived>
Vector<Scalar> apply_transpose(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& y) {
  detail::require_length(g, y.size(), "apply_transpose");
  Vector<Scalar> x = y;
  for (Index i = 0; i < g.count(); ++i) apply_reflection(g, i, x);
  return x;
}

/// Same arithmetic as apply(), with every reflection's flops added to
/// `counter`. A product with no skipped reflections costs exactly 4kw + 2k.
template <typename Scalar, typename Derived>
Vector<Scalar> apply_counted(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& x,
                             FlopCounter& counter) {
  detail::require_length(g, x.size(), "apply_counted");
  Vector<Scalar> y = x;
  for (Index i = g.count() - 1; i >= 0; --i) apply_reflection(g, i, y, counter);
  return y;
}

template <typename Scalar, typename Derived>
Vector<Scalar> apply_transpose_counted(const BandedReflectors<Scalar>& g,
                                       const Eigen::MatrixBase<Derived>& y, FlopCounter& counter) {
  detail::require_length(g, y.size(), "apply_transpose_counted");
  Vector<Scalar> x = y;
  for (Index i = 0; i < g.count(); ++i) apply_reflection(g, i, x, counter);
  return x;
}

/// G M, column by column.
template <typename Scalar, typename Derived>
Matrix<Scalar> apply_to_matrix(const BandedReflectors<Scalar>& g, const Eigen::MatrixBase<Derived>& m_in) {
  detail::require_length(g, m_in.rows(), "apply_to_matrix");
  Matrix<Scalar> out = m_in;
  for (Index j = 0; j < out.cols(); ++j) {
    auto col = out.col(j);
    for (Index i = g.count() - 1; i >= 0; --i) apply_reflection(g, i, col);
  }
  return out;
}

/// G^T M, column by column.
template <typename Scalar, typename Derived>
Matrix<Scalar> apply_transpose_to_matrix(const BandedReflectors<Scalar>& g,
                                         const Eigen::MatrixBase<Derived>& m_in) {
  detail::require_length(g, m_in.rows(), "apply_transpose_to_matrix");
  Matrix<Scalar> out = m_in;
  for (Index j = 0; j < out.cols(); ++j) {
    auto col = out.col(j);
    for (Index i = 0; i < g.count(); ++i) apply_reflection(g, i, col);
  }
  return out;
}

/// Dense m x m matrix of G. Test oracle; O(m^2 w) work.
template <typename Scalar>
Matrix<Scalar> reconstruct_g(const BandedReflectors<Scalar>& g) {
  return apply_to_matrix(g, Matrix<Scalar>::Identity(g.ambient_dim(), g.ambient_dim()));
}

}  // namespace bhh
