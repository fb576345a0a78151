#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "bhh/types.hpp"

namespace bhh {

/// Classical Householder QR in factored form.
///
/// Column i of `vectors` holds v_i below row i; the unit entry at (i, i) is
/// implicit and every entry at or above row i is zero. A reflection with
/// beta == 0 is the identity (its column needed no elimination).
template <typename Scalar>
struct HouseholderQROutput {
  Matrix<Scalar> vectors;
  Vector<Scalar> betas;
  Matrix<Scalar> r_factor;

  Index rows() const { return vectors.rows(); }
  Index count() const { return betas.size(); }
};

template <typename Scalar>
struct LQOutput {
  Matrix<Scalar> l;
  Matrix<Scalar> q;
};

/// A rotated by 180 degrees: result(i, j) = a(m-1-i, n-1-j).
template <typename Derived>
Matrix<typename Derived::Scalar> flip180(const Eigen::MatrixBase<Derived>& a) {
  return a.reverse();
}

namespace detail {

// Householder QR of any shape. Reflection i only looks at rows
// i .. i + min(max_tail, m-1-i); rows further down are never read or written,
// so a caller that knows its input is banded gets exact structural zeros.
template <typename Scalar>
HouseholderQROutput<Scalar> householder_factor(Matrix<Scalar> work, Index max_tail) {
  const Index m = work.rows();
  const Index n = work.cols();
  const Index k = std::min(m, n);

  HouseholderQROutput<Scalar> out;
  out.vectors = Matrix<Scalar>::Zero(m, k);
  out.betas = Vector<Scalar>::Zero(k);
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w(n);

  for (Index i = 0; i < k; ++i) {
    const Index t = std::min(max_tail, m - 1 - i);
    if (t <= 0) continue;
    auto tail = work.col(i).segment(i + 1, t);
    const Scalar tail_sq = tail.squaredNorm();
    if (tail_sq == Scalar(0)) continue;

    const Scalar x0 = work(i, i);
    const Scalar norm = std::sqrt(x0 * x0 + tail_sq);
    const Scalar sigma = x0 >= Scalar(0) ? Scalar(1) : Scalar(-1);
    const Scalar pivot = x0 + sigma * norm;

    auto v = out.vectors.col(i).segment(i + 1, t);
    v = tail / pivot;
    const Scalar beta = Scalar(2) / (Scalar(1) + v.squaredNorm());
    out.betas(i) = beta;

    work(i, i) = -sigma * norm;
    tail.setZero();

    const Index rest = n - i - 1;
    if (rest == 0) continue;
    auto head = work.row(i).tail(rest);
    auto block = work.block(i + 1, i + 1, t, rest);
    auto wr = w.head(rest);
    wr.noalias() = v.transpose() * block;
    wr += head;
    wr *= beta;
    head -= wr;
    block.noalias() -= v * wr;
  }

  out.r_factor = work.template triangularView<Eigen::Upper>();
  return out;
}

}  // namespace detail

/// Householder QR of a tall (m >= n) matrix. v_i = x + sign(x_1)|x| e_1 with
/// sign(0) = +1, scaled to a unit leading entry; columns whose subdiagonal is
/// already exactly zero are skipped with beta = 0.
template <typename Derived>
HouseholderQROutput<typename Derived::Scalar> householder_qr(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_tall(a.rows(), a.cols(), "householder_qr");
  return detail::householder_factor<Scalar>(a, std::numeric_limits<Index>::max());
}

/// Applies H_0 ... H_{k-1} to the columns first .. first+count-1 of the m x m
/// identity, i.e. returns those columns of Q without forming the rest.
template <typename Scalar>
Matrix<Scalar> form_q_columns(const HouseholderQROutput<Scalar>& qr, Index first, Index count) {
  const Index m = qr.rows();
  if (first < 0 || count < 0 || first + count > m)
    throw std::out_of_range("form_q_columns: column range outside [0, m)");
  Matrix<Scalar> q = Matrix<Scalar>::Identity(m, m).middleCols(first, count);
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w(count);
  for (Index i = qr.count() - 1; i >= 0; --i) {
    const Scalar beta = qr.betas(i);
    if (beta == Scalar(0)) continue;
    const Index t = m - 1 - i;
    auto v = qr.vectors.col(i).tail(t);
    w.noalias() = v.transpose() * q.bottomRows(t);
    w += q.row(i);
    w *= beta;
    q.row(i) -= w;
    q.bottomRows(t).noalias() -= v * w;
  }
  return q;
}

/// Full m x m orthogonal factor.
template <typename Scalar>
Matrix<Scalar> form_q(const HouseholderQROutput<Scalar>& qr) {
  return form_q_columns(qr, 0, qr.rows());
}

/// A = L Q with L lower trapezoidal (m x r) and Q (r x n) having orthonormal
/// rows, r = min(m, n). Computed as the transpose of a Householder QR of A^T.
template <typename Derived>
LQOutput<typename Derived::Scalar> lq(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index r = std::min(a.rows(), a.cols());
  auto qr = detail::householder_factor<Scalar>(a.transpose(), std::numeric_limits<Index>::max());
  LQOutput<Scalar> out;
  out.l = qr.r_factor.topRows(r).transpose();
  out.q = form_q_columns(qr, 0, r).transpose();
  return out;
}

template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> matmul(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  return a * b;
}

/// ||Q^T Q - I||_F.
template <typename Derived>
typename Derived::Scalar orthogonality_defect(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> gram = q.transpose() * q;
  return (gram - Matrix<Scalar>::Identity(q.cols(), q.cols())).norm();
}

}  // namespace bhh
