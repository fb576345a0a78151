#pragma once

#include <Eigen/Core>

#include "bhh/apply.hpp"
#include "bhh/dense.hpp"
#include "bhh/reflectors.hpp"
#include "bhh/types.hpp"

namespace bhh {

/// A = G (B; 0) with G a product of n banded reflections of width m - n.
///
/// Steps: flip A by 180 degrees, take an LQ of the flip, flip L back (which
/// is now zero below the band i > j + m - n), and run a band-limited
/// Householder QR on it. B = R Q_flipped. Square input short-circuits to
/// G = I, B = A.
///
/// G and B are unique when A has full column rank. Rank-deficient columns
/// produce skipped reflections and a singular B.
template <typename Derived>
CompactSubspaceFactor<typename Derived::Scalar> factor_tall(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index m = a.rows();
  const Index n = a.cols();
  require_tall(m, n, "factor_tall");
  require_finite(a, "factor_tall input");
  const Index w = m - n;

  if (w == 0) return {BandedReflectors<Scalar>::identity(m), Matrix<Scalar>(a), Placement::Top};
  if (n == 0) return {BandedReflectors<Scalar>(m, RowMatrix<Scalar>(0, m), Vector<Scalar>(0)),
                      Matrix<Scalar>(0, 0), Placement::Top};

  const auto lower = lq(flip180(a));
  const Matrix<Scalar> banded = flip180(lower.l);
  const auto qr = detail::householder_factor<Scalar>(banded, w);

  RowMatrix<Scalar> free(n, w);
  for (Index i = 0; i < n; ++i) free.row(i) = qr.vectors.col(i).segment(i + 1, w).transpose();

  Matrix<Scalar> b = qr.r_factor.topRows(n) * flip180(lower.q);
  return {BandedReflectors<Scalar>(m, std::move(free), qr.betas), std::move(b), Placement::Top};
}

/// A = G (0; B) with G a product of m - n banded reflections of width n.
///
/// Takes a Householder QR of A = (U1 U2) (R; 0), factors the complement basis
/// U2 = G (Q; 0) with factor_tall, and sets B = G2^T A where G2 is the last n
/// columns of G. The top m - n rows of G^T A vanish because U2^T A = 0.
/// U2 is formed by applying the QR reflections to the trailing identity
/// columns only.
template <typename Derived>
CompactSubspaceFactor<typename Derived::Scalar> factor_complement(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index m = a.rows();
  const Index n = a.cols();
  require_tall(m, n, "factor_complement");
  require_finite(a, "factor_complement input");
  const Index k = m - n;

  if (k == 0) return {BandedReflectors<Scalar>(m, RowMatrix<Scalar>(0, m), Vector<Scalar>(0)),
                      Matrix<Scalar>(a), Placement::Bottom};

  const auto qr = householder_qr(a);
  const Matrix<Scalar> complement = form_q_columns(qr, n, k);
  auto inner = factor_tall(complement);
  Matrix<Scalar> b = apply_transpose_to_matrix(inner.g(), a).bottomRows(n);
  return {inner.g(), std::move(b), Placement::Bottom};
}

/// factor_tall when m - n >= n (ties included), factor_complement otherwise.
/// Either way G has at most ceil(m/2) reflections of width at least floor(m/2).
template <typename Derived>
CompactSubspaceFactor<typename Derived::Scalar> factor_auto(const Eigen::MatrixBase<Derived>& a) {
  require_tall(a.rows(), a.cols(), "factor_auto");
  if (a.rows() - a.cols() >= a.cols()) return factor_tall(a);
  return factor_complement(a);
}

inline Placement auto_placement(Index m, Index n) { return m - n >= n ? Placement::Top : Placement::Bottom; }

/// Dense m x n matrix G (B; 0) or G (0; B).
template <typename Scalar>
Matrix<Scalar> reconstruct_a(const CompactSubspaceFactor<Scalar>& f) {
  const Index m = f.rows();
  const Index n = f.cols();
  Matrix<Scalar> padded = Matrix<Scalar>::Zero(m, n);
  if (f.placement() == Placement::Top)
    padded.topRows(n) = f.b_factor();
  else
    padded.bottomRows(n) = f.b_factor();
  return apply_to_matrix(f.g(), padded);
}

}  // namespace bhh
