#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "bhh/types.hpp"

namespace bhh {

/// Product G = H_0 H_1 ... H_{k-1} of banded Householder reflections in R^m.
///
/// With bandwidth w = m - k, the implied vector v_i is
///   (0 x i, 1, tail_i[0..w), 0 x (k-1-i))
/// so only the k x w tails are stored. H_i = I - beta_i v_i v_i^T with
/// beta_i = 2 / (v_i^T v_i), or beta_i = 0 for a skipped reflection.
template <typename Scalar>
class BandedReflectors {
 public:
  BandedReflectors() = default;

  BandedReflectors(Index ambient_dim, RowMatrix<Scalar> free_entries, Vector<Scalar> betas)
      : ambient_dim_(ambient_dim), free_entries_(std::move(free_entries)), betas_(std::move(betas)) {
    if (ambient_dim_ < 0) throw std::invalid_argument("BandedReflectors: negative ambient dimension");
    if (free_entries_.rows() != betas_.size())
      throw std::invalid_argument("BandedReflectors: " + std::to_string(betas_.size()) + " betas for " +
                                  std::to_string(free_entries_.rows()) + " vectors");
    if (free_entries_.rows() + free_entries_.cols() != ambient_dim_)
      throw std::invalid_argument("BandedReflectors: count + bandwidth must equal ambient dimension");
    require_finite(free_entries_, "BandedReflectors free entries");
    require_finite(betas_, "BandedReflectors betas");
    for (Index i = 0; i < betas_.size(); ++i)
      if (betas_(i) < Scalar(0)) throw std::invalid_argument("BandedReflectors: negative beta");
  }

  /// The identity on R^m written as m skipped reflections of zero width.
  static BandedReflectors identity(Index m) {
    return BandedReflectors(m, RowMatrix<Scalar>(m, 0), Vector<Scalar>::Zero(m));
  }

  Index ambient_dim() const { return ambient_dim_; }
  Index count() const { return betas_.size(); }
  Index bandwidth() const { return free_entries_.cols(); }

  const RowMatrix<Scalar>& free_entries() const { return free_entries_; }
  const Vector<Scalar>& betas() const { return betas_; }
  Scalar beta(Index i) const { return betas_(i); }
  auto tail(Index i) const { return free_entries_.row(i); }

  /// Full length-m vector v_i including its structural zeros.
  Vector<Scalar> implied_vector(Index i) const {
    Vector<Scalar> v = Vector<Scalar>::Zero(ambient_dim_);
    v(i) = Scalar(1);
    v.segment(i + 1, bandwidth()) = tail(i).transpose();
    return v;
  }

  bool operator==(const BandedReflectors& o) const {
    return ambient_dim_ == o.ambient_dim_ && free_entries_.rows() == o.free_entries_.rows() &&
           free_entries_.cols() == o.free_entries_.cols() && free_entries_ == o.free_entries_ &&
           betas_ == o.betas_;
  }

 private:
  Index ambient_dim_ = 0;
  RowMatrix<Scalar> free_entries_;
  Vector<Scalar> betas_;
};

/// Number of stored floats for the vectors alone: count * bandwidth.
template <typename Scalar>
Index storage_floats(const BandedReflectors<Scalar>& g) {
  return g.count() * g.bandwidth();
}

template <typename Scalar>
Index storage_floats_with_betas(const BandedReflectors<Scalar>& g) {
  return storage_floats(g) + g.count();
}

/// A = G (B; 0) for Placement::Top, A = G (0; B) for Placement::Bottom.
template <typename Scalar>
class CompactSubspaceFactor {
 public:
  CompactSubspaceFactor() = default;

  CompactSubspaceFactor(BandedReflectors<Scalar> g, Matrix<Scalar> b_factor, Placement placement)
      : g_(std::move(g)), b_(std::move(b_factor)), placement_(placement) {
    if (b_.rows() != b_.cols()) throw std::invalid_argument("CompactSubspaceFactor: B must be square");
    const Index m = g_.ambient_dim();
    const Index n = b_.rows();
    if (n > m) throw std::invalid_argument("CompactSubspaceFactor: B larger than ambient dimension");
    const Index expected = placement_ == Placement::Top ? n : m - n;
    if (g_.count() != expected)
      throw std::invalid_argument("CompactSubspaceFactor: " + std::string(to_string(placement_)) +
                                  " placement needs " + std::to_string(expected) + " reflections, got " +
                                  std::to_string(g_.count()));
    require_finite(b_, "CompactSubspaceFactor B");
  }

  const BandedReflectors<Scalar>& g() const { return g_; }
  const Matrix<Scalar>& b_factor() const { return b_; }
  Placement placement() const { return placement_; }

  Index rows() const { return g_.ambient_dim(); }
  Index cols() const { return b_.rows(); }

  bool operator==(const CompactSubspaceFactor& o) const {
    return placement_ == o.placement_ && g_ == o.g_ && b_.rows() == o.b_.rows() && b_ == o.b_;
  }

 private:
  BandedReflectors<Scalar> g_;
  Matrix<Scalar> b_;
  Placement placement_ = Placement::Top;
};

}  // namespace bhh
