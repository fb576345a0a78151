#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "bhh/apply.hpp"
#include "bhh/dense.hpp"
#include "bhh/factor.hpp"
#include "bhh/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bhh;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> xs) {
  Eigen::MatrixXd c(xs.size(), 1);
  Index i = 0;
  for (double x : xs) c(i++, 0) = x;
  return c;
}

}  // namespace

TEST_CASE("factor_tall on square input is G = I, B = A") {
  const auto a = random_matrix(3, 3, 1);
  const auto f = factor_tall(a);
  CHECK(f.placement() == Placement::Top);
  CHECK(f.g().bandwidth() == 0);
  CHECK(f.g().count() == 3);
  CHECK(f.g().betas() == Eigen::VectorXd::Zero(3));
  CHECK(f.b_factor() == a);
  CHECK(reconstruct_g(f.g()) == Eigen::MatrixXd::Identity(3, 3));
  CHECK(reconstruct_a(f) == a);
}

TEST_CASE("factor_tall on (0, 1)^T") {
  const auto a = column({0, 1});
  const auto f = factor_tall(a);
  REQUIRE(f.g().count() == 1);
  REQUIRE(f.g().bandwidth() == 1);
  CHECK(f.g().free_entries()(0, 0) == 1.0);
  CHECK(f.g().beta(0) == 1.0);
  CHECK(f.b_factor()(0, 0) == -1.0);
  CHECK(reconstruct_a(f) == a);
}

TEST_CASE("factor_tall on random 7x4") {
  const auto a = random_matrix(7, 4, 2);
  const auto f = factor_tall(a);
  CHECK(f.g().free_entries().rows() == 4);
  CHECK(f.g().free_entries().cols() == 3);
  CHECK(storage_floats(f.g()) == 12);
  CHECK(storage_floats_with_betas(f.g()) == 16);
  CHECK(oracle::rel_err(reconstruct_a(f), a) <= 1e-12);
  CHECK(oracle::rel_err(oracle::product(f.g()), reconstruct_g(f.g())) <= 1e-13);
}

TEST_CASE("factor_tall follows the flip / LQ / flip / banded QR pipeline") {
  const auto a = random_matrix(9, 3, 3);
  const Index w = a.rows() - a.cols();
  const auto low = lq(flip180(a));
  const Eigen::MatrixXd banded = flip180(low.l);
  for (Index j = 0; j < banded.cols(); ++j)
    for (Index i = j + w + 1; i < banded.rows(); ++i) CHECK(banded(i, j) == 0.0);

  // An unrestricted QR of the banded matrix never fills past the band.
  const auto full = householder_qr(banded);
  for (Index j = 0; j < full.count(); ++j)
    for (Index i = j + w + 1; i < banded.rows(); ++i) CHECK(full.vectors(i, j) == 0.0);

  const auto f = factor_tall(a);
  for (Index j = 0; j < f.g().count(); ++j) {
    CHECK(f.g().beta(j) == doctest::Approx(full.betas(j)).epsilon(1e-14));
    for (Index t = 0; t < w; ++t)
      CHECK(std::abs(f.g().free_entries()(j, t) - full.vectors(j + 1 + t, j)) <= 1e-14);
  }
  const Eigen::MatrixXd b = full.r_factor.topRows(3) * flip180(low.q);
  CHECK((f.b_factor() - b).norm() <= 1e-14 * b.norm());
}

TEST_CASE("implied vectors follow the banded staircase") {
  const auto f = factor_tall(random_matrix(8, 3, 4));
  const auto& g = f.g();
  for (Index i = 0; i < g.count(); ++i) {
    const auto v = g.implied_vector(i);
    for (Index r = 0; r < i; ++r) CHECK(v(r) == 0.0);
    CHECK(v(i) == 1.0);
    for (Index r = i + 1 + g.bandwidth(); r < g.ambient_dim(); ++r) CHECK(v(r) == 0.0);
    CHECK(g.beta(i) == doctest::Approx(2.0 / v.squaredNorm()).epsilon(1e-15));
  }
}

TEST_CASE("factor_complement on square input has no reflections") {
  const auto a = random_matrix(4, 4, 5);
  const auto f = factor_complement(a);
  CHECK(f.placement() == Placement::Bottom);
  CHECK(f.g().count() == 0);
  CHECK(f.g().bandwidth() == 4);
  CHECK(f.b_factor() == a);
  CHECK(reconstruct_a(f) == a);
}

TEST_CASE("factor_complement on (0, 1)^T") {
  const auto a = column({0, 1});
  const auto f = factor_complement(a);
  CHECK(f.g().count() == 1);
  CHECK(storage_floats(f.g()) == 1);
  CHECK((reconstruct_a(f) - a).norm() <= 1e-15);
  const Eigen::MatrixXd gta = reconstruct_g(f.g()).transpose() * a;
  CHECK(std::abs(gta(0, 0)) <= 1e-15);
}

TEST_CASE("factor_complement on random 10x9") {
  const auto a = random_matrix(10, 9, 6);
  const auto f = factor_complement(a);
  CHECK(f.g().count() == 1);
  CHECK(f.g().bandwidth() == 9);
  CHECK(storage_floats(f.g()) == 9);
  CHECK(oracle::rel_err(reconstruct_a(f), a) <= 1e-12);
}

TEST_CASE("factor_complement zeroes the top m - n rows of G^T A") {
  SeededGenerator gen(7);
  for (auto [m, n] : {std::pair{9, 7}, {12, 11}, {30, 20}, {6, 2}}) {
    const auto a = gen.matrix(m, n);
    const auto f = factor_complement(a);
    const Eigen::MatrixXd gta = apply_transpose_to_matrix(f.g(), a);
    CHECK(gta.topRows(m - n).norm() <= 1e-12 * a.norm());
    CHECK(oracle::rel_err(reconstruct_a(f), a) <= 1e-12);
  }
}

TEST_CASE("complement basis from trailing columns matches full materialization") {
  const auto a = random_matrix(14, 9, 8);
  const auto qr = householder_qr(a);
  const Eigen::MatrixXd thin = form_q_columns(qr, 9, 5);
  const Eigen::MatrixXd full = form_q(qr).rightCols(5);
  CHECK((thin - full).norm() <= 1e-13);

  const auto via_thin = factor_tall(thin);
  const auto via_full = factor_tall(full);
  CHECK((via_thin.g().free_entries() - via_full.g().free_entries()).norm() <= 1e-13);
  CHECK((via_thin.g().betas() - via_full.g().betas()).norm() <= 1e-13);
}

TEST_CASE("factor_auto crossover") {
  CHECK(factor_auto(random_matrix(100, 10, 1)).placement() == Placement::Top);
  CHECK(factor_auto(random_matrix(100, 95, 1)).placement() == Placement::Bottom);
  CHECK(factor_auto(random_matrix(8, 4, 1)).placement() == Placement::Top);
  CHECK(factor_auto(random_matrix(7, 4, 1)).placement() == Placement::Bottom);

  for (Index m = 1; m <= 24; ++m)
    for (Index n = 0; n <= m; ++n) {
      const auto f = factor_auto(random_matrix(m, n, m * 100 + n));
      CHECK(f.placement() == auto_placement(m, n));
      if (n == 0 || n == m) continue;
      CHECK(f.g().count() <= (m + 1) / 2);
      CHECK(f.g().bandwidth() >= m / 2);
    }
}

TEST_CASE("reconstruct_g") {
  CHECK(reconstruct_g(BandedReflectors<double>::identity(5)) == Eigen::MatrixXd::Identity(5, 5));

  RowMatrix<double> tail(1, 1);
  tail << 1.0;
  const BandedReflectors<double> g(2, tail, Eigen::VectorXd::Ones(1));
  Eigen::MatrixXd want(2, 2);
  want << 0, -1, -1, 0;
  CHECK(reconstruct_g(g) == want);

  SeededGenerator gen(12);
  for (auto [m, n] : {std::pair{7, 4}, {20, 3}, {11, 10}}) {
    const auto f = factor_auto(gen.matrix(m, n));
    CHECK(orthogonality_defect(reconstruct_g(f.g())) <= 1e-13 * std::sqrt(double(m)));
  }
}

TEST_CASE("reconstruct_a on random inputs") {
  const auto a = random_matrix(7, 4, 13);
  CHECK(oracle::rel_err(reconstruct_a(factor_tall(a)), a) <= 1e-12);
  const auto c = random_matrix(9, 7, 14);
  CHECK(oracle::rel_err(reconstruct_a(factor_complement(c)), c) <= 1e-12);
}

TEST_CASE("storage_floats") {
  CHECK(storage_floats(factor_tall(random_matrix(7, 4, 1)).g()) == 12);
  CHECK(storage_floats_with_betas(factor_tall(random_matrix(7, 4, 1)).g()) == 16);
  CHECK(storage_floats(factor_tall(random_matrix(6, 6, 1)).g()) == 0);
  CHECK(storage_floats(factor_complement(random_matrix(6, 6, 1)).g()) == 0);

  const auto big = factor_complement(random_matrix(1000, 999, 2));
  CHECK(storage_floats(big.g()) == 999);
  CHECK(storage_floats_with_betas(big.g()) == 1000);
}

TEST_CASE("reconstruction across edge shapes") {
  SeededGenerator gen(15);
  for (auto [m, n] : {std::pair{1, 1}, {5, 1}, {5, 4}, {6, 3}, {13, 5}, {40, 39}, {40, 1}, {33, 16}}) {
    const auto a = gen.matrix(m, n);
    CHECK(oracle::rel_err(reconstruct_a(factor_tall(a)), a) <= 1e-12);
    CHECK(oracle::rel_err(reconstruct_a(factor_complement(a)), a) <= 1e-12);
  }
}

TEST_CASE("orthogonal input gives orthogonal B") {
  SeededGenerator gen(16);
  for (auto [m, n] : {std::pair{12, 4}, {12, 9}, {30, 15}, {5, 5}}) {
    const auto u = gen.orthonormal(m, n);
    CHECK(orthogonality_defect(factor_tall(u).b_factor()) <= 1e-12);
    CHECK(orthogonality_defect(factor_complement(u).b_factor()) <= 1e-12);
  }
}

TEST_CASE("factorization is deterministic") {
  const auto a = random_matrix(25, 8, 17);
  CHECK(factor_tall(a) == factor_tall(a));
  const auto c = random_matrix(25, 20, 17);
  CHECK(factor_complement(c) == factor_complement(c));
}

TEST_CASE("G spans the range of A") {
  SeededGenerator gen(18);
  for (auto [m, n] : {std::pair{10, 3}, {31, 12}, {8, 6}}) {
    const auto a = gen.matrix(m, n);
    const auto pa = oracle::range_projector(a);

    const Eigen::MatrixXd top = reconstruct_g(factor_tall(a).g()).leftCols(n);
    CHECK((pa - top * top.transpose()).norm() <= 1e-10);

    const Eigen::MatrixXd bottom = reconstruct_g(factor_complement(a).g()).rightCols(n);
    CHECK((pa - bottom * bottom.transpose()).norm() <= 1e-10);
  }
}

TEST_CASE("rank-deficient input still factors") {
  Eigen::MatrixXd a = random_matrix(9, 4, 19);
  a.col(2) = a.col(0);
  a.col(3).setZero();
  const auto t = factor_tall(a);
  CHECK(oracle::rel_err(reconstruct_a(t), a) <= 1e-12);
  const auto c = factor_complement(a);
  CHECK(oracle::rel_err(reconstruct_a(c), a) <= 1e-12);

  const auto zero = factor_tall(Eigen::MatrixXd::Zero(6, 2));
  CHECK(zero.g().betas() == Eigen::VectorXd::Zero(2));
  CHECK(zero.b_factor() == Eigen::MatrixXd::Zero(2, 2));
}

TEST_CASE("n = 0 factors to an empty B") {
  const Eigen::MatrixXd a(5, 0);
  const auto t = factor_tall(a);
  CHECK(t.g().count() == 0);
  CHECK(t.b_factor().size() == 0);
  CHECK(reconstruct_a(t).rows() == 5);

  const auto c = factor_complement(a);
  CHECK(c.g().count() == 5);
  CHECK(c.g().bandwidth() == 0);
  CHECK(reconstruct_g(c.g()) == Eigen::MatrixXd::Identity(5, 5));
  CHECK(factor_auto(a).placement() == Placement::Top);
}

TEST_CASE("factor errors") {
  CHECK_THROWS_AS(factor_tall(Eigen::MatrixXd::Ones(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(factor_complement(Eigen::MatrixXd::Ones(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(factor_auto(Eigen::MatrixXd::Ones(3, 5)), std::invalid_argument);
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(4, 2);
  a(2, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(factor_tall(a), std::invalid_argument);

  RowMatrix<double> tail(2, 2);
  CHECK_THROWS_AS(BandedReflectors<double>(5, tail, Eigen::VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(BandedReflectors<double>(4, tail, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(CompactSubspaceFactor<double>(BandedReflectors<double>::identity(4), Eigen::MatrixXd::Zero(2, 2),
                                                Placement::Top),
                  std::invalid_argument);
}
