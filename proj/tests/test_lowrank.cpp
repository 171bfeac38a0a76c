// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/SVD>
#include <cstring>
#include <numeric>

#include "sarrfi/analysis.hpp"
#include "sarrfi/blockwise.hpp"
#include "sarrfi/lowrank.hpp"
#include "sarrfi/svd.hpp"
#include "test_util.hpp"

using namespace sarrfi;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double nuclear_norm(const ComplexMatrix& m) {
  const auto s = singular_values(m);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double l1_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::abs(v);
  return s;
}

}  // namespace

TEST_CASE("svd analytic cases and reconstruction") {
  const SvdResult d = svd(diag2(5, 1));
  CHECK(d.sigma[0] == doctest::Approx(5.0));
  CHECK(d.sigma[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(2);
  const ComplexMatrix u = testing::random_matrix(9, 1, rng);
  const ComplexMatrix v = testing::random_matrix(7, 1, rng);
  ComplexMatrix r1(9, 7);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 7; ++j) r1(i, j) = u(i, 0) * std::conj(v(j, 0));
  }
  const auto s1 = singular_values(r1);
  CHECK(s1[1] / s1[0] <= 1e-10);

  const ComplexMatrix m = testing::random_matrix(6, 4, rng);
  const SvdResult e = svd(m);
  Eigen::VectorXd s(4);
  for (int k = 0; k < 4; ++k) s(k) = e.sigma[static_cast<std::size_t>(k)];
  const EMatrix rec = e.U * s.asDiagonal() * e.V.adjoint();
  CHECK((rec - to_eigen(m)).norm() <= 1e-10 * to_eigen(m).norm());
  CHECK((e.U.adjoint() * e.U - EMatrix::Identity(4, 4)).norm() <= 1e-8);
  CHECK((e.V.adjoint() * e.V - EMatrix::Identity(4, 4)).norm() <= 1e-8);
  for (std::size_t k = 1; k < e.sigma.size(); ++k) CHECK(e.sigma[k] <= e.sigma[k - 1]);

  // Independent oracle.
  const ComplexMatrix w = testing::random_matrix(7, 11, rng);
  Eigen::JacobiSVD<EMatrix> jac(to_eigen(w));
  const auto sv = singular_values(w);
  for (Eigen::Index k = 0; k < jac.singularValues().size(); ++k) {
    CHECK(sv[static_cast<std::size_t>(k)] == doctest::Approx(jac.singularValues()(k)).epsilon(1e-12));
  }

  ComplexMatrix bad = m;
  bad(2, 1) = {std::nan(""), 0.0};
  try {
    svd(bad);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::non_finite);
  }
}

TEST_CASE("randomized truncated svd matches the full decomposition") {
  std::mt19937_64 rng(4);
  ComplexMatrix m(300, 120);
  for (int k = 0; k < 8; ++k) {
    const ComplexMatrix u = testing::random_matrix(300, 1, rng);
    const ComplexMatrix v = testing::random_matrix(120, 1, rng);
    const double w = std::pow(0.3, k);
    for (std::size_t i = 0; i < 300; ++i) {
      for (std::size_t j = 0; j < 120; ++j) m(i, j) += w * u(i, 0) * std::conj(v(j, 0));
    }
  }
  const auto full = singular_values(m);
  const SvdResult t = truncated_svd(to_eigen(m), 5, 99);
  for (std::size_t k = 0; k < 5; ++k) CHECK(t.sigma[k] == doctest::Approx(full[k]).epsilon(1e-10));
  const SvdResult t2 = truncated_svd(to_eigen(m), 5, 99);
  CHECK(std::memcmp(t.sigma.data(), t2.sigma.data(), 5 * sizeof(double)) == 0);
  CHECK_THROWS_AS(truncated_svd(to_eigen(m), 0, 1), Error);
  CHECK(spectral_norm_estimate(to_eigen(m)) == doctest::Approx(full[0]).epsilon(1e-8));
}

TEST_CASE("pca analytic cases") {
  std::mt19937_64 rng(8);
  const ComplexMatrix u = testing::random_matrix(10, 1, rng);
  const ComplexMatrix v = testing::random_matrix(6, 1, rng);
  ComplexMatrix r1(10, 6, {0.1, 0.2}, {3.0, 0.5}, DomainTag::image);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 6; ++j) r1(i, j) = u(i, 0) * v(j, 0);
  }
  const LowRankSplit s = pca_mitigate(r1, 1);
  CHECK(s.I.frobenius_norm() <= 1e-10 * r1.frobenius_norm());
  CHECK(s.J.axis_eta() == r1.axis_eta());
  CHECK(s.I.domain() == DomainTag::image);
  CHECK(s.sigma.size() == 6);

  const ComplexMatrix m = testing::random_matrix(8, 5, rng);
  const LowRankSplit f = pca_mitigate(m, 5);
  CHECK(testing::rel_diff(m, f.J) <= 1e-10);
  CHECK(f.I.frobenius_norm() <= 1e-10 * m.frobenius_norm());

  CHECK_THROWS_AS(pca_mitigate(m, 0), Error);
  CHECK_THROWS_AS(pca_mitigate(m, 6), Error);
}

TEST_CASE("pca split is exact, rank bounded and Eckart-Young optimal") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix Y = testing::random_matrix(8, 8, rng);
    for (std::size_t K = 1; K <= 8; ++K) {
      const LowRankSplit s = pca_mitigate(Y, K);
      bool exact = true;
      for (std::size_t k = 0; k < Y.size(); ++k) {
        exact = exact && s.I.data()[k] == Y.data()[k] - s.J.data()[k];
      }
      CHECK(exact);
      double tail = 0.0;
      for (std::size_t k = K; k < s.sigma.size(); ++k) tail += s.sigma[k] * s.sigma[k];
      const double resid = s.I.frobenius_norm_sq();
      CHECK(std::abs(resid - tail) <= 1e-10 * std::max(tail, 1e-300) + 1e-24);
      const auto sj = singular_values(s.J);
      std::size_t rank = 0;
      for (double x : sj) rank += x > 1e-8 * sj[0] ? 1 : 0;
      CHECK(rank <= K);
    }
  }
}

TEST_CASE("soft threshold") {
  const cdouble y = soft_threshold({3.0, 4.0}, 2.0);
  CHECK(std::abs(y - cdouble{1.8, 2.4}) <= 1e-12);
  CHECK(soft_threshold({0.3, -0.4}, 0.5) == cdouble{});
  CHECK(soft_threshold({0.3, -0.4}, 0.7) == cdouble{});
  const cdouble z = soft_threshold({-2.0, 1.0}, 0.5);
  CHECK(std::arg(z) == doctest::Approx(std::arg(cdouble{-2.0, 1.0})));

  // Brute-force minimiser of t|z| + |z - x|^2 / 2 on a 2-D grid.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const cdouble x{u(rng), u(rng)};
    const double t = std::abs(u(rng)) / 2.0;
    const double h = 0.01;
    cdouble best;
    double best_obj = 1e300;
    for (double a = -3.5; a <= 3.5; a += h) {
      for (double b = -3.5; b <= 3.5; b += h) {
        const cdouble z2{a, b};
        const double obj = t * std::abs(z2) + 0.5 * std::norm(z2 - x);
        if (obj < best_obj) {
          best_obj = obj;
          best = z2;
        }
      }
    }
    CHECK(std::abs(best - soft_threshold(x, t)) <= 2.0 * h);
  }
}

TEST_CASE("singular value thresholding") {
  const ComplexMatrix s = svt(diag2(5, 1), 2.0);
  CHECK(std::abs(s(0, 0) - 3.0) <= 1e-12);
  CHECK(std::abs(s(1, 1)) <= 1e-12);
  CHECK(std::abs(s(0, 1)) <= 1e-12);
  CHECK(std::abs(s(1, 0)) <= 1e-12);

  std::mt19937_64 rng(13);
  const ComplexMatrix m = testing::random_matrix(5, 5, rng);
  CHECK(testing::rel_diff(m, svt(m, 0.0)) <= 1e-10);
  CHECK_THROWS_AS(svt(m, -1.0), Error);

  // Stochastic optimality probe of t ||X||_* + ||X - M||_F^2 / 2.
  const double t = 1.5;
  auto objective = [&](const ComplexMatrix& x) {
    ComplexMatrix d = x;
    d -= m;
    return t * nuclear_norm(x) + 0.5 * d.frobenius_norm_sq();
  };
  const ComplexMatrix x = svt(m, t);
  const double base = objective(x);
  std::normal_distribution<double> n(0.0, 0.05);
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix p = x;
    for (auto& v : p.data()) v += cdouble{n(rng), n(rng)};
    ok = ok && objective(p) >= base - 1e-12;
  }
  CHECK(ok);
}

TEST_CASE("prox operators are non-expansive") {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> n(0.0, 2.0);
  bool soft_ok = true;
  bool svt_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const cdouble a{n(rng), n(rng)};
    const cdouble b{n(rng), n(rng)};
    const double t = std::abs(n(rng));
    soft_ok = soft_ok && std::abs(soft_threshold(a, t) - soft_threshold(b, t)) <= std::abs(a - b) + 1e-12;
    const ComplexMatrix A = testing::random_matrix(6, 4, rng);
    const ComplexMatrix B = testing::random_matrix(6, 4, rng);
    ComplexMatrix dp = svt(A, t);
    dp -= svt(B, t);
    ComplexMatrix d = A;
    d -= B;
    svt_ok = svt_ok && dp.frobenius_norm() <= d.frobenius_norm() * (1 + 1e-12);
  }
  CHECK(soft_ok);
  CHECK(svt_ok);
}

TEST_CASE("rpca options validation and the zero matrix") {
  RpcaOptions o;
  CHECK_NOTHROW(o.validate());
  o.mu = -1.0;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.rho_growth = 0.5;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.max_iters = 0;
  CHECK_THROWS_AS(o.validate(), Error);
  o = {};
  o.tol = 0.0;
  CHECK_THROWS_AS(o.validate(), Error);

  const LowRankSplit z = rpca_mitigate(ComplexMatrix(6, 9));
  CHECK(z.iters == 1);
  CHECK(z.J.frobenius_norm() == 0.0);
  CHECK(z.I.frobenius_norm() == 0.0);
  CHECK(z.J.rows() == 6);
}

TEST_CASE("rpca recovers a low-rank plus sparse benchmark") {
  const testing::LowPlusSparse b = testing::low_plus_sparse_benchmark();
  RpcaOptions opts;
  const LowRankSplit s = rpca_mitigate(b.Y, opts);
  ComplexMatrix dj = s.J;
  dj -= b.L;
  CHECK(dj.frobenius_norm() / b.L.frobenius_norm() <= 1e-3);
  CHECK(s.iters <= 40);
  if (s.converged) CHECK(s.feas <= opts.tol);
  bool covers = true;
  for (std::size_t k = 0; k < b.S.size(); ++k) {
    if (b.S.data()[k] != cdouble{}) covers = covers && s.I.data()[k] != cdouble{};
  }
  CHECK(covers);

  const double mu = 1.0 / std::sqrt(20.0);
  const double obj = nuclear_norm(s.J) + mu * l1_norm(s.I);
  CHECK(obj <= nuclear_norm(b.Y) + 1e-9);
  CHECK(obj <= mu * l1_norm(b.Y) + 1e-9);

  REQUIRE(s.feas_history.size() >= 6);
  const auto& h = s.feas_history;
  for (std::size_t k = h.size() - 5; k < h.size(); ++k) CHECK(h[k] <= h[k - 1]);
}

TEST_CASE("rpca propagates non-finite input") {
  ComplexMatrix m(4, 4);
  m(1, 1) = {std::numeric_limits<double>::infinity(), 0.0};
  try {
    rpca_mitigate(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_finite);
  }
}

TEST_CASE("tiling arithmetic") {
  const auto tiles = make_tiles(5, 5, 2, 2);
  CHECK(tiles.size() == 9);
  CHECK(tiles.back().rows == 1);
  CHECK(tiles.back().cols == 1);
  CHECK(tiles.back().row0 == 4);
  CHECK_THROWS_AS(make_tiles(5, 5, 1, 2), Error);

  // Every pixel covered exactly once.
  std::vector<int> hits(7 * 11, 0);
  for (const Tile& t : make_tiles(7, 11, 3, 4)) {
    for (std::size_t r = t.row0; r < t.row0 + t.rows; ++r) {
      for (std::size_t c = t.col0; c < t.col0 + t.cols; ++c) ++hits[r * 11 + c];
    }
  }
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("blockwise driver") {
  std::mt19937_64 rng(15);
  ComplexMatrix Y = testing::random_matrix(37, 29, rng);
  Y.set_axes({1.0, 0.5}, {2.0, 0.25});
  Y.set_domain(DomainTag::image);

  SUBCASE("identity split reproduces the input") {
    const BlockwiseResult r = blockwise(Y, 8, 8, [](const ComplexMatrix& t) {
      LowRankSplit s;
      s.J = ComplexMatrix(t.rows(), t.cols(), t.axis_eta(), t.axis_tau(), t.domain());
      s.I = t;
      return s;
    });
    CHECK(std::memcmp(r.split.I.data().data(), Y.data().data(), Y.size() * sizeof(cdouble)) == 0);
    CHECK(r.split.J.frobenius_norm() == 0.0);
    CHECK(r.split.I.axis_eta() == Y.axis_eta());
    CHECK(r.tiles.size() == 20);
  }

  SUBCASE("PCA split stays exact") {
    const BlockwiseResult r = blockwise(Y, 16, 16, [](const ComplexMatrix& t) {
      return pca_mitigate(t, 2);
    });
    ComplexMatrix sum = r.split.J;
    sum += r.split.I;
    CHECK(testing::max_abs_diff(sum, Y) <= 1e-14);
  }

  SUBCASE("errors carry tile coordinates") {
    try {
      blockwise(Y, 16, 16, [](const ComplexMatrix& t) -> LowRankSplit {
        if (t.axis_eta().start == 9.0 && t.axis_tau().start == 2.0) throw Error(Errc::non_finite, "boom");
        return pca_mitigate(t, 1);
      });
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::non_finite);
      CHECK(std::string(e.what()).find("tile (16, 0)") != std::string::npos);
    }
  }
}

TEST_CASE("blockwise PCA is local to the tile holding the artefact") {
  std::mt19937_64 rng(16);
  ComplexMatrix Y(64, 48);
  const ComplexMatrix u = testing::random_matrix(20, 1, rng);
  const ComplexMatrix v = testing::random_matrix(14, 1, rng);
  const ComplexMatrix noise = testing::random_matrix(20, 14, rng);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 14; ++j) Y(34 + i, 26 + j) = 5.0 * u(i, 0) * v(j, 0) + 0.1 * noise(i, j);
  }
  const LowRankSplit whole = pca_mitigate(Y, 1);
  const BlockwiseResult blocks = blockwise(Y, 32, 24, [](const ComplexMatrix& t) {
    return pca_mitigate(t, 1);
  });
  const ComplexMatrix a = whole.J.block(32, 24, 32, 24);
  const ComplexMatrix b = blocks.split.J.block(32, 24, 32, 24);
  CHECK(testing::max_abs_diff(a, b) <= 1e-10 * a.frobenius_norm());
  CHECK(blocks.split.J.block(0, 0, 32, 24).frobenius_norm() == 0.0);
}
