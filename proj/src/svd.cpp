// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/svd.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sarrfi {
namespace {

void require_finite(const EMatrix& m) {
  if (!m.allFinite()) throw Error(Errc::non_finite, "svd: input contains non-finite entries");
}

lapack_int to_int(Eigen::Index v) { return static_cast<lapack_int>(v); }

}  // namespace

SvdResult svd(const EMatrix& m) {
  require_finite(m);
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const Eigen::Index r = std::min(rows, cols);
  SvdResult out;
  out.sigma.assign(static_cast<std::size_t>(r), 0.0);
  out.U.resize(rows, r);
  EMatrix vh(r, cols);
  if (r == 0) {
    out.V.resize(cols, 0);
    return out;
  }
  EMatrix a = m;
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'S', to_int(rows), to_int(cols),
      reinterpret_cast<lapack_complex_double*>(a.data()), to_int(rows), out.sigma.data(),
      reinterpret_cast<lapack_complex_double*>(out.U.data()), to_int(rows),
      reinterpret_cast<lapack_complex_double*>(vh.data()), to_int(r));
  if (info != 0) {
    throw Error(Errc::non_finite, "svd: zgesdd failed with info=" + std::to_string(info));
  }
  out.V = vh.adjoint();
  return out;
}

SvdResult svd(const ComplexMatrix& m) { return svd(to_eigen(m)); }

std::vector<double> singular_values(const EMatrix& m) {
  require_finite(m);
  const Eigen::Index r = std::min(m.rows(), m.cols());
  std::vector<double> sigma(static_cast<std::size_t>(r), 0.0);
  if (r == 0) return sigma;
  EMatrix a = m;
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'N', to_int(m.rows()), to_int(m.cols()),
      reinterpret_cast<lapack_complex_double*>(a.data()), to_int(m.rows()), sigma.data(), nullptr,
      1, nullptr, 1);
  if (info != 0) {
    throw Error(Errc::non_finite, "svd: zgesdd failed with info=" + std::to_string(info));
  }
  return sigma;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  // A row-major buffer read as column-major is the transpose, which has the same singular values.
  EMatrix t = Eigen::Map<const EMatrix>(m.data().data(), static_cast<Eigen::Index>(m.cols()),
                                        static_cast<Eigen::Index>(m.rows()));
  return singular_values(t);
}

SvdResult truncated_svd(const EMatrix& m, std::size_t k, std::uint64_t seed,
                        std::size_t oversample, int power_iters) {
  require_finite(m);
  const auto rank_cap = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
  if (k == 0 || k > rank_cap) {
    throw Error(Errc::invalid_argument, "truncated_svd: k must be in [1, min(rows, cols)]");
  }
  const auto l = static_cast<Eigen::Index>(std::min(rank_cap, k + oversample));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  EMatrix omega(m.cols(), l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      omega(i, j) = {re, im};
    }
  }

  auto orthonormal = [](const EMatrix& x) -> EMatrix {
    Eigen::HouseholderQR<EMatrix> qr(x);
    return qr.householderQ() * EMatrix::Identity(x.rows(), x.cols());
  };

  EMatrix Q = orthonormal(m * omega);
  for (int it = 0; it < power_iters; ++it) {
    EMatrix W = orthonormal(m.adjoint() * Q);
    Q = orthonormal(m * W);
  }
  const EMatrix B = Q.adjoint() * m;  // l x cols
  SvdResult small = svd(B);
  SvdResult out;
  const auto kk = static_cast<Eigen::Index>(k);
  out.U = Q * small.U.leftCols(kk);
  out.V = small.V.leftCols(kk);
  out.sigma.assign(small.sigma.begin(), small.sigma.begin() + kk);
  return out;
}

double spectral_norm_estimate(const EMatrix& m, int iters) {
  if (m.size() == 0) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd x(m.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    x(i) = {re, im};
  }
  x.normalize();
  double est = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd y = m * x;
    est = y.norm();
    if (est == 0.0) return 0.0;
    x = m.adjoint() * y;
    const double n = x.norm();
    if (n == 0.0) return est;
    x /= n;
  }
  return (m * x).norm();
}

EMatrix to_eigen(const ComplexMatrix& m) { return as_eigen(m); }

ComplexMatrix from_eigen(const EMatrix& e, const ComplexMatrix& like) {
  if (static_cast<std::size_t>(e.rows()) != like.rows() ||
      static_cast<std::size_t>(e.cols()) != like.cols()) {
    throw Error(Errc::shape_mismatch, "from_eigen: shape differs from template");
  }
  ComplexMatrix out(like.rows(), like.cols(), like.axis_eta(), like.axis_tau(), like.domain());
  as_eigen(out) = e;
  return out;
}

}  // namespace sarrfi
