// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/lowrank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sarrfi/svd.hpp"

namespace sarrfi {
namespace {

EMatrix svt_eigen(const EMatrix& m, double t) {
  SvdResult d = svd(m);
  Eigen::Index keep = 0;
  while (keep < static_cast<Eigen::Index>(d.sigma.size()) &&
         d.sigma[static_cast<std::size_t>(keep)] > t) {
    ++keep;
  }
  Eigen::VectorXd s(keep);
  for (Eigen::Index k = 0; k < keep; ++k) s(k) = d.sigma[static_cast<std::size_t>(k)] - t;
  return d.U.leftCols(keep) * s.asDiagonal() * d.V.leftCols(keep).adjoint();
}

}  // namespace

LowRankSplit pca_mitigate(const ComplexMatrix& Y, std::size_t K) {
  const std::size_t r = std::min(Y.rows(), Y.cols());
  if (K < 1 || K > r) {
    throw Error(Errc::invalid_argument,
                "pca: K=" + std::to_string(K) + " outside [1, " + std::to_string(r) + "]");
  }
  const EMatrix y = to_eigen(Y);
  SvdResult d = svd(y);
  const auto kk = static_cast<Eigen::Index>(K);
  Eigen::VectorXd s(kk);
  for (Eigen::Index k = 0; k < kk; ++k) s(k) = d.sigma[static_cast<std::size_t>(k)];
  const EMatrix j = d.U.leftCols(kk) * s.asDiagonal() * d.V.leftCols(kk).adjoint();

  LowRankSplit out;
  out.J = from_eigen(j, Y);
  out.I = Y;
  out.I -= out.J;
  out.sigma = std::move(d.sigma);
  out.iters = 1;
  out.feas = 0.0;
  return out;
}

cdouble soft_threshold(cdouble x, double t) {
  const double a = std::abs(x);
  if (a <= t) return {0.0, 0.0};
  return x * ((a - t) / a);
}

ComplexMatrix svt(const ComplexMatrix& m, double t) {
  if (!(t >= 0.0)) throw Error(Errc::invalid_argument, "svt: threshold must be >= 0");
  return from_eigen(svt_eigen(to_eigen(m), t), m);
}

void RpcaOptions::validate() const {
  auto bad = [](const char* what) { throw Error(Errc::invalid_config, what); };
  if (mu && !(*mu > 0.0)) bad("rpca: mu must be > 0");
  if (rho0 && !(*rho0 > 0.0)) bad("rpca: rho0 must be > 0");
  if (!(rho_growth >= 1.0)) bad("rpca: rho_growth must be >= 1");
  if (!(rho_cap >= 1.0)) bad("rpca: rho_cap must be >= 1");
  if (max_iters < 1) bad("rpca: max_iters must be >= 1");
  if (!(tol > 0.0)) bad("rpca: tol must be > 0");
}

LowRankSplit rpca_mitigate(const ComplexMatrix& Y, const RpcaOptions& opts) {
  opts.validate();
  const EMatrix y = to_eigen(Y);
  if (!y.allFinite()) throw Error(Errc::non_finite, "rpca: input contains non-finite entries");
  const double y_norm = y.norm();

  LowRankSplit out;
  if (y_norm == 0.0) {
    out.J = from_eigen(EMatrix::Zero(y.rows(), y.cols()), Y);
    out.I = out.J;
    out.iters = 1;
    out.feas = 0.0;
    out.feas_history = {0.0};
    return out;
  }

  const double mu =
      opts.mu.value_or(1.0 / std::sqrt(static_cast<double>(std::max(Y.rows(), Y.cols()))));
  const double rho_start = opts.rho0.value_or(1.25 / spectral_norm_estimate(y));
  const double rho_max = opts.rho_cap * rho_start;
  double rho = rho_start;

  EMatrix J = EMatrix::Zero(y.rows(), y.cols());
  EMatrix I = EMatrix::Zero(y.rows(), y.cols());
  EMatrix xi = EMatrix::Zero(y.rows(), y.cols());
  out.converged = false;
  for (int k = 1; k <= opts.max_iters; ++k) {
    J = svt_eigen(y - I + xi / rho, 1.0 / rho);
    const EMatrix r = y - J + xi / rho;
    const double t = mu / rho;
    I = r.unaryExpr([t](const cdouble& x) { return soft_threshold(x, t); });
    const EMatrix resid = y - J - I;
    xi += rho * resid;
    const double feas = resid.norm() / y_norm;
    if (!std::isfinite(feas) || !J.allFinite() || !I.allFinite()) {
      throw Error(Errc::non_finite, "rpca: non-finite iterate at iteration " + std::to_string(k));
    }
    out.feas_history.push_back(feas);
    out.iters = k;
    out.feas = feas;
    if (feas <= opts.tol) {
      out.converged = true;
      break;
    }
    rho = std::min(rho * opts.rho_growth, rho_max);
  }
  out.J = from_eigen(J, Y);
  out.I = from_eigen(I, Y);
  out.sigma = singular_values(J);
  return out;
}

}  // namespace sarrfi
