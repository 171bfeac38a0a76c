// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "sarrfi/types.hpp"

namespace sarrfi {

/// Best rank-K approximation J = sum_{k<=K} sigma_k u_k v_k^H and I = Y - J.
/// `sigma` holds the full spectrum. Throws Errc::invalid_argument unless
/// 1 <= K <= min(rows, cols).
LowRankSplit pca_mitigate(const ComplexMatrix& Y, std::size_t K);

/// x * max(1 - t/|x|, 0).
cdouble soft_threshold(cdouble x, double t);

/// U diag(max(sigma - t, 0)) V^H.
ComplexMatrix svt(const ComplexMatrix& m, double t);

struct RpcaOptions {
  std::optional<double> mu;    ///< default 1/sqrt(max(rows, cols)) of Y
  std::optional<double> rho0;  ///< default 1.25 / sigma_1(Y)
  double rho_growth = 1.6;
  double rho_cap = 1e7;        ///< rho is capped at rho_cap * rho0
  int max_iters = 40;
  double tol = 1e-7;           ///< on ||Y - J - I||_F / ||Y||_F

  /// Throws Errc::invalid_config on out-of-range values.
  void validate() const;
};

/// Principal component pursuit min ||J||_* + mu ||I||_1 s.t. J + I = Y by
/// the inexact augmented Lagrange method.
LowRankSplit rpca_mitigate(const ComplexMatrix& Y, const RpcaOptions& opts = {});

}  // namespace sarrfi
