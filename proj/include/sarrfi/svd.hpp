// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

using EMatrix = Eigen::MatrixXcd;  // column-major working matrix
using RowMajorMap = Eigen::Map<Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstRowMajorMap =
    Eigen::Map<const Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

inline ConstRowMajorMap as_eigen(const ComplexMatrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}
inline RowMajorMap as_eigen(ComplexMatrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

/// Thin decomposition m = U diag(sigma) V^H with sigma descending.
struct SvdResult {
  EMatrix U;                  ///< rows x r
  std::vector<double> sigma;  ///< r = min(rows, cols) (or the requested k)
  EMatrix V;                  ///< cols x r
};

/// Full thin SVD (LAPACK divide and conquer). Throws Errc::non_finite on
/// non-finite input or when the decomposition does not converge.
SvdResult svd(const EMatrix& m);
SvdResult svd(const ComplexMatrix& m);

/// Singular values only.
std::vector<double> singular_values(const EMatrix& m);
std::vector<double> singular_values(const ComplexMatrix& m);

/// Leading k singular triplets by seeded randomized range finding with
/// `power_iters` subspace iterations. Deterministic for a given seed.
SvdResult truncated_svd(const EMatrix& m, std::size_t k, std::uint64_t seed,
                        std::size_t oversample = 10, int power_iters = 2);

/// Largest singular value by power iteration on m^H m.
double spectral_norm_estimate(const EMatrix& m, int iters = 30);

EMatrix to_eigen(const ComplexMatrix& m);
/// Copies an Eigen matrix into a ComplexMatrix carrying the axes and tag of `like`.
ComplexMatrix from_eigen(const EMatrix& e, const ComplexMatrix& like);

}  // namespace sarrfi
