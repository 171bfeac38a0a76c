// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace sarrfi {

/// Worker count used by row/column loops and FFTW plans. Defaults to 1.
void set_threads(int n);
int threads();

/// Runs body(i) for i in [0, n), split into contiguous chunks across threads().
/// The first exception thrown by any chunk is rethrown after all chunks join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sarrfi
