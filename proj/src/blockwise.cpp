// SPDX-License-Identifier: Apache-2.0
#include "sarrfi/blockwise.hpp"

#include <algorithm>
#include <string>

#include "sarrfi/parallel.hpp"

namespace sarrfi {

std::vector<Tile> make_tiles(std::size_t rows, std::size_t cols, std::size_t block_rows,
                             std::size_t block_cols) {
  if (block_rows < 2 || block_cols < 2) {
    throw Error(Errc::invalid_argument, "blockwise: block dimensions must be >= 2");
  }
  std::vector<Tile> tiles;
  for (std::size_t r = 0; r < rows; r += block_rows) {
    for (std::size_t c = 0; c < cols; c += block_cols) {
      tiles.push_back({r, c, std::min(block_rows, rows - r), std::min(block_cols, cols - c)});
    }
  }
  return tiles;
}

BlockwiseResult blockwise(const ComplexMatrix& Y, std::size_t block_rows, std::size_t block_cols,
                          const TileMitigator& f) {
  BlockwiseResult out;
  out.tiles = make_tiles(Y.rows(), Y.cols(), block_rows, block_cols);
  out.split.J = ComplexMatrix(Y.rows(), Y.cols(), Y.axis_eta(), Y.axis_tau(), Y.domain());
  out.split.I = out.split.J;
  out.split.converged = true;
  out.per_tile.resize(out.tiles.size());

  parallel_for(out.tiles.size(), [&](std::size_t k) {
    const Tile& t = out.tiles[k];
    const ComplexMatrix tile = Y.block(t.row0, t.col0, t.rows, t.cols);
    LowRankSplit s;
    try {
      s = f(tile);
      if (s.J.rows() != t.rows || s.J.cols() != t.cols || s.I.rows() != t.rows ||
          s.I.cols() != t.cols) {
        throw Error(Errc::shape_mismatch, "mitigator returned a differently shaped split");
      }
    } catch (const Error& e) {
      throw Error(e.code(), "tile (" + std::to_string(t.row0) + ", " + std::to_string(t.col0) +
                                ") " + std::to_string(t.rows) + "x" + std::to_string(t.cols) +
                                ": " + e.what());
    }
    // Tiles are disjoint, so concurrent writes never overlap.
    out.split.J.set_block(t.row0, t.col0, s.J);
    out.split.I.set_block(t.row0, t.col0, s.I);
    s.J = ComplexMatrix();
    s.I = ComplexMatrix();
    out.per_tile[k] = std::move(s);
  });

  double total_iters = 0;
  for (const auto& s : out.per_tile) {
    total_iters = std::max<double>(total_iters, s.iters);
    out.split.converged = out.split.converged && s.converged;
  }
  out.split.iters = static_cast<int>(total_iters);
  const double y_norm = Y.frobenius_norm();
  if (y_norm > 0.0) {
    ComplexMatrix r = Y;
    r -= out.split.J;
    r -= out.split.I;
    out.split.feas = r.frobenius_norm() / y_norm;
  }
  return out;
}

}  // namespace sarrfi
