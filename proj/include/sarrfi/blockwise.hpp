// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "sarrfi/types.hpp"

namespace sarrfi {

struct Tile {
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Row-major list of non-overlapping tiles covering rows x cols; edge tiles are smaller.
std::vector<Tile> make_tiles(std::size_t rows, std::size_t cols, std::size_t block_rows,
                             std::size_t block_cols);

using TileMitigator = std::function<LowRankSplit(const ComplexMatrix&)>;

struct BlockwiseResult {
  LowRankSplit split;
  std::vector<Tile> tiles;
  std::vector<LowRankSplit> per_tile;  ///< diagnostics; J and I are left empty
};

/// Applies f to every tile of Y and reassembles J and I. Tiles may run in
/// parallel; reassembly order is fixed. A failure in a tile is rethrown with
/// the tile's coordinates prepended and the original error code kept.
BlockwiseResult blockwise(const ComplexMatrix& Y, std::size_t block_rows, std::size_t block_cols,
                          const TileMitigator& f);

}  // namespace sarrfi
