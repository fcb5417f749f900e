#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minsudoku/board.hpp"
#include "minsudoku/rng.hpp"

namespace minsudoku {

enum class GeneratorKind { bottom_up, top_down, controlled_bias };

std::string_view to_string(GeneratorKind kind);
// Accepts "bottom-up", "top-down", "ctr-bias". Throws std::invalid_argument.
GeneratorKind parse_generator_kind(std::string_view name);

struct StreamTag {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

struct GenerationRecord {
  Puzzle puzzle;
  GeneratorKind kind;
  std::uint64_t grids_consumed = 1;
  StreamTag provenance;
};

// Supplies complete grids to the top-down and controlled-bias generators. `draw`
// writes one grid into a cells()-long buffer and must be callable concurrently
// with distinct Rng objects.
class GridSource {
 public:
  using DrawFn = std::function<void(Rng&, std::span<std::uint8_t>)>;

  GridSource(const Board& board, std::string description, DrawFn draw)
      : board_(&board), description_(std::move(description)), draw_(std::move(draw)) {}

  // Fresh randomized backtracking fill per draw.
  static GridSource backtracking(const Board& board);
  // Uniform draw from a fixed list (e.g. all 288 grids of the 4x4 board, or a file).
  static GridSource catalog(std::vector<Grid> grids, std::string description);
  // Uniform over all 288 grids on the 4x4 board, backtracking otherwise.
  static GridSource standard(const Board& board);

  const Board& board() const { return *board_; }
  const std::string& description() const { return description_; }
  void draw(Rng& rng, std::span<std::uint8_t> out) const { draw_(rng, out); }

 private:
  const Board* board_;
  std::string description_;
  DrawFn draw_;
};

// Adds random (cell, value) pairs to an empty board until the puzzle is minimal.
GenerationRecord bottom_up_one(Rng& rng, const Board& board);

// Deletes random clues from `grid`, reinserting any whose removal breaks
// uniqueness, until no clue can be removed.
GenerationRecord top_down_one(Rng& rng, const Grid& grid);

// Like top-down, but a deletion that breaks uniqueness discards the whole grid
// and restarts from a fresh one drawn from `source`.
GenerationRecord controlled_bias_one(Rng& rng, const GridSource& source);

namespace detail {

// Deleting order[0..k) from `grid` leaves a puzzle whose uniqueness is monotone
// in k. Returns the largest k that still leaves a unique solution.
int last_unique_prefix(int box_side, std::span<const std::uint8_t> grid, std::span<const int> order);

}  // namespace detail

}  // namespace minsudoku
