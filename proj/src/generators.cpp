#include "minsudoku/generators.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <numeric>
#include <stdexcept>

#include "minsudoku/solver.hpp"

namespace minsudoku {

namespace {

using CellBuffer = std::array<std::uint8_t, Board::kMaxCells>;

bool unique(int box_side, std::span<const std::uint8_t> values) {
  return kernel::count_solutions(box_side, values, 2) == 1;
}

// Random top-down reduction of a unique puzzle. Clues found essential stay
// essential on every sub-puzzle, so they are never tested again.
void reduce_to_minimal(Rng& rng, const Board& board, std::span<std::uint8_t> values) {
  const int k = board.box_side();
  std::bitset<Board::kMaxCells> essential;
  std::array<int, Board::kMaxCells> open{};
  for (;;) {
    int n = 0;
    for (int c = 0; c < board.cells(); ++c) {
      if (values[c] != 0 && !essential[c]) open[n++] = c;
    }
    bool deleted = false;
    // draw without replacement until a deletion keeps the solution unique
    while (n > 0) {
      const int i = uniform_below(rng, n);
      const int cell = open[i];
      open[i] = open[--n];
      const std::uint8_t v = values[cell];
      values[cell] = 0;
      if (unique(k, values)) {
        deleted = true;
        break;
      }
      values[cell] = v;
      essential.set(cell);
    }
    if (!deleted) return;
  }
}

bool minimal_given_unique(int box_side, std::span<std::uint8_t> values) {
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (values[c] == 0) continue;
    const std::uint8_t v = values[c];
    values[c] = 0;
    const bool still_unique = unique(box_side, values);
    values[c] = v;
    if (still_unique) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::bottom_up: return "bottom-up";
    case GeneratorKind::top_down: return "top-down";
    case GeneratorKind::controlled_bias: return "ctr-bias";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "bottom-up") return GeneratorKind::bottom_up;
  if (name == "top-down") return GeneratorKind::top_down;
  if (name == "ctr-bias") return GeneratorKind::controlled_bias;
  throw std::invalid_argument("unknown generator kind '" + std::string(name) +
                              "' (expected bottom-up, top-down or ctr-bias)");
}

GridSource GridSource::backtracking(const Board& board) {
  const int k = board.box_side();
  return GridSource(board, "backtracking", [k](Rng& rng, std::span<std::uint8_t> out) {
    kernel::random_fill(k, rng, out);
  });
}

GridSource GridSource::catalog(std::vector<Grid> grids, std::string description) {
  if (grids.empty()) throw std::invalid_argument("empty grid catalog");
  const Board& board = grids.front().board();
  auto shared = std::make_shared<const std::vector<Grid>>(std::move(grids));
  return GridSource(board, std::move(description), [shared](Rng& rng, std::span<std::uint8_t> out) {
    const Grid& g = (*shared)[uniform_below(rng, static_cast<int>(shared->size()))];
    std::copy(g.puzzle().values().begin(), g.puzzle().values().end(), out.begin());
  });
}

GridSource GridSource::standard(const Board& board) {
  if (board.box_side() == 2) return catalog(enumerate_complete_grids(board), "all-grids");
  return backtracking(board);
}

GenerationRecord bottom_up_one(Rng& rng, const Board& board) {
  const int k = board.box_side();
  const int cells = board.cells();
  const int side = board.side();
  CellBuffer buf{};
  std::span<std::uint8_t> values(buf.data(), static_cast<std::size_t>(cells));
  // (cell, value) pairs that led to a contradiction from the current puzzle
  std::bitset<Board::kMaxCells * Board::kMaxSide> dead;
  std::vector<int> pairs;
  pairs.reserve(static_cast<std::size_t>(cells * side));

  for (;;) {
    pairs.clear();
    for (int c = 0; c < cells; ++c) {
      if (values[c] != 0) continue;
      unsigned used = 0;
      for (int p : board.peers(c)) used |= 1u << values[p];
      for (int v = 1; v <= side; ++v) {
        const int pair = c * side + (v - 1);
        if (!(used >> v & 1) && !dead[pair]) pairs.push_back(pair);
      }
    }
    if (pairs.empty()) throw std::logic_error("bottom-up generator exhausted all additions");
    const int pair = pairs[uniform_below(rng, static_cast<int>(pairs.size()))];
    const int cell = pair / side;
    values[cell] = static_cast<std::uint8_t>(pair % side + 1);

    const int solutions = kernel::count_solutions(k, values, 2);
    if (solutions == 0) {
      values[cell] = 0;
      dead.set(pair);
      continue;
    }
    if (solutions >= 2) {
      dead.reset();
      continue;
    }
    // A unique puzzle reached by addition may carry clues made redundant by the
    // last one; those are removed in random order.
    if (!minimal_given_unique(k, values)) reduce_to_minimal(rng, board, values);
    return {Puzzle(board, values), GeneratorKind::bottom_up, 1, {}};
  }
}

GenerationRecord top_down_one(Rng& rng, const Grid& grid) {
  const Board& board = grid.board();
  CellBuffer buf{};
  std::span<std::uint8_t> values(buf.data(), static_cast<std::size_t>(board.cells()));
  std::copy(grid.puzzle().values().begin(), grid.puzzle().values().end(), values.begin());
  reduce_to_minimal(rng, board, values);
  return {Puzzle(board, values), GeneratorKind::top_down, 1, {}};
}

namespace detail {

int last_unique_prefix(int box_side, std::span<const std::uint8_t> grid, std::span<const int> order) {
  const int cells = static_cast<int>(grid.size());
  CellBuffer buf{};
  std::span<std::uint8_t> work(buf.data(), grid.size());
  auto unique_after = [&](int deleted) {
    std::copy(grid.begin(), grid.end(), work.begin());
    for (int i = 0; i < deleted; ++i) work[order[i]] = 0;
    return unique(box_side, work);
  };

  // One deletion from a complete grid is always forced back; the empty board is not unique.
  int lo = 1, hi = cells;
  // Gallop down from a clue count that is almost always unique, then bisect. Probing
  // sparse puzzles is the expensive case, so descend in small steps first.
  const int step = std::max(1, cells / 13);
  for (int k = std::max(lo + 1, cells / 4); k < hi; k += step) {
    if (unique_after(k)) {
      lo = k;
    } else {
      hi = k;
      break;
    }
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (unique_after(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace detail

GenerationRecord controlled_bias_one(Rng& rng, const GridSource& source) {
  const Board& board = source.board();
  const int k = board.box_side();
  const int cells = board.cells();
  CellBuffer grid_buf{}, work_buf{};
  std::span<std::uint8_t> grid(grid_buf.data(), static_cast<std::size_t>(cells));
  std::span<std::uint8_t> work(work_buf.data(), static_cast<std::size_t>(cells));
  std::array<int, Board::kMaxCells> order_buf{};
  std::span<int> order(order_buf.data(), static_cast<std::size_t>(cells));

  for (std::uint64_t grids = 1;; ++grids) {
    source.draw(rng, grid);
    // A uniformly random deletion order is the same as choosing a uniform remaining
    // clue at every step of the walk.
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    // The walk stops at the first multi-solution puzzle, and a minimal puzzle on the
    // path must be followed by one. So the only candidate output is the last unique
    // puzzle of the path; it is printed iff it is minimal.
    const int deleted = detail::last_unique_prefix(k, grid, order);
    std::copy(grid.begin(), grid.end(), work.begin());
    for (int i = 0; i < deleted; ++i) work[order[i]] = 0;

    bool minimal = true;
    // order[deleted] is already known to break uniqueness.
    for (int i = deleted + 1; i < cells && minimal; ++i) {
      const int c = order[i];
      const std::uint8_t v = work[c];
      work[c] = 0;
      minimal = !unique(k, work);
      work[c] = v;
    }
    if (minimal) return {Puzzle(board, work), GeneratorKind::controlled_bias, grids, {}};
  }
}

}  // namespace minsudoku
