#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minsudoku {

// Geometry of a k^2 x k^2 board. Only k = 2 (shidoku) and k = 3 are supported.
// Instances are created once per k and shared; obtain them through Board::of.
class Board {
 public:
  static constexpr int kMaxSide = 9;
  static constexpr int kMaxCells = 81;

  static const Board& of(int box_side);

  int box_side() const { return k_; }
  int side() const { return side_; }
  int cells() const { return cells_; }
  int units() const { return 3 * side_; }
  int peer_count() const { return 3 * side_ - 2 * k_ - 1; }

  int row_of(int cell) const { return cell / side_; }
  int col_of(int cell) const { return cell % side_; }
  int box_of(int cell) const { return box_[cell]; }
  int cell_at(int row, int col) const { return row * side_ + col; }

  // Units are numbered rows [0, side), columns [side, 2 side), boxes [2 side, 3 side).
  std::span<const int> unit(int u) const { return {unit_cells_.data() + u * side_, static_cast<std::size_t>(side_)}; }
  std::array<int, 3> units_of(int cell) const {
    return {row_of(cell), side_ + col_of(cell), 2 * side_ + box_of(cell)};
  }
  std::span<const int> peers(int cell) const {
    const auto n = static_cast<std::size_t>(peer_count());
    return {peer_cells_.data() + cell * n, n};
  }
  bool share_unit(int a, int b) const {
    return row_of(a) == row_of(b) || col_of(a) == col_of(b) || box_of(a) == box_of(b);
  }

  bool operator==(const Board& other) const { return k_ == other.k_; }

 private:
  explicit Board(int box_side);

  int k_;
  int side_;
  int cells_;
  std::vector<int> box_;
  std::vector<int> unit_cells_;
  std::vector<int> peer_cells_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partial assignment of values 1..side to cells; 0 marks an empty cell.
class Puzzle {
 public:
  explicit Puzzle(const Board& board);
  // Throws ParseError when the values are out of range or two equal values share a unit.
  Puzzle(const Board& board, std::span<const std::uint8_t> values);

  const Board& board() const { return *board_; }
  std::uint8_t at(int cell) const { return values_[cell]; }
  bool empty_at(int cell) const { return values_[cell] == 0; }
  std::span<const std::uint8_t> values() const { return values_; }
  int clue_count() const;
  bool complete() const { return clue_count() == board_->cells(); }

  // Placing a value that conflicts with a peer clue throws ParseError.
  void place(int cell, std::uint8_t value);
  void erase(int cell) { values_[cell] = 0; }
  Puzzle without(int cell) const {
    Puzzle p = *this;
    p.erase(cell);
    return p;
  }

  bool operator==(const Puzzle& other) const {
    return *board_ == *other.board_ && values_ == other.values_;
  }

 private:
  const Board* board_;
  std::vector<std::uint8_t> values_;
};

// A complete, valid solution grid.
class Grid {
 public:
  // Throws ParseError unless the puzzle is complete and consistent.
  explicit Grid(Puzzle puzzle);

  const Puzzle& puzzle() const { return puzzle_; }
  const Board& board() const { return puzzle_.board(); }
  std::uint8_t at(int cell) const { return puzzle_.at(cell); }

  bool operator==(const Grid& other) const { return puzzle_ == other.puzzle_; }

 private:
  Puzzle puzzle_;
};

// A (value, row, column) triple; all three components are 1-based.
struct Candidate {
  int value;
  int row;
  int col;

  bool operator==(const Candidate&) const = default;
  auto operator<=>(const Candidate&) const = default;
};

// Direct contradiction between two distinct candidates: same cell with different
// values, or same value in two cells sharing a unit.
bool linked(const Candidate& a, const Candidate& b, const Board& board);

std::vector<int> peers(int cell, const Board& board);

// Row-major line, '.' for empty cells, '1'..'9' for values.
Puzzle parse_puzzle(std::string_view text, const Board& board);
std::string format_puzzle(const Puzzle& p);

// Infers the board from the line length (16 or 81).
Puzzle parse_puzzle(std::string_view text);

}  // namespace minsudoku
