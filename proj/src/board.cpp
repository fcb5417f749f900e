#include "minsudoku/board.hpp"

#include <algorithm>

namespace minsudoku {

const Board& Board::of(int box_side) {
  static const Board shidoku(2);
  static const Board sudoku(3);
  if (box_side == 2) return shidoku;
  if (box_side == 3) return sudoku;
  throw std::invalid_argument("unsupported box side " + std::to_string(box_side) + " (expected 2 or 3)");
}

Board::Board(int box_side) : k_(box_side), side_(box_side * box_side), cells_(side_ * side_) {
  box_.resize(cells_);
  for (int c = 0; c < cells_; ++c) box_[c] = (row_of(c) / k_) * k_ + col_of(c) / k_;

  unit_cells_.resize(static_cast<std::size_t>(3 * side_ * side_));
  for (int i = 0; i < side_; ++i) {
    for (int j = 0; j < side_; ++j) {
      unit_cells_[i * side_ + j] = cell_at(i, j);
      unit_cells_[(side_ + i) * side_ + j] = cell_at(j, i);
      const int r = (i / k_) * k_ + j / k_;
      const int c = (i % k_) * k_ + j % k_;
      unit_cells_[(2 * side_ + i) * side_ + j] = cell_at(r, c);
    }
  }

  peer_cells_.reserve(static_cast<std::size_t>(cells_ * peer_count()));
  for (int c = 0; c < cells_; ++c) {
    for (int o = 0; o < cells_; ++o) {
      if (o != c && share_unit(c, o)) peer_cells_.push_back(o);
    }
  }
}

Puzzle::Puzzle(const Board& board) : board_(&board), values_(board.cells(), 0) {}

Puzzle::Puzzle(const Board& board, std::span<const std::uint8_t> values) : Puzzle(board) {
  if (static_cast<int>(values.size()) != board.cells()) throw ParseError("wrong number of cells");
  for (int c = 0; c < board.cells(); ++c) {
    if (values[c] != 0) place(c, values[c]);
  }
}

int Puzzle::clue_count() const {
  return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](std::uint8_t v) { return v != 0; }));
}

void Puzzle::place(int cell, std::uint8_t value) {
  if (value < 1 || value > board_->side()) throw ParseError("value out of range");
  for (int p : board_->peers(cell)) {
    if (values_[p] == value) {
      throw ParseError("inconsistent clues: value " + std::to_string(value) + " repeated in a unit");
    }
  }
  values_[cell] = value;
}

Grid::Grid(Puzzle puzzle) : puzzle_(std::move(puzzle)) {
  // Puzzle construction already rejects unit conflicts; completeness closes it.
  if (!puzzle_.complete()) throw ParseError("grid is not complete");
}

bool linked(const Candidate& a, const Candidate& b, const Board& board) {
  const int ca = board.cell_at(a.row - 1, a.col - 1);
  const int cb = board.cell_at(b.row - 1, b.col - 1);
  if (a.value != b.value) return ca == cb;
  return ca != cb && board.share_unit(ca, cb);
}

std::vector<int> peers(int cell, const Board& board) {
  auto p = board.peers(cell);
  return {p.begin(), p.end()};
}

Puzzle parse_puzzle(std::string_view text, const Board& board) {
  if (static_cast<int>(text.size()) != board.cells()) {
    throw ParseError("expected " + std::to_string(board.cells()) + " characters, got " +
                     std::to_string(text.size()));
  }
  Puzzle p(board);
  for (int c = 0; c < board.cells(); ++c) {
    const char ch = text[c];
    if (ch == '.') continue;
    if (ch < '1' || ch > '0' + board.side()) {
      throw ParseError(std::string("invalid character '") + ch + "'");
    }
    p.place(c, static_cast<std::uint8_t>(ch - '0'));
  }
  return p;
}

Puzzle parse_puzzle(std::string_view text) {
  if (text.size() == 16) return parse_puzzle(text, Board::of(2));
  if (text.size() == 81) return parse_puzzle(text, Board::of(3));
  throw ParseError("cannot infer board from line of length " + std::to_string(text.size()));
}

std::string format_puzzle(const Puzzle& p) {
  std::string out(p.board().cells(), '.');
  for (int c = 0; c < p.board().cells(); ++c) {
    if (p.at(c) != 0) out[c] = static_cast<char>('0' + p.at(c));
  }
  return out;
}

}  // namespace minsudoku
