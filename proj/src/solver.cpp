#include "minsudoku/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <type_traits>

namespace minsudoku {

namespace {

using u128 = unsigned __int128;

inline int ctz(std::uint32_t x) { return std::countr_zero(x); }
inline int ctz(u128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  return lo ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
}

// Digit-major bitboards: for each digit, the set of cells where it is still possible.
template <int K>
class BitSolver {
 public:
  static constexpr int kSide = K * K;
  static constexpr int kCells = kSide * kSide;
  using Bits = std::conditional_t<K == 2, std::uint32_t, u128>;

  struct State {
    std::array<Bits, kSide> digit;
    Bits unsolved;
    std::array<std::uint8_t, kCells> value;
  };

  static const BitSolver& instance() {
    static const BitSolver solver;
    return solver;
  }

  // False when two equal givens share a unit.
  bool load(std::span<const std::uint8_t> values, State& s) const {
    std::array<Bits, kSide> placed{}, blocked{};
    Bits filled = 0;
    s.value.fill(0);
    for (int c = 0; c < kCells; ++c) {
      if (values[c] == 0) continue;
      const int d = values[c] - 1;
      placed[d] |= bit(c);
      blocked[d] |= peers_[c];
      filled |= bit(c);
      s.value[c] = values[c];
    }
    for (int d = 0; d < kSide; ++d) {
      if (placed[d] & blocked[d]) return false;
      s.digit[d] = (all_ & ~filled & ~blocked[d]) | placed[d];
    }
    s.unsolved = all_ & ~filled;
    return true;
  }

  int count(State& s, int cap, std::span<std::uint8_t> first) const {
    int found = 0;
    search(s, cap, found, first);
    return found;
  }

 private:
  BitSolver() {
    const Board& b = Board::of(K);
    all_ = 0;
    for (int c = 0; c < kCells; ++c) all_ |= bit(c);
    for (int c = 0; c < kCells; ++c) {
      peers_[c] = 0;
      for (int p : b.peers(c)) peers_[c] |= bit(p);
    }
    for (int u = 0; u < 3 * kSide; ++u) {
      units_[u] = 0;
      for (int c : b.unit(u)) units_[u] |= bit(c);
    }
  }

  static Bits bit(int c) { return Bits{1} << c; }

  bool assign(State& s, int cell, int d) const {
    const Bits b = bit(cell);
    if (!(s.digit[d] & b)) return false;
    for (int e = 0; e < kSide; ++e) s.digit[e] &= ~b;
    s.digit[d] = (s.digit[d] & ~peers_[cell]) | b;
    s.unsolved &= ~b;
    s.value[cell] = static_cast<std::uint8_t>(d + 1);
    return true;
  }

  // Naked singles to a fixpoint, then one hidden-single sweep over the units, and
  // repeat. False on contradiction. Without the hidden singles some unsolvable
  // sparse puzzles take exponential time to refute.
  bool propagate(State& s) const {
    for (;;) {
      if (!s.unsolved) return true;
      Bits one = 0, two = 0;
      for (int d = 0; d < kSide; ++d) {
        const Bits m = s.digit[d] & s.unsolved;
        two |= one & m;
        one |= m;
      }
      if (s.unsolved & ~one) return false;
      Bits singles = one & ~two & s.unsolved;
      if (singles) {
        while (singles) {
          const int c = ctz(singles);
          singles &= singles - 1;
          const Bits b = bit(c);
          int d = 0;
          while (d < kSide && !(s.digit[d] & b)) ++d;
          if (d == kSide || !assign(s, c, d)) return false;
        }
        continue;
      }
      bool progress = false;
      for (int u = 0; u < 3 * kSide; ++u) {
        for (int d = 0; d < kSide; ++d) {
          const Bits m = s.digit[d] & units_[u];
          if (!m) return false;
          if ((m & (m - 1)) == 0 && (m & s.unsolved)) {
            if (!assign(s, ctz(m), d)) return false;
            progress = true;
          }
        }
      }
      if (!progress) return true;
    }
  }

  // Unsolved cell with the fewest candidates; prefers the first bivalue cell.
  int pick_cell(const State& s) const {
    Bits one = 0, two = 0, three = 0;
    for (int d = 0; d < kSide; ++d) {
      const Bits m = s.digit[d] & s.unsolved;
      three |= two & m;
      two |= one & m;
      one |= m;
    }
    const Bits bivalue = two & ~three & s.unsolved;
    if (bivalue) return ctz(bivalue);
    int best = -1, best_count = kSide + 1;
    for (Bits rest = s.unsolved; rest; rest &= rest - 1) {
      const int c = ctz(rest);
      int n = 0;
      for (int d = 0; d < kSide; ++d) n += (s.digit[d] >> c) & 1;
      if (n < best_count) {
        best = c;
        best_count = n;
      }
    }
    return best;
  }

  void search(State& s, int cap, int& found, std::span<std::uint8_t> first) const {
    if (!propagate(s)) return;
    if (!s.unsolved) {
      if (found == 0 && !first.empty()) std::copy(s.value.begin(), s.value.end(), first.begin());
      ++found;
      return;
    }
    const int c = pick_cell(s);
    for (int d = 0; d < kSide && found < cap; ++d) {
      if (!((s.digit[d] >> c) & 1)) continue;
      State next = s;
      if (assign(next, c, d)) search(next, cap, found, first);
    }
  }

  Bits all_;
  std::array<Bits, kCells> peers_;
  std::array<Bits, 3 * kSide> units_;
};

// Row-major backtracking fill choosing uniformly among the values still allowed by
// the row, column and box of each cell.
template <int K>
class RandomFiller {
 public:
  static constexpr int kSide = K * K;
  static constexpr int kCells = kSide * kSide;

  RandomFiller(Rng& rng, std::span<std::uint8_t> out) : rng_(rng), out_(out) {
    row_.fill(0);
    col_.fill(0);
    box_.fill(0);
  }

  bool fill(int cell) {
    if (cell == kCells) return true;
    const int r = cell / kSide, c = cell % kSide, b = (r / K) * K + c / K;
    unsigned open = ((1u << kSide) - 1) & ~(row_[r] | col_[c] | box_[b]);
    while (open) {
      unsigned pick = open;
      for (int skip = uniform_below(rng_, std::popcount(open)); skip > 0; --skip) pick &= pick - 1;
      const unsigned bit = pick & -pick;
      open &= ~bit;
      row_[r] |= bit;
      col_[c] |= bit;
      box_[b] |= bit;
      out_[cell] = static_cast<std::uint8_t>(std::countr_zero(bit) + 1);
      if (fill(cell + 1)) return true;
      row_[r] &= ~bit;
      col_[c] &= ~bit;
      box_[b] &= ~bit;
    }
    return false;
  }

 private:
  Rng& rng_;
  std::span<std::uint8_t> out_;
  std::array<unsigned, kSide> row_, col_, box_;
};

template <int K>
int count_with(std::span<const std::uint8_t> values, int cap, std::span<std::uint8_t> solution) {
  const auto& solver = BitSolver<K>::instance();
  typename BitSolver<K>::State s;
  if (!solver.load(values, s)) return 0;
  return solver.count(s, cap, solution);
}

void require_shidoku(const Board& board, const char* what) {
  if (board.box_side() != 2) {
    throw std::invalid_argument(std::string(what) +
                                " is only feasible on the 4x4 board; the 9x9 board has "
                                "6,670,903,752,021,072,936,960 complete grids");
  }
}

}  // namespace

namespace kernel {

int count_solutions(int box_side, std::span<const std::uint8_t> values, int cap,
                    std::span<std::uint8_t> solution) {
  return box_side == 2 ? count_with<2>(values, cap, solution) : count_with<3>(values, cap, solution);
}

void random_fill(int box_side, Rng& rng, std::span<std::uint8_t> out) {
  // an empty board always has a completion
  if (box_side == 2) {
    RandomFiller<2>(rng, out).fill(0);
  } else {
    RandomFiller<3>(rng, out).fill(0);
  }
}

}  // namespace kernel

int count_solutions(const Puzzle& p, int cap) {
  return kernel::count_solutions(p.board().box_side(), p.values(), cap);
}

std::optional<Grid> unique_solution(const Puzzle& p) {
  std::vector<std::uint8_t> solution(p.board().cells());
  if (kernel::count_solutions(p.board().box_side(), p.values(), 2, solution) != 1) return std::nullopt;
  return Grid(Puzzle(p.board(), solution));
}

bool is_minimal(const Puzzle& p) {
  const int k = p.board().box_side();
  std::array<std::uint8_t, Board::kMaxCells> work{};
  const auto cells = static_cast<std::size_t>(p.board().cells());
  std::span<std::uint8_t> buf(work.data(), cells);
  std::copy(p.values().begin(), p.values().end(), buf.begin());
  if (kernel::count_solutions(k, buf, 2) != 1) return false;
  for (std::size_t c = 0; c < cells; ++c) {
    if (buf[c] == 0) continue;
    const std::uint8_t v = buf[c];
    buf[c] = 0;
    const int n = kernel::count_solutions(k, buf, 2);
    buf[c] = v;
    if (n == 1) return false;
  }
  return true;
}

Grid random_complete_grid(Rng& rng, const Board& board) {
  std::vector<std::uint8_t> values(board.cells());
  kernel::random_fill(board.box_side(), rng, values);
  return Grid(Puzzle(board, values));
}

std::vector<Grid> enumerate_complete_grids(const Board& board) {
  require_shidoku(board, "complete-grid enumeration");
  std::vector<Grid> grids;
  std::vector<std::uint8_t> values(board.cells(), 0);
  // Plain cell-order backtracking, independent of the bitboard kernel.
  auto fits = [&](int cell, std::uint8_t v) {
    for (int p : board.peers(cell)) {
      if (values[p] == v) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int cell) -> void {
    if (cell == board.cells()) {
      grids.emplace_back(Puzzle(board, values));
      return;
    }
    for (std::uint8_t v = 1; v <= board.side(); ++v) {
      if (!fits(cell, v)) continue;
      values[cell] = v;
      self(self, cell + 1);
      values[cell] = 0;
    }
  };
  rec(rec, 0);
  return grids;
}

std::vector<Puzzle> minimal_subpuzzles(const Grid& grid) {
  const Board& board = grid.board();
  require_shidoku(board, "minimal sub-puzzle enumeration");
  const int cells = board.cells();
  const std::uint32_t full = (1u << cells) - 1;
  // uniqueness memo over clue subsets: -1 unknown, 0 several solutions, 1 unique
  std::vector<std::int8_t> unique(std::size_t{1} << cells, -1);
  std::vector<bool> visited(std::size_t{1} << cells, false);
  std::array<std::uint8_t, 16> buf{};

  auto is_unique = [&](std::uint32_t mask) {
    auto& memo = unique[mask];
    if (memo < 0) {
      for (int c = 0; c < cells; ++c) buf[c] = (mask >> c) & 1 ? grid.at(c) : 0;
      memo = kernel::count_solutions(2, std::span<const std::uint8_t>(buf.data(), cells), 2) == 1;
    }
    return memo == 1;
  };

  std::vector<std::uint32_t> found;
  std::vector<std::uint32_t> stack{full};
  visited[full] = true;
  while (!stack.empty()) {
    const std::uint32_t mask = stack.back();
    stack.pop_back();
    bool minimal = true;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const std::uint32_t sub = mask & ~(rest & -rest);
      if (!is_unique(sub)) continue;
      minimal = false;
      if (!visited[sub]) {
        visited[sub] = true;
        stack.push_back(sub);
      }
    }
    if (minimal) found.push_back(mask);
  }
  std::sort(found.begin(), found.end());

  std::vector<Puzzle> out;
  out.reserve(found.size());
  for (std::uint32_t mask : found) {
    Puzzle p(board);
    for (int c = 0; c < cells; ++c) {
      if ((mask >> c) & 1) p.place(c, grid.at(c));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Puzzle> enumerate_all_minimals(const Board& board, Exec exec) {
  require_shidoku(board, "minimal-puzzle enumeration");
  const auto grids = enumerate_complete_grids(board);
  std::vector<std::vector<Puzzle>> per_grid(grids.size());
  const int n = static_cast<int>(grids.size());
  if (exec.mode == Exec::Mode::openmp) {
#pragma omp parallel for schedule(dynamic) num_threads(exec.threads())
    for (int i = 0; i < n; ++i) per_grid[i] = minimal_subpuzzles(grids[i]);
  } else {
    for (int i = 0; i < n; ++i) per_grid[i] = minimal_subpuzzles(grids[i]);
  }
  std::vector<Puzzle> all;
  for (auto& v : per_grid) {
    for (auto& p : v) all.push_back(std::move(p));
  }
  return all;
}

}  // namespace minsudoku
