#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minsudoku/board.hpp"
#include "minsudoku/exec.hpp"

namespace minsudoku {

// Fixed-capacity bitset over candidate indices (up to 9 * 81 = 729).
class CandSet {
 public:
  static constexpr int kWords = 12;

  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool any() const {
    for (auto x : w_) {
      if (x) return true;
    }
    return false;
  }
  int count() const {
    int n = 0;
    for (auto x : w_) n += std::popcount(x);
    return n;
  }
  CandSet& operator&=(const CandSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  CandSet& operator|=(const CandSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  CandSet& remove(const CandSet& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend CandSet operator&(CandSet a, const CandSet& b) { return a &= b; }
  bool operator==(const CandSet&) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (int i = 0; i < kWords; ++i) {
      for (std::uint64_t x = w_[i]; x; x &= x - 1) f(i * 64 + std::countr_zero(x));
    }
  }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

// Candidate numbering and the four Sudoku variable families: a cell holds a value, a
// (row, value) holds a column, a (column, value) holds a row, a (box, value) holds a
// position. Candidate index = (value - 1) * cells + cell, i.e. lexicographic in (n, r, c).
class CandidateSpace {
 public:
  static const CandidateSpace& of(const Board& board);

  const Board& board() const { return *board_; }
  int size() const { return board_->side() * board_->cells(); }
  int variable_count() const { return 4 * board_->cells(); }

  int index(const Candidate& c) const {
    return (c.value - 1) * board_->cells() + board_->cell_at(c.row - 1, c.col - 1);
  }
  Candidate candidate(int index) const {
    const int cell = cell_of(index);
    return {value_of(index), board_->row_of(cell) + 1, board_->col_of(cell) + 1};
  }
  int cell_of(int index) const { return index % board_->cells(); }
  int value_of(int index) const { return index / board_->cells() + 1; }

  const std::array<int, 4>& variables_of(int index) const { return vars_of_[index]; }
  std::span<const int> members(int variable) const {
    const auto side = static_cast<std::size_t>(board_->side());
    return {members_.data() + variable * side, side};
  }
  // All candidates sharing a variable with `index`, excluding itself.
  const CandSet& links(int index) const { return links_[index]; }

 private:
  explicit CandidateSpace(const Board& board);

  const Board* board_;
  std::vector<std::array<int, 4>> vars_of_;
  std::vector<int> members_;
  std::vector<CandSet> links_;
};

// Knowledge state: asserted values plus the candidates not yet known impossible.
// Candidates of asserted cells are not kept; once a value is asserted every
// candidate linked to it is gone.
class ResolutionState {
 public:
  const Board& board() const { return space_->board(); }
  const CandidateSpace& space() const { return *space_; }

  bool has(const Candidate& c) const { return open_.test(space_->index(c)); }
  bool has_index(int index) const { return open_.test(index); }
  const CandSet& open() const { return open_; }
  int candidate_count() const { return open_.count(); }
  std::uint8_t value_at(int cell) const { return values_[cell]; }
  int unasserted_cells() const;
  bool solved() const { return unasserted_cells() == 0; }
  bool contradictory() const { return contradiction_; }

  void eliminate(int index) { open_.reset(index); }
  void assert_value(int index);

  bool operator==(const ResolutionState& o) const {
    return space_ == o.space_ && values_ == o.values_ && open_ == o.open_ && contradiction_ == o.contradiction_;
  }

 private:
  friend ResolutionState init_state(const Puzzle& p);
  friend ResolutionState apply_l0(ResolutionState s);

  explicit ResolutionState(const CandidateSpace& space)
      : space_(&space), values_(space.board().cells(), 0) {}

  const CandidateSpace* space_;
  std::vector<std::uint8_t> values_;
  CandSet open_;
  bool contradiction_ = false;
};

// Clues asserted; every candidate linked to a clue removed. Puzzle already
// guarantees consistent clues.
ResolutionState init_state(const Puzzle& p);

// Fixpoint of: assert any variable (of any of the four families) with a single
// candidate left, removing the candidates linked to it. Marks the state
// contradictory when some unsatisfied variable has no candidate.
ResolutionState apply_l0(ResolutionState s);

struct Whip {
  Candidate target;
  std::vector<Candidate> left;   // L1..Ln
  std::vector<Candidate> right;  // R1..R(n-1)

  int length() const { return static_cast<int>(left.size()); }
};

// Shortest-first search is done by the caller; this finds any zt-whip on `target`
// of length <= max_len, scanning left-linking candidates in index order.
// `partial_whips` is incremented once per partial whip (L_k, R_k) extension.
std::optional<Whip> find_zt_whip(const ResolutionState& s, const Candidate& target, int max_len,
                                 std::uint64_t* partial_whips = nullptr);

// Independent checker of the whip clauses against a state. Returns an empty
// string when valid, else a description of the first violated clause.
std::string check_whip(const ResolutionState& s, const Whip& whip);

struct RuleApplication {
  Candidate eliminated;
  int whip_length;
};

struct SolveResult {
  bool solved = false;
  bool contradiction = false;
  int max_whip_length = 0;
  std::vector<RuleApplication> trace;  // whip eliminations in order
  std::uint64_t partial_whips = 0;
  ResolutionState final_state;
};

// Sees each whip together with the state it was found in, before its target is eliminated.
using WhipObserver = std::function<void(const ResolutionState&, const Whip&)>;

// Repeats { L0; if unsolved, eliminate the target of the first shortest whip of
// length <= max_whip_length } until solved or stuck. Targets are scanned in
// candidate index order within each length.
SolveResult solve_with_ln(const Puzzle& p, int max_whip_length, const WhipObserver& observer = {});

struct RatingResult {
  std::optional<int> rating;  // nullopt = above cap
  std::vector<RuleApplication> trace;
  std::uint64_t partial_whip_count = 0;

  bool above_cap() const { return !rating.has_value(); }
};

inline constexpr int kDefaultRatingCap = 16;

// Smallest n <= cap such that solve_with_ln(p, n) solves p. Throws
// std::invalid_argument when p does not have exactly one solution.
//
// Because solve_with_ln applies whips shortest-first in a fixed order, its run for
// any bound n coincides with the unbounded run until that run first needs a whip
// longer than n. The rating is therefore the longest whip of one run with bound cap.
RatingResult nrczt_rating(const Puzzle& p, int cap = kDefaultRatingCap, const WhipObserver& observer = {});

// Ratings of many puzzles; results are handed to sink(index, result) in order.
// Multi-solution puzzles yield nullopt instead of throwing.
void rate_batch(std::span<const Puzzle> puzzles, int cap, const Exec& exec,
                const std::function<void(std::size_t, const std::optional<RatingResult>&)>& sink);

}  // namespace minsudoku
