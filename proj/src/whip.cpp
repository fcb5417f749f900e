#include "minsudoku/whip.hpp"

#include <algorithm>
#include <stdexcept>

#include "minsudoku/solver.hpp"

namespace minsudoku {

const CandidateSpace& CandidateSpace::of(const Board& board) {
  static const CandidateSpace shidoku(Board::of(2));
  static const CandidateSpace sudoku(Board::of(3));
  return board.box_side() == 2 ? shidoku : sudoku;
}

CandidateSpace::CandidateSpace(const Board& board) : board_(&board) {
  const int side = board.side();
  const int cells = board.cells();
  const int n = side * cells;
  vars_of_.resize(n);
  members_.assign(static_cast<std::size_t>(4 * cells * side), -1);
  std::vector<int> fill(4 * cells, 0);
  for (int i = 0; i < n; ++i) {
    const int cell = cell_of(i);
    const int v = value_of(i) - 1;
    vars_of_[i] = {cell, cells + board.row_of(cell) * side + v, 2 * cells + board.col_of(cell) * side + v,
                   3 * cells + board.box_of(cell) * side + v};
    for (int var : vars_of_[i]) members_[var * side + fill[var]++] = i;
  }
  links_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int var : vars_of_[i]) {
      for (int j : members(var)) {
        if (j != i) links_[i].set(j);
      }
    }
  }
}

int ResolutionState::unasserted_cells() const {
  int n = 0;
  for (auto v : values_) n += v == 0;
  return n;
}

void ResolutionState::assert_value(int index) {
  values_[space_->cell_of(index)] = static_cast<std::uint8_t>(space_->value_of(index));
  open_.remove(space_->links(index));
  open_.reset(index);
}

ResolutionState init_state(const Puzzle& p) {
  const auto& space = CandidateSpace::of(p.board());
  ResolutionState s(space);
  for (int i = 0; i < space.size(); ++i) s.open_.set(i);
  for (int c = 0; c < p.board().cells(); ++c) {
    if (p.at(c) != 0) s.assert_value(space.index({p.at(c), p.board().row_of(c) + 1, p.board().col_of(c) + 1}));
  }
  return s;
}

ResolutionState apply_l0(ResolutionState s) {
  const auto& space = s.space();
  const int cells = s.board().cells();
  auto satisfied = [&](int var) {
    for (int i : space.members(var)) {
      if (s.values_[space.cell_of(i)] == space.value_of(i)) return true;
    }
    return false;
  };
  bool progress = true;
  while (progress && !s.contradiction_) {
    progress = false;
    for (int var = 0; var < 4 * cells; ++var) {
      int count = 0, last = -1;
      for (int i : space.members(var)) {
        if (s.open_.test(i)) {
          ++count;
          last = i;
        }
      }
      if (count == 1) {
        s.assert_value(last);
        progress = true;
      } else if (count == 0 && !satisfied(var)) {
        s.contradiction_ = true;
        break;
      }
    }
  }
  return s;
}

namespace {

constexpr int kMaxWhipLength = 64;

// Depth-first zt-whip search on index-level candidates.
class WhipSearch {
 public:
  WhipSearch(const ResolutionState& s, int target, int max_len, std::uint64_t* partial)
      : space_(s.space()), open_(s.open()), target_(target), max_len_(max_len), partial_(partial) {}

  bool run() {
    // candidates compatible with the target: not linked to it (the target itself stays)
    CandSet compat = open_;
    compat.remove(space_.links(target_));
    return extend(1, compat, target_);
  }

  Whip whip() const {
    Whip w{space_.candidate(target_), {}, {}};
    for (int k = 0; k < length_; ++k) w.left.push_back(space_.candidate(left_[k]));
    for (int k = 0; k + 1 < length_; ++k) w.right.push_back(space_.candidate(right_[k]));
    return w;
  }

 private:
  // compat: open candidates compatible with the target and R_1..R_{k-1}.
  bool extend(int k, const CandSet& compat, int previous_right) {
    CandSet lefts = space_.links(previous_right) & open_;
    bool found = false;
    lefts.for_each([&](int l) {
      if (found || used_as_left(l, k)) return;
      for (int var : space_.variables_of(l)) {
        int rest = 0, only = -1;
        for (int i : space_.members(var)) {
          if (compat.test(i)) {
            ++rest;
            only = i;
          }
        }
        if (rest == 0) {
          left_[k - 1] = l;
          length_ = k;
          found = true;
          return;
        }
        if (rest != 1 || k == max_len_ || only == target_ || used_as_right(only, k)) continue;
        if (partial_) ++*partial_;
        left_[k - 1] = l;
        right_[k - 1] = only;
        CandSet next = compat;
        next.remove(space_.links(only));
        if (extend(k + 1, next, only)) {
          found = true;
          return;
        }
      }
    });
    return found;
  }

  bool used_as_left(int c, int k) const {
    for (int j = 0; j + 1 < k; ++j) {
      if (left_[j] == c) return true;
    }
    return false;
  }
  bool used_as_right(int c, int k) const {
    for (int j = 0; j + 1 < k; ++j) {
      if (right_[j] == c) return true;
    }
    return false;
  }

  const CandidateSpace& space_;
  const CandSet& open_;
  int target_;
  int max_len_;
  std::uint64_t* partial_;
  std::array<int, kMaxWhipLength> left_{};
  std::array<int, kMaxWhipLength> right_{};
  int length_ = 0;
};

std::optional<Whip> find_whip_index(const ResolutionState& s, int target, int max_len, std::uint64_t* partial) {
  WhipSearch search(s, target, max_len, partial);
  if (!search.run()) return std::nullopt;
  return search.whip();
}

void check_length(int max_len) {
  if (max_len < 0 || max_len > kMaxWhipLength) {
    throw std::invalid_argument("whip length bound must be in [0, " + std::to_string(kMaxWhipLength) + "]");
  }
}

}  // namespace

std::optional<Whip> find_zt_whip(const ResolutionState& s, const Candidate& target, int max_len,
                                 std::uint64_t* partial_whips) {
  check_length(max_len);
  const int t = s.space().index(target);
  if (!s.has_index(t)) throw std::invalid_argument("whip target is not a candidate of the state");
  if (max_len == 0) return std::nullopt;
  return find_whip_index(s, t, max_len, partial_whips);
}

std::string check_whip(const ResolutionState& s, const Whip& whip) {
  const Board& board = s.board();
  const int n = whip.length();
  if (n < 1) return "empty whip";
  if (static_cast<int>(whip.right.size()) != n - 1) return "right-linking sequence must have length n-1";

  // Variables, read off the board geometry rather than the candidate index tables.
  auto same_variable = [&](const Candidate& a, const Candidate& b) {
    const int ca = board.cell_at(a.row - 1, a.col - 1), cb = board.cell_at(b.row - 1, b.col - 1);
    if (ca == cb) return true;
    if (a.value != b.value) return false;
    return a.row == b.row || a.col == b.col || board.box_of(ca) == board.box_of(cb);
  };
  // Members of every variable containing `c`: up to four lists of candidates.
  auto variables_containing = [&](const Candidate& c) {
    std::vector<std::vector<Candidate>> vars(4);
    const int cell = board.cell_at(c.row - 1, c.col - 1);
    for (int v = 1; v <= board.side(); ++v) vars[0].push_back({v, c.row, c.col});
    for (int i = 0; i < board.side(); ++i) {
      vars[1].push_back({c.value, c.row, i + 1});
      vars[2].push_back({c.value, i + 1, c.col});
      const int bc = board.unit(2 * board.side() + board.box_of(cell))[i];
      vars[3].push_back({c.value, board.row_of(bc) + 1, board.col_of(bc) + 1});
    }
    return vars;
  };
  auto compatible_with = [&](const Candidate& x, const std::vector<Candidate>& context) {
    for (const auto& y : context) {
      if (x != y && linked(x, y, board)) return false;
    }
    return true;
  };

  std::vector<Candidate> all{whip.target};
  for (int k = 0; k < n; ++k) {
    all.push_back(whip.left[k]);
    if (k + 1 < n) all.push_back(whip.right[k]);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!s.has(all[i])) return "candidate not present in the state";
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) return "candidates are not all different";
    }
  }

  std::vector<Candidate> context{whip.target};  // Z, R1, ..., R(k-1)
  for (int k = 1; k <= n; ++k) {
    const Candidate& l = whip.left[k - 1];
    if (!linked(l, context.back(), board)) return "L" + std::to_string(k) + " not linked to R" + std::to_string(k - 1);
    auto compatible_members = [&](const std::vector<Candidate>& var) {
      std::vector<Candidate> out;
      for (const auto& c : var) {
        if (s.has(c) && compatible_with(c, context)) out.push_back(c);
      }
      return out;
    };
    if (k < n) {
      const Candidate& r = whip.right[k - 1];
      if (!same_variable(l, r)) return "L" + std::to_string(k) + " and R" + std::to_string(k) + " share no variable";
      bool forced = false;
      for (const auto& var : variables_containing(l)) {
        const bool has_r = std::find(var.begin(), var.end(), r) != var.end();
        const auto rest = compatible_members(var);
        if (has_r && rest.size() == 1 && rest.front() == r) forced = true;
      }
      if (!forced) return "R" + std::to_string(k) + " is not the only compatible candidate of its variable";
      context.push_back(r);
    } else {
      bool empty = false;
      for (const auto& var : variables_containing(l)) empty = empty || compatible_members(var).empty();
      if (!empty) return "the variable of L" + std::to_string(n) + " keeps a compatible candidate";
    }
  }
  return {};
}

namespace {

struct Run {
  bool solved = false;
  bool contradiction = false;
  int max_len = 0;
  std::vector<RuleApplication> trace;
  std::uint64_t partial = 0;
};

Run run_simplest_first(ResolutionState& s, int bound, const WhipObserver& observer) {
  check_length(bound);
  Run run;
  for (;;) {
    s = apply_l0(std::move(s));
    if (s.contradictory()) {
      run.contradiction = true;
      return run;
    }
    if (s.solved()) {
      run.solved = true;
      return run;
    }
    bool applied = false;
    for (int len = 1; len <= bound && !applied; ++len) {
      s.open().for_each([&](int target) {
        if (applied) return;
        auto whip = find_whip_index(s, target, len, &run.partial);
        if (!whip) return;
        if (observer) observer(s, *whip);
        s.eliminate(target);
        run.trace.push_back({whip->target, whip->length()});
        run.max_len = std::max(run.max_len, whip->length());
        applied = true;
      });
    }
    if (!applied) return run;
  }
}

}  // namespace

SolveResult solve_with_ln(const Puzzle& p, int max_whip_length, const WhipObserver& observer) {
  ResolutionState s = init_state(p);
  Run run = run_simplest_first(s, max_whip_length, observer);
  return SolveResult{.solved = run.solved,
                     .contradiction = run.contradiction,
                     .max_whip_length = run.max_len,
                     .trace = std::move(run.trace),
                     .partial_whips = run.partial,
                     .final_state = std::move(s)};
}

RatingResult nrczt_rating(const Puzzle& p, int cap, const WhipObserver& observer) {
  if (count_solutions(p, 2) != 1) throw std::invalid_argument("rating requires a puzzle with a unique solution");
  ResolutionState s = init_state(p);
  Run run = run_simplest_first(s, cap, observer);
  if (run.contradiction) throw std::logic_error("contradiction while rating a unique-solution puzzle");
  RatingResult result;
  if (run.solved) result.rating = run.max_len;
  result.trace = std::move(run.trace);
  result.partial_whip_count = run.partial;
  return result;
}

void rate_batch(std::span<const Puzzle> puzzles, int cap, const Exec& exec,
                const std::function<void(std::size_t, const std::optional<RatingResult>&)>& sink) {
  run_ordered<std::optional<RatingResult>>(
      puzzles.size(), exec,
      [&](std::size_t i) -> std::optional<RatingResult> {
        if (count_solutions(puzzles[i], 2) != 1) return std::nullopt;
        return nrczt_rating(puzzles[i], cap);
      },
      [&](std::size_t i, const std::optional<RatingResult>& r) { sink(i, r); });
}

}  // namespace minsudoku
