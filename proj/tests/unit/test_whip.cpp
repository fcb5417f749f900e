#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "minsudoku/batch.hpp"
#include "minsudoku/solver.hpp"
#include "minsudoku/whip.hpp"

using namespace minsudoku;

namespace {

std::vector<Puzzle> top_down_sample(std::size_t n, std::uint64_t seed) {
  std::vector<Puzzle> out;
  generate_batch(GeneratorKind::top_down, n, seed, GridSource::backtracking(Board::of(3)), Exec::openmp(),
                 [&](const GenerationRecord& r) { out.push_back(r.puzzle); });
  return out;
}

// Random validity-preserving transformation of a 9x9 puzzle: digit relabelling,
// transposition, and permutations of bands, stacks, and rows/columns within them.
Puzzle scramble(const Puzzle& p, Rng& rng) {
  std::array<int, 10> digit{};
  std::iota(digit.begin(), digit.end(), 0);
  std::shuffle(digit.begin() + 1, digit.end(), rng);
  auto line_perm = [&] {
    std::array<int, 3> bands{0, 1, 2};
    std::shuffle(bands.begin(), bands.end(), rng);
    std::array<int, 9> perm{};
    for (int b = 0; b < 3; ++b) {
      std::array<int, 3> inner{0, 1, 2};
      std::shuffle(inner.begin(), inner.end(), rng);
      for (int i = 0; i < 3; ++i) perm[b * 3 + i] = bands[b] * 3 + inner[i];
    }
    return perm;
  };
  const auto rows = line_perm();
  const auto cols = line_perm();
  const bool transpose = uniform_below(rng, 2) == 1;
  Puzzle out(p.board());
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const int v = p.at(rows[r] * 9 + cols[c]);
      if (!v) continue;
      out.place(transpose ? c * 9 + r : r * 9 + c, static_cast<std::uint8_t>(digit[v]));
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("whip") {
  TEST_CASE("candidate space and initial states") {
    const auto& s9 = CandidateSpace::of(Board::of(3));
    CHECK(s9.size() == 729);
    CHECK(s9.variable_count() == 324);
    CHECK(init_state(Puzzle(Board::of(3))).candidate_count() == 729);
    CHECK(init_state(Puzzle(Board::of(2))).candidate_count() == 64);
    Puzzle one(Board::of(3));
    one.place(40, 5);
    const auto st = init_state(one);
    CHECK(st.candidate_count() == 729 - 9 - 20);
    CHECK(st.value_at(40) == 5);
    CHECK(st.unasserted_cells() == 80);
  }

  TEST_CASE("index numbering and links agree with the link relation") {
    for (int k : {2, 3}) {
      const Board& b = Board::of(k);
      const auto& sp = CandidateSpace::of(b);
      for (int i = 0; i < sp.size(); ++i) {
        const Candidate c = sp.candidate(i);
        REQUIRE(sp.index(c) == i);
        for (int v : sp.variables_of(i)) {
          const auto m = sp.members(v);
          REQUIRE(std::count(m.begin(), m.end(), i) == 1);
        }
        for (int j = 0; j < sp.size(); ++j) {
          if (i == j) continue;
          REQUIRE(sp.links(i).test(j) == linked(c, sp.candidate(j), b));
        }
      }
    }
  }

  TEST_CASE("L0 keeps its invariants and solves singles-only puzzles") {
    Rng rng = derive_stream(40, 0);
    const Grid g = random_complete_grid(rng, Board::of(3));
    Puzzle p = g.puzzle();
    p.erase(17);
    CHECK(nrczt_rating(p).rating == 0);
    // every cell holding a 7 removed: each is the last value of its row
    Puzzle q = g.puzzle();
    for (int cell = 0; cell < 81; ++cell) {
      if (q.at(cell) == 7) q.erase(cell);
    }
    const auto r = nrczt_rating(q);
    CHECK(r.rating == 0);
    CHECK(r.trace.empty());

    for (const auto& puzzle : top_down_sample(20, 41)) {
      const auto s = apply_l0(init_state(puzzle));
      REQUIRE_FALSE(s.contradictory());
      const auto& sp = s.space();
      s.open().for_each([&](int i) {
        REQUIRE(s.value_at(sp.cell_of(i)) == 0);
        for (int cell = 0; cell < 81; ++cell) {
          if (s.value_at(cell) == 0) continue;
          const Candidate asserted{s.value_at(cell), cell / 9 + 1, cell % 9 + 1};
          REQUIRE_FALSE(linked(asserted, sp.candidate(i), Board::of(3)));
        }
      });
    }
  }

  TEST_CASE("L0 detects an empty variable") {
    // 3 must go in row 1, columns 3-4, but the box already holds it
    const Puzzle p = parse_puzzle("12....3.........", Board::of(2));
    CHECK(apply_l0(init_state(p)).contradictory());
    CHECK(solve_with_ln(p, 3).contradiction);
    CHECK_THROWS_AS(nrczt_rating(p), std::invalid_argument);
    CHECK_THROWS_AS(nrczt_rating(Puzzle(Board::of(3))), std::invalid_argument);
  }

  TEST_CASE("whips found in random states pass the clause checker and are sound") {
    int found = 0;
    std::uint64_t seed = 0;
    for (const auto& p : top_down_sample(25, 42)) {
      const Grid sol = *unique_solution(p);
      auto s = apply_l0(init_state(p));
      if (s.solved()) continue;
      // drop a few false candidates so the searches see varied states
      Rng rng = derive_stream(43, seed++);
      std::vector<int> open;
      s.open().for_each([&](int i) { open.push_back(i); });
      const auto& sp = s.space();
      for (int i : open) {
        if (sol.at(sp.cell_of(i)) != sp.value_of(i) && uniform_below(rng, 10) == 0) s.eliminate(i);
      }
      s.open().for_each([&](int i) {
        const Candidate target = sp.candidate(i);
        const auto w = find_zt_whip(s, target, 5);
        if (!w) return;
        ++found;
        REQUIRE(w->target == target);
        REQUIRE(static_cast<int>(w->right.size()) == w->length() - 1);
        REQUIRE(check_whip(s, *w) == "");
        REQUIRE(sol.at(sp.cell_of(i)) != target.value);
      });
    }
    CHECK(found > 50);
  }

  TEST_CASE("the checker rejects damaged whips") {
    int damaged = 0;
    for (const auto& p : top_down_sample(30, 44)) {
      solve_with_ln(p, 8, [&](const ResolutionState& s, const Whip& w) {
        if (w.length() < 2) return;
        Whip a = w;
        a.left.front() = w.target;
        Whip b = w;
        b.right.pop_back();
        Whip c = w;
        c.left.pop_back();
        for (const Whip* bad : {&a, &b, &c}) CHECK_FALSE(check_whip(s, *bad).empty());
        ++damaged;
      });
    }
    CHECK(damaged > 0);
  }

  TEST_CASE("find_zt_whip rejects an absent target") {
    const auto s = init_state(parse_puzzle("1...............", Board::of(2)));
    CHECK_THROWS(find_zt_whip(s, Candidate{2, 1, 1}, 3));
  }

  TEST_CASE("rating monotonicity and soundness") {
    int rated_above_zero = 0;
    for (const auto& p : top_down_sample(60, 45)) {
      const Grid sol = *unique_solution(p);
      const auto r = nrczt_rating(p, kDefaultRatingCap, [&](const ResolutionState& s, const Whip& w) {
        REQUIRE(check_whip(s, w) == "");
        const int cell = Board::of(3).cell_at(w.target.row - 1, w.target.col - 1);
        REQUIRE(sol.at(cell) != w.target.value);
      });
      REQUIRE(r.rating.has_value());
      const int n = *r.rating;
      CHECK(solve_with_ln(p, n).solved);
      CHECK(solve_with_ln(p, n + 1).solved);
      if (n > 0) {
        ++rated_above_zero;
        CHECK_FALSE(solve_with_ln(p, n - 1).solved);
      }
      int longest = 0;
      for (const auto& step : r.trace) longest = std::max(longest, step.whip_length);
      CHECK(longest == n);
    }
    CHECK(rated_above_zero > 10);
  }

  TEST_CASE("ratings are unchanged by board symmetries") {
    Rng rng = derive_stream(46, 0);
    for (const auto& p : top_down_sample(40, 47)) {
      const auto base = nrczt_rating(p).rating;
      for (int t = 0; t < 3; ++t) CHECK(nrczt_rating(scramble(p, rng)).rating == base);
    }
  }

  TEST_CASE("above-cap puzzles") {
    for (const auto& p : top_down_sample(40, 48)) {
      const auto r = nrczt_rating(p);
      if (r.rating.value_or(0) < 2) continue;
      const auto capped = nrczt_rating(p, *r.rating - 1);
      CHECK(capped.above_cap());
      CHECK_FALSE(solve_with_ln(p, *r.rating - 1).solved);
    }
  }

  TEST_CASE("batch rating") {
    auto puzzles = top_down_sample(30, 49);
    puzzles.push_back(Puzzle(Board::of(3)));
    std::vector<std::optional<int>> serial, parallel;
    std::vector<bool> valid;
    rate_batch(puzzles, kDefaultRatingCap, Exec::serial(), [&](std::size_t i, const std::optional<RatingResult>& r) {
      REQUIRE(i == serial.size());
      valid.push_back(r.has_value());
      serial.push_back(r ? r->rating : std::nullopt);
    });
    rate_batch(puzzles, kDefaultRatingCap, Exec::openmp(4), [&](std::size_t, const std::optional<RatingResult>& r) {
      parallel.push_back(r ? r->rating : std::nullopt);
    });
    CHECK(serial == parallel);
    CHECK_FALSE(valid.back());
    CHECK(std::count(valid.begin(), valid.end(), true) == 30);
  }
}
