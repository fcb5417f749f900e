#pragma once

#include <cstdint>
#include <map>

#include "minsudoku/bias_stats.hpp"

namespace minsudoku {

// 1 / C(cells, n): chance that one pass of the controlled-bias generator over a
// fixed grid outputs one given n-clue minimal puzzle of that grid.
Rational output_probability(int n, int cells);

// s = outputs / grids consumed. Throws std::invalid_argument when grids == 0.
double estimate_success_rate(std::uint64_t outputs, std::uint64_t grids);

struct CensusRow {
  std::uint64_t on = 0;
  double count = 0;    // expected n-clue minimal puzzles per complete grid
  double rel_err = 0;  // 1 / sqrt(on)
  double tries = 0;    // random n-subsets of a random grid per minimal one
};

struct CensusEstimate {
  int cells = 0;
  double success_rate = 0;
  std::uint64_t total_outputs = 0;
  std::map<int, CensusRow> rows;

  double per_grid_total() const;
  // Relative error of per_grid_total, treating the per-n errors as independent.
  double per_grid_total_rel_err() const;
};

// count(n) = (on(n) / total) * s / P(n). Throws std::invalid_argument on an empty
// histogram or a non-positive success rate.
CensusEstimate estimate_counts_per_grid(const std::map<int, std::uint64_t>& on, double success_rate, int cells);

// C(cells, n) / count(n). Throws std::invalid_argument when count <= 0.
double estimate_tries(double count, int n, int cells);

struct CensusTotals {
  double per_grid = 0;
  double total = 0;
  double rel_err = 0;
};

// per-grid total and per-grid total * n_grids.
CensusTotals totals(const CensusEstimate& estimate, double n_grids);

inline constexpr double kComplete9x9Grids = 6.670903752021072936960e21;
inline constexpr double kEssentiallyDifferent9x9Grids = 5472730538.0;
inline constexpr double kComplete4x4Grids = 288.0;

}  // namespace minsudoku
