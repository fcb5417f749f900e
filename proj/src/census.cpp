#include "minsudoku/census.hpp"

#include <cmath>
#include <stdexcept>

namespace minsudoku {

Rational output_probability(int n, int cells) {
  if (n < 0 || n > cells) throw std::out_of_range("clue count outside [0, cells]");
  return Rational(BigInt(1), binomial(cells, n));
}

double estimate_success_rate(std::uint64_t outputs, std::uint64_t grids) {
  if (grids == 0) throw std::invalid_argument("success rate needs at least one attempt");
  return static_cast<double>(outputs) / static_cast<double>(grids);
}

double CensusEstimate::per_grid_total() const {
  double t = 0;
  for (const auto& [n, row] : rows) t += row.count;
  return t;
}

double CensusEstimate::per_grid_total_rel_err() const {
  double var = 0;
  for (const auto& [n, row] : rows) var += (row.count * row.rel_err) * (row.count * row.rel_err);
  const double t = per_grid_total();
  return t > 0 ? std::sqrt(var) / t : 0;
}

CensusEstimate estimate_counts_per_grid(const std::map<int, std::uint64_t>& on, double success_rate, int cells) {
  if (!(success_rate > 0)) throw std::invalid_argument("success rate must be positive");
  std::uint64_t total = 0;
  for (const auto& [n, c] : on) total += c;
  if (total == 0) throw std::invalid_argument("empty clue histogram");

  CensusEstimate est;
  est.cells = cells;
  est.success_rate = success_rate;
  est.total_outputs = total;
  for (const auto& [n, c] : on) {
    if (c == 0) continue;
    CensusRow row;
    row.on = c;
    const double inv_p = to_double(Rational(binomial(cells, n)));
    row.count = static_cast<double>(c) / static_cast<double>(total) * success_rate * inv_p;
    row.rel_err = 1.0 / std::sqrt(static_cast<double>(c));
    row.tries = estimate_tries(row.count, n, cells);
    est.rows.emplace(n, row);
  }
  return est;
}

double estimate_tries(double count, int n, int cells) {
  if (!(count > 0)) throw std::invalid_argument("tries undefined for a zero count");
  return to_double(Rational(binomial(cells, n))) / count;
}

CensusTotals totals(const CensusEstimate& estimate, double n_grids) {
  CensusTotals t;
  t.per_grid = estimate.per_grid_total();
  t.total = t.per_grid * n_grids;
  t.rel_err = estimate.per_grid_total_rel_err();
  return t;
}

}  // namespace minsudoku
