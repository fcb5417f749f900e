#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minsudoku {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational& r);
BigInt binomial(int n, int k);

// P(n+1) / P(n) = (n + 1) / (cells - n): relative chance that the controlled-bias
// generator outputs a given (n+1)-clue minimal puzzle versus a given n-clue one.
// Throws std::out_of_range unless 0 <= n < cells.
Rational transition_ratio(int n, int cells);

// Pr(a) / Pr(b) for minimal puzzles with a and b clues, as a product of transition ratios.
Rational output_probability_ratio(int a, int b, int cells);

// Correction factors: cf(n+1) / cf(n) = (cells - n) / (n + 1), cf(anchor) = 1.
class BiasModel {
 public:
  // Throws std::out_of_range unless 0 <= anchor <= cells.
  BiasModel(int cells, int anchor);

  int cells() const { return cells_; }
  int anchor() const { return anchor_; }

  // Evaluated by the recurrence from the anchor outward. 0 <= n <= cells.
  Rational cf(int n) const;
  double cf_value(int n) const { return to_double(cf(n)); }

 private:
  int cells_;
  int anchor_;
  mutable std::map<int, Rational> cache_;
};

// cf(n) for n_min..n_max. Throws std::out_of_range unless n_min <= anchor <= n_max < cells.
std::vector<Rational> correction_factors(int n_min, int n_max, int anchor, int cells);

// Per clue count n: on(n) and, for each tracked variable X, the mean and the
// (population) standard deviation of X among the n-clue puzzles of the sample.
class SampleStats {
 public:
  explicit SampleStats(std::vector<std::string> variables);

  const std::vector<std::string>& variables() const { return variables_; }
  int variable_index(const std::string& name) const;

  void add(int clues, std::span<const double> values);
  // Associative and commutative merge (pairwise mean / M2 update).
  void merge(const SampleStats& other);

  std::uint64_t total() const;
  std::uint64_t on(int n) const;
  std::vector<int> clue_counts() const;  // n with on(n) > 0, ascending
  std::optional<double> mean(int variable, int n) const;
  std::optional<double> sd(int variable, int n) const;

 private:
  struct Moments {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;
    void add(double x);
    void merge(const Moments& o);
  };
  struct Bin {
    std::uint64_t on = 0;
    std::vector<Moments> moments;
  };

  std::vector<std::string> variables_;
  std::map<int, Bin> bins_;
};

// sum[E(X,n) on(n)] / sum[on(n)] and sqrt(sum[sd(X,n)^2 on(n)] / sum[on(n)]).
double raw_mean(const SampleStats& stats, int variable);
double raw_sd(const SampleStats& stats, int variable);

// Weight per clue count; BiasModel::cf_value in practice.
using ClueWeights = std::function<double(int)>;

// sum[E(X,n) on(n) cf(n)] / sum[on(n) cf(n)]. Throws std::invalid_argument on an empty sample.
double unbiased_mean(const SampleStats& stats, int variable, const BiasModel& model);
double unbiased_mean(const SampleStats& stats, int variable, const ClueWeights& cf);

// sqrt(sum[sd(X,n)^2 on(n) cf(n)] / sum[on(n) cf(n)]): the pooled within-clue-count
// deviation. Throws std::invalid_argument on an empty sample.
double unbiased_sd(const SampleStats& stats, int variable, const BiasModel& model);
double unbiased_sd(const SampleStats& stats, int variable, const ClueWeights& cf);

// Diagnostic: the reweighted total deviation, which adds the between-clue-count
// term (E(X,n) - mean)^2 to each group's variance.
double unbiased_total_sd(const SampleStats& stats, int variable, const BiasModel& model);

// Diagnostic: linearized standard error of unbiased_mean, treating each record as
// an independent draw carrying weight cf(n).
double unbiased_mean_standard_error(const SampleStats& stats, int variable, const BiasModel& model);

struct ClueHistogram {
  std::map<int, std::uint64_t> on;
  std::uint64_t total = 0;

  double percent(int n) const;
  int modal() const;  // smallest n with maximal on(n); throws on an empty histogram
};

ClueHistogram clue_histogram(std::span<const int> clue_counts);

}  // namespace minsudoku
