#include "minsudoku/bias_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minsudoku {

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Rational transition_ratio(int n, int cells) {
  if (n < 0 || n >= cells) {
    throw std::out_of_range("transition ratio needs 0 <= n < cells (n=" + std::to_string(n) + ")");
  }
  return Rational(n + 1, cells - n);
}

Rational output_probability_ratio(int a, int b, int cells) {
  Rational r = 1;
  for (int n = std::min(a, b); n < std::max(a, b); ++n) r *= transition_ratio(n, cells);
  return a >= b ? r : Rational(1) / r;
}

BiasModel::BiasModel(int cells, int anchor) : cells_(cells), anchor_(anchor) {
  if (anchor < 0 || anchor > cells) throw std::out_of_range("anchor outside [0, cells]");
}

Rational BiasModel::cf(int n) const {
  if (n < 0 || n > cells_) throw std::out_of_range("cf(n) needs 0 <= n <= cells");
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  Rational r = 1;
  for (int m = anchor_; m < n; ++m) r *= Rational(cells_ - m, m + 1);
  for (int m = anchor_; m > n; --m) r *= Rational(m, cells_ - m + 1);
  cache_.emplace(n, r);
  return r;
}

std::vector<Rational> correction_factors(int n_min, int n_max, int anchor, int cells) {
  if (!(n_min <= anchor && anchor <= n_max && n_max < cells && n_min >= 0)) {
    throw std::out_of_range("correction factors need 0 <= n_min <= anchor <= n_max < cells");
  }
  // Outward from the anchor, one exact step at a time.
  std::vector<Rational> out(static_cast<std::size_t>(n_max - n_min + 1));
  out[anchor - n_min] = 1;
  for (int n = anchor; n < n_max; ++n) out[n + 1 - n_min] = out[n - n_min] * Rational(cells - n, n + 1);
  for (int n = anchor; n > n_min; --n) out[n - 1 - n_min] = out[n - n_min] * Rational(n, cells - n + 1);
  return out;
}

void SampleStats::Moments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void SampleStats::Moments::merge(const Moments& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double n = static_cast<double>(count + o.count);
  const double delta = o.mean - mean;
  mean += delta * static_cast<double>(o.count) / n;
  m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
  count += o.count;
}

SampleStats::SampleStats(std::vector<std::string> variables) : variables_(std::move(variables)) {}

int SampleStats::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw std::invalid_argument("untracked variable '" + name + "'");
  return static_cast<int>(it - variables_.begin());
}

void SampleStats::add(int clues, std::span<const double> values) {
  if (values.size() != variables_.size()) throw std::invalid_argument("value count does not match variables");
  Bin& bin = bins_[clues];
  bin.moments.resize(variables_.size());
  ++bin.on;
  for (std::size_t i = 0; i < values.size(); ++i) bin.moments[i].add(values[i]);
}

void SampleStats::merge(const SampleStats& other) {
  if (other.variables_ != variables_) throw std::invalid_argument("merging stats over different variables");
  for (const auto& [n, b] : other.bins_) {
    Bin& bin = bins_[n];
    bin.moments.resize(variables_.size());
    bin.on += b.on;
    for (std::size_t i = 0; i < variables_.size(); ++i) bin.moments[i].merge(b.moments[i]);
  }
}

std::uint64_t SampleStats::total() const {
  std::uint64_t t = 0;
  for (const auto& [n, b] : bins_) t += b.on;
  return t;
}

std::uint64_t SampleStats::on(int n) const {
  auto it = bins_.find(n);
  return it == bins_.end() ? 0 : it->second.on;
}

std::vector<int> SampleStats::clue_counts() const {
  std::vector<int> out;
  for (const auto& [n, b] : bins_) {
    if (b.on > 0) out.push_back(n);
  }
  return out;
}

std::optional<double> SampleStats::mean(int variable, int n) const {
  auto it = bins_.find(n);
  if (it == bins_.end() || it->second.on == 0) return std::nullopt;
  return it->second.moments.at(variable).mean;
}

std::optional<double> SampleStats::sd(int variable, int n) const {
  auto it = bins_.find(n);
  if (it == bins_.end() || it->second.on == 0) return std::nullopt;
  const auto& m = it->second.moments.at(variable);
  return std::sqrt(std::max(0.0, m.m2 / static_cast<double>(m.count)));
}

namespace {

// Weighted sums over clue counts with weight on(n) * w(n).
template <class Weight, class Term>
double weighted_average(const SampleStats& stats, Weight weight, Term term) {
  double num = 0, den = 0;
  for (int n : stats.clue_counts()) {
    const double w = static_cast<double>(stats.on(n)) * weight(n);
    num += term(n) * w;
    den += w;
  }
  if (den <= 0) throw std::invalid_argument("empty sample");
  return num / den;
}

}  // namespace

double raw_mean(const SampleStats& stats, int variable) {
  return weighted_average(stats, [](int) { return 1.0; }, [&](int n) { return *stats.mean(variable, n); });
}

double raw_sd(const SampleStats& stats, int variable) {
  return std::sqrt(weighted_average(stats, [](int) { return 1.0; }, [&](int n) {
    const double s = *stats.sd(variable, n);
    return s * s;
  }));
}

double unbiased_mean(const SampleStats& stats, int variable, const ClueWeights& cf) {
  return weighted_average(stats, cf, [&](int n) { return *stats.mean(variable, n); });
}

double unbiased_mean(const SampleStats& stats, int variable, const BiasModel& model) {
  return unbiased_mean(stats, variable, [&](int n) { return model.cf_value(n); });
}

double unbiased_sd(const SampleStats& stats, int variable, const ClueWeights& cf) {
  return std::sqrt(weighted_average(stats, cf, [&](int n) {
    const double s = *stats.sd(variable, n);
    return s * s;
  }));
}

double unbiased_sd(const SampleStats& stats, int variable, const BiasModel& model) {
  return unbiased_sd(stats, variable, [&](int n) { return model.cf_value(n); });
}

double unbiased_total_sd(const SampleStats& stats, int variable, const BiasModel& model) {
  const double mu = unbiased_mean(stats, variable, model);
  return std::sqrt(weighted_average(stats, [&](int n) { return model.cf_value(n); }, [&](int n) {
    const double s = *stats.sd(variable, n);
    const double d = *stats.mean(variable, n) - mu;
    return s * s + d * d;
  }));
}

double unbiased_mean_standard_error(const SampleStats& stats, int variable, const BiasModel& model) {
  const double mu = unbiased_mean(stats, variable, model);
  double num = 0, den = 0;
  for (int n : stats.clue_counts()) {
    const double w = model.cf_value(n);
    const double on = static_cast<double>(stats.on(n));
    const double s = *stats.sd(variable, n);
    const double d = *stats.mean(variable, n) - mu;
    // sum over the records of this clue count of w^2 (x - mu)^2
    num += w * w * on * (s * s + d * d);
    den += w * on;
  }
  return std::sqrt(num) / den;
}

double ClueHistogram::percent(int n) const {
  auto it = on.find(n);
  if (it == on.end() || total == 0) return 0;
  return 100.0 * static_cast<double>(it->second) / static_cast<double>(total);
}

int ClueHistogram::modal() const {
  if (on.empty()) throw std::invalid_argument("empty histogram");
  return std::max_element(on.begin(), on.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

ClueHistogram clue_histogram(std::span<const int> clue_counts) {
  ClueHistogram h;
  for (int n : clue_counts) ++h.on[n];
  h.total = clue_counts.size();
  return h;
}

}  // namespace minsudoku
