#include <doctest.h>

#include <cmath>
#include <numeric>

#include "minsudoku/bias_stats.hpp"
#include "minsudoku/whip.hpp"
#include "oracle4.hpp"

using namespace minsudoku;

namespace {

SampleStats toy() {
  SampleStats s({"x", "c"});
  const double data[][2] = {{24, 3}, {24, 5}, {25, 1}, {26, 2}, {26, 8}, {26, 4}, {27, 0}, {28, 9}};
  for (const auto& d : data) {
    const double v[] = {d[1], 7.0};
    s.add(static_cast<int>(d[0]), v);
  }
  return s;
}

}  // namespace

TEST_SUITE("bias_stats") {
  TEST_CASE("transition ratios are exact") {
    CHECK(transition_ratio(24, 81) == Rational(25, 57));
    CHECK(transition_ratio(0, 16) == Rational(1, 16));
    CHECK_THROWS_AS(transition_ratio(81, 81), std::out_of_range);
    CHECK_THROWS_AS(transition_ratio(-1, 81), std::out_of_range);
    const Rational r = output_probability_ratio(24, 30, 81);
    CHECK(r == Rational(BigInt(57) * 56 * 55 * 54 * 53 * 52, BigInt(25) * 26 * 27 * 28 * 29 * 30));
    CHECK(output_probability_ratio(30, 24, 81) * r == 1);
    CHECK(std::abs(to_double(r) - 61.1145) < 1e-3);
  }

  TEST_CASE("correction factors: recurrence, anchor and closed form") {
    const auto cf = correction_factors(19, 31, 26, 81);
    REQUIRE(cf.size() == 13);
    CHECK(cf[26 - 19] == 1);
    for (int n = 19; n < 31; ++n) CHECK(cf[n + 1 - 19] / cf[n - 19] == Rational(81 - n, n + 1));
    const BiasModel model(81, 26);
    for (int n = 0; n <= 81; ++n) {
      CHECK(model.cf(n) == Rational(binomial(81, n), binomial(81, 26)));
      if (n >= 19 && n <= 31) CHECK(model.cf(n) == cf[n - 19]);
    }
    CHECK(std::abs(model.cf_value(27) - 2.037) < 5e-4);
    CHECK_THROWS_AS(correction_factors(27, 31, 26, 81), std::out_of_range);
    CHECK_THROWS_AS(correction_factors(19, 81, 26, 81), std::out_of_range);
    CHECK_THROWS_AS(BiasModel(81, 82), std::out_of_range);
    CHECK_THROWS_AS(model.cf(82), std::out_of_range);
  }

  TEST_CASE("constant variables and empty samples") {
    const auto s = toy();
    const BiasModel model(81, 26);
    CHECK(unbiased_mean(s, 1, model) == doctest::Approx(7.0));
    CHECK(unbiased_sd(s, 1, model) == doctest::Approx(0.0));
    CHECK(raw_mean(s, 1) == doctest::Approx(7.0));
    const SampleStats empty({"x"});
    CHECK_THROWS_AS(unbiased_mean(empty, 0, model), std::invalid_argument);
    CHECK_THROWS_AS(unbiased_sd(empty, 0, model), std::invalid_argument);
    CHECK_THROWS_AS(s.variable_index("y"), std::invalid_argument);
    CHECK(s.variable_index("c") == 1);
  }

  TEST_CASE("per-clue-count moments") {
    const auto s = toy();
    CHECK(s.total() == 8);
    CHECK(s.on(26) == 3);
    CHECK(s.on(30) == 0);
    CHECK(s.clue_counts() == std::vector<int>{24, 25, 26, 27, 28});
    CHECK(*s.mean(0, 26) == doctest::Approx(14.0 / 3));
    // population deviation of {2, 8, 4}
    CHECK(*s.sd(0, 26) == doctest::Approx(std::sqrt(56.0 / 9)));
    CHECK_FALSE(s.mean(0, 30).has_value());
  }

  TEST_CASE("equal weights give the raw estimates; rescaling changes nothing") {
    const auto s = toy();
    const BiasModel model(81, 26);
    CHECK(unbiased_mean(s, 0, [](int) { return 3.5; }) == doctest::Approx(raw_mean(s, 0)));
    CHECK(unbiased_sd(s, 0, [](int) { return 3.5; }) == doctest::Approx(raw_sd(s, 0)));
    for (double k : {1e-6, 0.37, 42.0, 1e9}) {
      auto scaled = [&](int n) { return k * model.cf_value(n); };
      CHECK(unbiased_mean(s, 0, scaled) == doctest::Approx(unbiased_mean(s, 0, model)).epsilon(1e-12));
      CHECK(unbiased_sd(s, 0, scaled) == doctest::Approx(unbiased_sd(s, 0, model)).epsilon(1e-12));
    }
    // the anchor only rescales the factors
    CHECK(unbiased_mean(s, 0, BiasModel(81, 20)) == doctest::Approx(unbiased_mean(s, 0, model)).epsilon(1e-12));
  }

  TEST_CASE("merge is associative and matches a single pass") {
    SampleStats whole({"x"}), a({"x"}), b({"x"}), c({"x"});
    for (int i = 0; i < 300; ++i) {
      const int n = 20 + i % 7;
      const double v[] = {std::sin(i * 0.7) * 100 + i};
      whole.add(n, v);
      (i < 100 ? a : i < 180 ? b : c).add(n, v);
    }
    SampleStats left = a;
    left.merge(b);
    left.merge(c);
    SampleStats bc = b;
    bc.merge(c);
    SampleStats right = a;
    right.merge(bc);
    for (int n : whole.clue_counts()) {
      CHECK(left.on(n) == whole.on(n));
      CHECK(*left.mean(0, n) == doctest::Approx(*whole.mean(0, n)).epsilon(1e-12));
      CHECK(*left.sd(0, n) == doctest::Approx(*whole.sd(0, n)).epsilon(1e-10));
      CHECK(*right.sd(0, n) == doctest::Approx(*left.sd(0, n)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(whole.merge(toy()), std::invalid_argument);
  }

  TEST_CASE("grouped formulas equal direct weighted sums over the 4x4 population") {
    const auto& o = oracle::get();
    const BiasModel model(16, 5);
    SampleStats stats({"candidates"});
    std::vector<double> xs;
    for (const auto& p : o.minimals) {
      const double v[] = {static_cast<double>(init_state(p).candidate_count())};
      xs.push_back(v[0]);
      stats.add(p.clue_count(), v);
    }
    // direct: every puzzle weighted by cf of its clue count
    double sw = 0, swx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double w = model.cf_value(o.minimals[i].clue_count());
      sw += w;
      swx += w * xs[i];
    }
    CHECK(unbiased_mean(stats, 0, model) == doctest::Approx(swx / sw).epsilon(1e-12));
    double sdev = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int n = o.minimals[i].clue_count();
      const double d = xs[i] - *stats.mean(0, n);
      sdev += model.cf_value(n) * d * d;
    }
    CHECK(unbiased_sd(stats, 0, model) == doctest::Approx(std::sqrt(sdev / sw)).epsilon(1e-10));
    double stot = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = xs[i] - swx / sw;
      stot += model.cf_value(o.minimals[i].clue_count()) * d * d;
    }
    CHECK(unbiased_total_sd(stats, 0, model) == doctest::Approx(std::sqrt(stot / sw)).epsilon(1e-10));
  }

  TEST_CASE("clue histogram") {
    const int one[] = {26};
    const auto h1 = clue_histogram(one);
    CHECK(h1.on.size() == 1);
    CHECK(h1.on.at(26) == 1);
    CHECK(h1.percent(26) == doctest::Approx(100));
    const int many[] = {24, 25, 25, 26, 26, 26, 27};
    const auto h = clue_histogram(many);
    double total = 0;
    for (const auto& [n, c] : h.on) total += h.percent(n);
    CHECK(total == doctest::Approx(100));
    CHECK(h.modal() == 26);
    CHECK_THROWS_AS(clue_histogram({}).modal(), std::invalid_argument);
  }
}
