// Serial reference vs OpenMP timings for the batch kernels. Each pair must agree.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "minsudoku/batch.hpp"
#include "minsudoku/solver.hpp"
#include "minsudoku/whip.hpp"

namespace ms = minsudoku;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> generate(ms::GeneratorKind kind, std::uint64_t n, const ms::GridSource& src,
                                  const ms::Exec& exec) {
  std::vector<std::string> out;
  ms::generate_batch(kind, n, 7, src, exec, [&](const ms::GenerationRecord& r) {
    out.push_back(ms::format_puzzle(r.puzzle));
  });
  return out;
}

bool report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s serial %8.3fs  openmp %8.3fs  speedup %5.2f  %s\n", name, serial, parallel, serial / parallel,
              same ? "match" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const int workers = argc > 1 ? std::atoi(argv[1]) : 0;
  const ms::Exec serial = ms::Exec::serial();
  const ms::Exec omp = ms::Exec::openmp(workers);
  std::printf("openmp threads: %d\n", omp.threads());
  bool ok = true;

  const ms::Board& b9 = ms::Board::of(3);
  const ms::Board& b4 = ms::Board::of(2);
  const auto src9 = ms::GridSource::backtracking(b9);
  const auto src4 = ms::GridSource::standard(b4);

  {
    std::vector<std::string> a, b;
    const double ts = seconds([&] { a = generate(ms::GeneratorKind::top_down, 500, src9, serial); });
    const double tp = seconds([&] { b = generate(ms::GeneratorKind::top_down, 500, src9, omp); });
    ok &= report("generate top-down 9x9 x500", ts, tp, a == b);
  }
  {
    std::vector<std::string> a, b;
    const double ts = seconds([&] { a = generate(ms::GeneratorKind::controlled_bias, 20000, src4, serial); });
    const double tp = seconds([&] { b = generate(ms::GeneratorKind::controlled_bias, 20000, src4, omp); });
    ok &= report("generate ctr-bias 4x4 x20000", ts, tp, a == b);
  }
  {
    std::vector<ms::Puzzle> puzzles;
    ms::generate_batch(ms::GeneratorKind::top_down, 100, 11, src9, omp,
                       [&](const ms::GenerationRecord& r) { puzzles.push_back(r.puzzle); });
    std::vector<int> a, b;
    auto collect = [](std::vector<int>& v) {
      return [&v](std::size_t, const std::optional<ms::RatingResult>& r) { v.push_back(r->rating.value_or(-1)); };
    };
    const double ts = seconds([&] { ms::rate_batch(puzzles, ms::kDefaultRatingCap, serial, collect(a)); });
    const double tp = seconds([&] { ms::rate_batch(puzzles, ms::kDefaultRatingCap, omp, collect(b)); });
    ok &= report("rate top-down 9x9 x100", ts, tp, a == b);
  }
  {
    std::vector<ms::Puzzle> a, b;
    const double ts = seconds([&] { a = ms::enumerate_all_minimals(b4, serial); });
    const double tp = seconds([&] { b = ms::enumerate_all_minimals(b4, omp); });
    ok &= report("enumerate 4x4 minimals", ts, tp, a == b);
  }
  return ok ? 0 : 1;
}
