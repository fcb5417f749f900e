// minsudoku: generate, rate, analyse and enumerate minimal Sudoku puzzles.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "minsudoku/batch.hpp"
#include "minsudoku/bias_stats.hpp"
#include "minsudoku/census.hpp"
#include "minsudoku/generators.hpp"
#include "minsudoku/sample_io.hpp"
#include "minsudoku/solver.hpp"
#include "minsudoku/whip.hpp"

namespace ms = minsudoku;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const ms::Board& board_for(int side) {
  if (side == 4) return ms::Board::of(2);
  if (side == 9) return ms::Board::of(3);
  throw UsageError("--board must be 4 or 9");
}

int default_anchor(int side) { return side == 4 ? 5 : 26; }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  return in;
}

ms::Exec exec_for(int workers) {
  if (workers < 0) throw UsageError("--workers must be >= 1");
  return ms::Exec::openmp(workers);
}

// Common flags echoed into every output header.
ms::Metadata base_meta(const std::string& command) { return {{"command", command}}; }

// ---- generate

struct GenerateArgs {
  std::string kind;
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
  int workers = 0;
  int board = 9;
  std::string grids;
  std::string out = "-";
  std::uint64_t progress = 0;
};

int cmd_generate(const GenerateArgs& a) {
  ms::GeneratorKind kind;
  try {
    kind = ms::parse_generator_kind(a.kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.count < 1) throw UsageError("--count must be >= 1");
  const ms::Board& board = board_for(a.board);
  const ms::Exec exec = exec_for(a.workers);

  std::optional<ms::GridSource> source;
  if (!a.grids.empty()) {
    auto in = open_input(a.grids);
    auto grids = ms::read_grids(in);
    if (grids.empty()) throw DataError(a.grids + ": no grids");
    if (&grids.front().board() != &board) throw DataError(a.grids + ": grids do not match --board");
    source.emplace(ms::GridSource::catalog(std::move(grids), "file:" + a.grids));
  } else {
    source.emplace(ms::GridSource::standard(board));
  }

  ms::Metadata meta = base_meta("generate");
  meta.insert(meta.end(), {{"kind", std::string(ms::to_string(kind))},
                           {"count", std::to_string(a.count)},
                           {"seed", std::to_string(a.seed)},
                           {"board", std::to_string(a.board)},
                           {"workers", std::to_string(exec.threads())},
                           {"grids", source->description()}});
  Output out(a.out);
  ms::SampleWriter writer(out.stream(), meta);
  std::uint64_t done = 0;
  const auto summary = ms::generate_batch(kind, a.count, a.seed, *source, exec, [&](const ms::GenerationRecord& r) {
    writer.write(r);
    if (a.progress && ++done % a.progress == 0) {
      std::cerr << "generated " << done << " / " << a.count << '\n';
      out.stream().flush();
    }
  });
  writer.finish();
  std::cerr << "records=" << summary.count << " total_grids_consumed=" << summary.total_grids_consumed << '\n';
  return 0;
}

// ---- rate

struct RateArgs {
  std::string in;
  int cap = ms::kDefaultRatingCap;
  int workers = 0;
  std::string out = "-";
};

int cmd_rate(const RateArgs& a) {
  if (a.cap < 0 || a.cap > 64) throw UsageError("--cap must be in [0, 64]");
  const ms::Exec exec = exec_for(a.workers);
  auto in = open_input(a.in);
  const auto puzzles = ms::read_puzzles(in);

  ms::Metadata meta = base_meta("rate");
  meta.insert(meta.end(), {{"input", a.in}, {"cap", std::to_string(a.cap)}, {"workers", std::to_string(exec.threads())}});
  Output out(a.out);
  ms::write_header(out.stream(), "minsudoku ratings", meta);

  std::map<int, std::uint64_t> levels;
  std::uint64_t above = 0, warnings = 0;
  ms::rate_batch(puzzles, a.cap, exec, [&](std::size_t i, const std::optional<ms::RatingResult>& r) {
    if (!r) {
      ++warnings;
      std::cerr << "warning: puzzle " << i + 1 << " does not have a unique solution; skipped\n";
      return;
    }
    ms::write_rating_line(out.stream(), puzzles[i], *r);
    if (r->rating) {
      ++levels[*r->rating];
    } else {
      ++above;
    }
  });
  const std::uint64_t rated = puzzles.size() - warnings;
  std::cerr << "rated=" << rated << " warnings=" << warnings << '\n';
  std::cerr << "level\tcount\tpercent\n";
  auto pct = [&](std::uint64_t c) { return rated ? 100.0 * static_cast<double>(c) / static_cast<double>(rated) : 0.0; };
  for (const auto& [level, c] : levels) std::fprintf(stderr, "%d\t%llu\t%.2f\n", level, static_cast<unsigned long long>(c), pct(c));
  if (above) std::fprintf(stderr, "A\t%llu\t%.2f\n", static_cast<unsigned long long>(above), pct(above));
  return 0;
}

// ---- stats

struct StatsArgs {
  std::string sample;
  std::string ratings;
  std::optional<int> anchor;
  std::string out = "-";
};

int cmd_stats(const StatsArgs& a) {
  auto in = open_input(a.sample);
  const ms::SampleFile sample = ms::read_sample(in);
  if (sample.records.empty()) throw DataError(a.sample + ": empty sample");
  const ms::Board& board = sample.records.front().puzzle.board();
  const int anchor = a.anchor.value_or(default_anchor(board.side()));
  if (anchor < 0 || anchor > board.cells()) throw UsageError("--anchor outside [0, cells]");
  const bool corrected = sample.kind() == ms::GeneratorKind::controlled_bias;

  std::unordered_map<std::string, std::optional<int>> rating_of;
  if (!a.ratings.empty()) {
    auto rin = open_input(a.ratings);
    for (auto& r : ms::read_ratings(rin)) rating_of[ms::format_puzzle(r.puzzle)] = r.rating;
  }

  ms::SampleStats base({"clues", "grids_consumed"});
  ms::SampleStats rated({"nrczt"});
  std::uint64_t above = 0, unrated = 0;
  for (const auto& rec : sample.records) {
    const double v[] = {static_cast<double>(rec.clues), static_cast<double>(rec.grids_consumed)};
    base.add(rec.clues, v);
    if (a.ratings.empty()) continue;
    auto it = rating_of.find(ms::format_puzzle(rec.puzzle));
    if (it == rating_of.end()) {
      ++unrated;
    } else if (!it->second) {
      ++above;
    } else {
      const double r[] = {static_cast<double>(*it->second)};
      rated.add(rec.clues, r);
    }
  }

  const ms::BiasModel model(board.cells(), anchor);
  const ms::BiasModel* m = corrected ? &model : nullptr;
  ms::Metadata meta = base_meta("stats");
  meta.insert(meta.end(), {{"sample", a.sample},
                           {"ratings", a.ratings.empty() ? "-" : a.ratings},
                           {"anchor", std::to_string(anchor)},
                           {"kind", std::string(ms::find_meta(sample.meta, "kind").value_or("unknown"))},
                           {"corrected", corrected ? "yes" : "no (only controlled-bias samples can be corrected)"}});
  Output out(a.out);
  ms::write_header(out.stream(), "minsudoku stats", meta);
  ms::write_stats_report(out.stream(), base, m);
  if (!a.ratings.empty()) {
    out.stream() << "nrczt.above_cap=" << above << "\nnrczt.unrated=" << unrated << '\n';
    if (rated.total() > 0) ms::write_stats_report(out.stream(), rated, m);
  }
  return 0;
}

// ---- census

struct CensusArgs {
  std::string sample;
  std::vector<std::string> grid_counts;
  std::string out = "-";
};

int cmd_census(const CensusArgs& a) {
  auto in = open_input(a.sample);
  const ms::SampleFile sample = ms::read_sample(in);
  if (sample.kind() != ms::GeneratorKind::controlled_bias) {
    throw DataError(a.sample + ": census estimates need a ctr-bias sample");
  }
  if (sample.records.empty()) throw DataError(a.sample + ": empty sample");
  const ms::Board& board = sample.records.front().puzzle.board();

  std::vector<std::pair<std::string, double>> constants;
  for (const auto& spec : a.grid_counts) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--grid-count expects NAME=VALUE");
    try {
      constants.emplace_back(spec.substr(0, eq), std::stod(spec.substr(eq + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("--grid-count expects NAME=VALUE");
    }
  }
  if (a.grid_counts.empty()) {
    if (board.box_side() == 3) {
      constants = {{"complete_grids", ms::kComplete9x9Grids},
                   {"essentially_different_grids", ms::kEssentiallyDifferent9x9Grids}};
    } else {
      constants = {{"complete_grids", ms::kComplete4x4Grids}};
    }
  }

  std::map<int, std::uint64_t> on;
  for (const auto& rec : sample.records) ++on[rec.clues];
  const double s = ms::estimate_success_rate(sample.records.size(), sample.total_grids());
  const auto est = ms::estimate_counts_per_grid(on, s, board.cells());

  ms::Metadata meta = base_meta("census");
  meta.emplace_back("sample", a.sample);
  meta.emplace_back("total_grids_consumed", std::to_string(sample.total_grids()));
  Output out(a.out);
  ms::write_header(out.stream(), "minsudoku census", meta);
  ms::write_census_report(out.stream(), est, constants);
  return 0;
}

// ---- oracle

struct OracleArgs {
  int board = 4;
  std::string dir = ".";
  int workers = 0;
};

int cmd_oracle(const OracleArgs& a) {
  if (a.board == 9) {
    throw UsageError(
        "--board 9 is infeasible: 6,670,903,752,021,072,936,960 complete grids cannot be enumerated");
  }
  const ms::Board& board = board_for(a.board);
  const ms::Exec exec = exec_for(a.workers);
  std::filesystem::create_directories(a.dir);
  const auto grids = ms::enumerate_complete_grids(board);
  const auto minimals = ms::enumerate_all_minimals(board, exec);

  ms::Metadata meta = base_meta("oracle");
  meta.emplace_back("board", std::to_string(a.board));
  const auto dir = std::filesystem::path(a.dir);

  Output g((dir / "grids.txt").string());
  ms::write_header(g.stream(), "minsudoku complete grids", meta);
  ms::write_grids(g.stream(), grids);

  std::map<int, std::uint64_t> counts;
  Output m((dir / "minimals.txt").string());
  ms::write_header(m.stream(), "minsudoku minimal puzzles", meta);
  for (const auto& p : minimals) {
    m.stream() << ms::format_puzzle(p) << '\t' << p.clue_count() << '\n';
    ++counts[p.clue_count()];
  }

  Output c((dir / "counts.tsv").string());
  ms::write_header(c.stream(), "minsudoku minimal puzzle counts", meta);
  c.stream() << "n\tcount\tper_grid\n";
  for (const auto& [n, k] : counts) {
    c.stream() << n << '\t' << k << '\t' << static_cast<double>(k) / static_cast<double>(grids.size()) << '\n';
  }
  std::cerr << "grids=" << grids.size() << " minimals=" << minimals.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, rate and analyse minimal Sudoku puzzles"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a sample of minimal puzzles");
  g->add_option("--kind", gen.kind, "bottom-up, top-down or ctr-bias")->required();
  g->add_option("--count", gen.count, "Number of puzzles")->required();
  g->add_option("--seed", gen.seed, "Master seed");
  g->add_option("--workers", gen.workers, "Worker threads (default: all)");
  g->add_option("--board", gen.board, "4 or 9")->check(CLI::IsMember({4, 9}));
  g->add_option("--grids", gen.grids, "File of complete grids to draw from");
  g->add_option("--out,-o", gen.out, "Output file (default stdout)");
  g->add_option("--progress", gen.progress, "Report to stderr every N records");

  RateArgs rate;
  auto* r = app.add_subcommand("rate", "Rate the puzzles of a sample with the NRCZT rating");
  r->add_option("input", rate.in, "Sample or puzzle file")->required();
  r->add_option("--cap", rate.cap, "Longest whip tried; harder puzzles are rated A");
  r->add_option("--workers", rate.workers, "Worker threads (default: all)");
  r->add_option("--out,-o", rate.out, "Output file (default stdout)");

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Raw and bias-corrected statistics of a sample");
  s->add_option("sample", stats.sample, "Sample file")->required();
  s->add_option("--ratings", stats.ratings, "Rating file for the same puzzles");
  s->add_option("--anchor", stats.anchor, "Clue count with cf = 1 (default 26 on 9x9, 5 on 4x4)");
  s->add_option("--out,-o", stats.out, "Output file (default stdout)");

  CensusArgs census;
  auto* c = app.add_subcommand("census", "Estimate the number of minimal puzzles from a ctr-bias sample");
  c->add_option("sample", census.sample, "Controlled-bias sample file")->required();
  c->add_option("--grid-count", census.grid_counts, "NAME=VALUE grid count for the totals block (repeatable)");
  c->add_option("--out,-o", census.out, "Output file (default stdout)");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Enumerate every grid and minimal puzzle of the 4x4 board");
  o->add_option("--board", oracle.board, "Only 4 is feasible");
  o->add_option("--dir", oracle.dir, "Output directory");
  o->add_option("--workers", oracle.workers, "Worker threads (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (g->parsed()) return cmd_generate(gen);
    if (r->parsed()) return cmd_rate(rate);
    if (s->parsed()) return cmd_stats(stats);
    if (c->parsed()) return cmd_census(census);
    if (o->parsed()) return cmd_oracle(oracle);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
