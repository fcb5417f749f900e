#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minsudoku/batch.hpp"
#include "minsudoku/bias_stats.hpp"
#include "minsudoku/board.hpp"
#include "minsudoku/census.hpp"
#include "minsudoku/whip.hpp"

namespace minsudoku {

// Ordered "# key=value" header lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& out, std::string_view title, const Metadata& meta);

// Returns the value of `key`, or nullopt.
std::optional<std::string> find_meta(const Metadata& meta, std::string_view key);

// Sample file:
//   # <title line>
//   # key=value ...                      (kind, seed, board, count, ...)
//   puzzle TAB clues TAB grids_consumed  (one per record)
//   # total_grids_consumed=<sum>         (written once the batch is complete)
struct SampleRecord {
  Puzzle puzzle;
  int clues = 0;
  std::uint64_t grids_consumed = 0;
};

struct SampleFile {
  Metadata meta;
  std::vector<SampleRecord> records;
  std::optional<std::uint64_t> declared_total_grids;

  std::uint64_t total_grids() const;  // sum of the grids_consumed column
  std::optional<GeneratorKind> kind() const;
};

class SampleWriter {
 public:
  SampleWriter(std::ostream& out, const Metadata& meta);
  void write(const GenerationRecord& record);
  void finish();

 private:
  std::ostream* out_;
  std::uint64_t total_grids_ = 0;
};

// Throws ParseError with a line number on malformed input. The board comes from
// the "board" header (4 or 9) or is inferred from the first record.
SampleFile read_sample(std::istream& in);

// Rating file: puzzle TAB rating-or-"A" TAB partial_whip_count.
struct RatingLine {
  Puzzle puzzle;
  std::optional<int> rating;  // nullopt = above cap
  std::uint64_t partial_whips = 0;
};

void write_rating_line(std::ostream& out, const Puzzle& p, const RatingResult& r);
std::vector<RatingLine> read_ratings(std::istream& in);

// First tab-separated field of every non-comment line (sample, rating and plain
// puzzle files all qualify).
std::vector<Puzzle> read_puzzles(std::istream& in);

// One complete grid per line; '#' lines ignored.
std::vector<Grid> read_grids(std::istream& in);
void write_grids(std::ostream& out, const std::vector<Grid>& grids);

// Per-n table (n, on, %, cf, then E and sd of every variable) after key=value
// summaries. When `model` is null only raw estimates are written.
void write_stats_report(std::ostream& out, const SampleStats& stats, const BiasModel* model);

// Census table (n, on, count, rel_err, tries) plus a totals block, one line per
// supplied grid-count constant.
void write_census_report(std::ostream& out, const CensusEstimate& est,
                         const std::vector<std::pair<std::string, double>>& grid_constants);

}  // namespace minsudoku
