#include "minsudoku/sample_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace minsudoku {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_tabs(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find('\t', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

// "# key=value" -> (key, value); other comment lines -> nullopt.
std::optional<std::pair<std::string, std::string>> parse_meta_line(std::string_view line) {
  line.remove_prefix(1);
  while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || eq == 0 || line.find(' ') < eq) return std::nullopt;
  return std::pair{std::string(line.substr(0, eq)), std::string(line.substr(eq + 1))};
}

const Board* board_from_meta(const Metadata& meta) {
  auto b = find_meta(meta, "board");
  if (!b) return nullptr;
  if (*b == "4") return &Board::of(2);
  if (*b == "9") return &Board::of(3);
  throw ParseError("unsupported board '" + *b + "'");
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void write_header(std::ostream& out, std::string_view title, const Metadata& meta) {
  out << "# " << title << '\n';
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

std::optional<std::string> find_meta(const Metadata& meta, std::string_view key) {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::uint64_t SampleFile::total_grids() const {
  std::uint64_t t = 0;
  for (const auto& r : records) t += r.grids_consumed;
  return t;
}

std::optional<GeneratorKind> SampleFile::kind() const {
  auto k = find_meta(meta, "kind");
  if (!k) return std::nullopt;
  return parse_generator_kind(*k);
}

SampleWriter::SampleWriter(std::ostream& out, const Metadata& meta) : out_(&out) {
  write_header(out, "minsudoku sample", meta);
}

void SampleWriter::write(const GenerationRecord& record) {
  total_grids_ += record.grids_consumed;
  *out_ << format_puzzle(record.puzzle) << '\t' << record.puzzle.clue_count() << '\t' << record.grids_consumed
        << '\n';
}

void SampleWriter::finish() {
  *out_ << "# total_grids_consumed=" << total_grids_ << '\n';
  out_->flush();
}

SampleFile read_sample(std::istream& in) {
  SampleFile file;
  const Board* board = nullptr;
  bool board_checked = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim_cr(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto kv = parse_meta_line(line)) {
        if (kv->first == "total_grids_consumed") {
          auto v = parse_number<std::uint64_t>(kv->second);
          if (!v) fail(line_no, "bad total_grids_consumed");
          file.declared_total_grids = *v;
        } else {
          file.meta.push_back(std::move(*kv));
        }
      }
      continue;
    }
    if (!board_checked) {
      board = board_from_meta(file.meta);
      board_checked = true;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3) fail(line_no, "expected 3 tab-separated fields");
    SampleRecord rec{.puzzle = [&] {
      try {
        return board ? parse_puzzle(fields[0], *board) : parse_puzzle(fields[0]);
      } catch (const ParseError& e) {
        fail(line_no, e.what());
      }
    }()};
    auto clues = parse_number<int>(fields[1]);
    auto grids = parse_number<std::uint64_t>(fields[2]);
    if (!clues || !grids) fail(line_no, "bad clue count or grids_consumed");
    if (*clues != rec.puzzle.clue_count()) fail(line_no, "clue count column disagrees with the puzzle");
    rec.clues = *clues;
    rec.grids_consumed = *grids;
    if (!board) board = &rec.puzzle.board();
    if (&rec.puzzle.board() != board) fail(line_no, "mixed board sizes");
    file.records.push_back(std::move(rec));
  }
  if (file.declared_total_grids && *file.declared_total_grids != file.total_grids()) {
    throw ParseError("total_grids_consumed does not match the record column");
  }
  return file;
}

void write_rating_line(std::ostream& out, const Puzzle& p, const RatingResult& r) {
  out << format_puzzle(p) << '\t';
  if (r.rating) {
    out << *r.rating;
  } else {
    out << 'A';
  }
  out << '\t' << r.partial_whip_count << '\n';
}

std::vector<RatingLine> read_ratings(std::istream& in) {
  std::vector<RatingLine> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) fail(line_no, "expected 3 tab-separated fields");
    Puzzle puzzle = [&] {
      try {
        return parse_puzzle(fields[0]);
      } catch (const ParseError& e) {
        fail(line_no, e.what());
      }
    }();
    RatingLine r{std::move(puzzle), std::nullopt, 0};
    if (fields[1] != "A") {
      r.rating = parse_number<int>(fields[1]);
      if (!r.rating) fail(line_no, "bad rating");
    }
    auto pw = parse_number<std::uint64_t>(fields[2]);
    if (!pw) fail(line_no, "bad partial whip count");
    r.partial_whips = *pw;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Puzzle> read_puzzles(std::istream& in) {
  std::vector<Puzzle> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back(parse_puzzle(line.substr(0, line.find('\t'))));
    } catch (const ParseError& e) {
      fail(line_no, e.what());
    }
  }
  return out;
}

std::vector<Grid> read_grids(std::istream& in) {
  std::vector<Grid> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    line = line.substr(0, line.find('\t'));
    try {
      Puzzle p = parse_puzzle(line);
      if (!p.complete()) fail(line_no, "grid has empty cells");
      if (!out.empty() && &out.front().board() != &p.board()) fail(line_no, "mixed board sizes");
      out.emplace_back(std::move(p));
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      fail(line_no, e.what());
    }
  }
  return out;
}

void write_grids(std::ostream& out, const std::vector<Grid>& grids) {
  for (const auto& g : grids) out << format_puzzle(g.puzzle()) << '\n';
}

void write_stats_report(std::ostream& out, const SampleStats& stats, const BiasModel* model) {
  const auto& vars = stats.variables();
  out << "records=" << stats.total() << '\n';
  if (model) out << "anchor=" << model->anchor() << '\n';
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const int i = static_cast<int>(v);
    out << vars[v] << ".raw_mean=" << fmt(raw_mean(stats, i)) << '\n';
    out << vars[v] << ".raw_sd=" << fmt(raw_sd(stats, i)) << '\n';
    if (model) {
      out << vars[v] << ".unbiased_mean=" << fmt(unbiased_mean(stats, i, *model)) << '\n';
      out << vars[v] << ".unbiased_mean_se=" << fmt(unbiased_mean_standard_error(stats, i, *model)) << '\n';
      out << vars[v] << ".unbiased_sd=" << fmt(unbiased_sd(stats, i, *model)) << '\n';
      out << vars[v] << ".unbiased_total_sd=" << fmt(unbiased_total_sd(stats, i, *model)) << '\n';
    }
  }
  out << "n\ton\tpercent\tcf";
  for (const auto& name : vars) out << "\tE(" << name << ")\tsd(" << name << ')';
  out << '\n';
  const double total = static_cast<double>(stats.total());
  for (int n : stats.clue_counts()) {
    out << n << '\t' << stats.on(n) << '\t' << fmt(100.0 * static_cast<double>(stats.on(n)) / total, "%.3f") << '\t'
        << (model ? fmt(model->cf_value(n)) : std::string("-"));
    for (std::size_t v = 0; v < vars.size(); ++v) {
      out << '\t' << fmt(*stats.mean(static_cast<int>(v), n)) << '\t' << fmt(*stats.sd(static_cast<int>(v), n));
    }
    out << '\n';
  }
}

void write_census_report(std::ostream& out, const CensusEstimate& est,
                         const std::vector<std::pair<std::string, double>>& grid_constants) {
  out << "outputs=" << est.total_outputs << '\n';
  out << "success_rate=" << fmt(est.success_rate, "%.6e") << '\n';
  out << "n\ton\tcount\trel_err\ttries\n";
  for (const auto& [n, row] : est.rows) {
    out << n << '\t' << row.on << '\t' << fmt(row.count, "%.5e") << '\t' << fmt(100.0 * row.rel_err, "%.3f") << "%\t"
        << fmt(row.tries, "%.5e") << '\n';
  }
  out << "per_grid_total=" << fmt(est.per_grid_total(), "%.5e") << '\n';
  out << "per_grid_total_rel_err=" << fmt(100.0 * est.per_grid_total_rel_err(), "%.3f") << "%\n";
  for (const auto& [name, grids] : grid_constants) {
    const auto t = totals(est, grids);
    out << "total[" << name << "]=" << fmt(t.total, "%.5e") << "\tgrids=" << fmt(grids, "%.10g") << '\n';
  }
}

}  // namespace minsudoku
