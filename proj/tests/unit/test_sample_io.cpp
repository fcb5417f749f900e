#include <doctest.h>

#include <sstream>

#include "minsudoku/sample_io.hpp"

using namespace minsudoku;

namespace {

std::string sample_text(std::uint64_t count, GeneratorKind kind, int box_side, bool finish = true) {
  std::ostringstream out;
  const Metadata meta = {{"kind", std::string(to_string(kind))}, {"seed", "5"}, {"board", box_side == 2 ? "4" : "9"}};
  SampleWriter w(out, meta);
  generate_batch(kind, count, 5, GridSource::standard(Board::of(box_side)), Exec::serial(),
                 [&](const GenerationRecord& r) { w.write(r); });
  if (finish) w.finish();
  return out.str();
}

}  // namespace

TEST_SUITE("sample_io") {
  TEST_CASE("sample round trip") {
    const auto text = sample_text(50, GeneratorKind::controlled_bias, 2);
    std::istringstream in(text);
    const auto f = read_sample(in);
    CHECK(f.records.size() == 50);
    CHECK(f.kind() == GeneratorKind::controlled_bias);
    CHECK(find_meta(f.meta, "seed") == "5");
    REQUIRE(f.declared_total_grids.has_value());
    CHECK(*f.declared_total_grids == f.total_grids());

    std::vector<std::string> expect;
    generate_batch(GeneratorKind::controlled_bias, 50, 5, GridSource::standard(Board::of(2)), Exec::serial(),
                   [&](const GenerationRecord& r) { expect.push_back(format_puzzle(r.puzzle)); });
    for (std::size_t i = 0; i < 50; ++i) {
      CHECK(format_puzzle(f.records[i].puzzle) == expect[i]);
      CHECK(f.records[i].clues == f.records[i].puzzle.clue_count());
    }
  }

  TEST_CASE("a truncated sample is still readable") {
    auto text = sample_text(20, GeneratorKind::top_down, 3, false);
    std::istringstream in(text);
    const auto f = read_sample(in);
    CHECK(f.records.size() == 20);
    CHECK_FALSE(f.declared_total_grids.has_value());
    CHECK(f.total_grids() == 20);
  }

  TEST_CASE("malformed samples") {
    const std::string head = "# minsudoku sample\n# kind=ctr-bias\n# board=4\n";
    auto bad = [&](const std::string& body) {
      std::istringstream in(head + body);
      CHECK_THROWS_AS(read_sample(in), ParseError);
    };
    bad("1...............\t1\n");                       // missing field
    bad("1...............\t2\t1\n");                    // clue count mismatch
    bad("1...............\tx\t1\n");                    // not a number
    bad(std::string(81, '.') + "\t0\t1\n");             // wrong board
    bad("1...............\t1\t1\n# total_grids_consumed=7\n");
    std::istringstream ok(head + "1...............\t1\t3\n\n# total_grids_consumed=3\n");
    CHECK(read_sample(ok).records.size() == 1);
    std::istringstream none("");
    CHECK(read_sample(none).records.empty());
  }

  TEST_CASE("rating lines") {
    std::ostringstream out;
    const Puzzle p = parse_puzzle("1...............");
    write_rating_line(out, p, RatingResult{3, {}, 17});
    write_rating_line(out, p, RatingResult{std::nullopt, {}, 4});
    CHECK(out.str() == "1...............\t3\t17\n1...............\tA\t4\n");
    std::istringstream in("# header\n" + out.str());
    const auto r = read_ratings(in);
    REQUIRE(r.size() == 2);
    CHECK(r[0].rating == 3);
    CHECK(r[0].partial_whips == 17);
    CHECK_FALSE(r[1].rating.has_value());
    std::istringstream bad("1...............\tB\t4\n");
    CHECK_THROWS_AS(read_ratings(bad), ParseError);
  }

  TEST_CASE("grid and puzzle files") {
    std::istringstream in("# grids\n1234341221434321\n");
    const auto grids = read_grids(in);
    REQUIRE(grids.size() == 1);
    std::ostringstream out;
    write_grids(out, grids);
    CHECK(out.str() == "1234341221434321\n");
    std::istringstream partial("1234341221434.21\n");
    CHECK_THROWS_AS(read_grids(partial), ParseError);
    std::istringstream puzzles("# x\n1...............\tanything\n..2.............\n");
    CHECK(read_puzzles(puzzles).size() == 2);
  }

  TEST_CASE("reports") {
    SampleStats s({"clues"});
    for (int n : {4, 5, 5, 6}) {
      const double v[] = {static_cast<double>(n)};
      s.add(n, v);
    }
    const BiasModel m(16, 5);
    std::ostringstream a;
    write_stats_report(a, s, &m);
    CHECK(a.str().find("clues.unbiased_mean=") != std::string::npos);
    CHECK(a.str().find("n\ton\tpercent\tcf\tE(clues)\tsd(clues)\n") != std::string::npos);
    CHECK(a.str().find("5\t2\t50.000\t1\t5\t0\n") != std::string::npos);
    std::ostringstream b;
    write_stats_report(b, s, nullptr);
    CHECK(b.str().find("unbiased") == std::string::npos);

    std::ostringstream c;
    const auto est = estimate_counts_per_grid({{4, 10}, {5, 20}}, 0.1, 16);
    write_census_report(c, est, {{"grids", 288}});
    CHECK(c.str().find("n\ton\tcount\trel_err\ttries\n") != std::string::npos);
    CHECK(c.str().find("total[grids]=") != std::string::npos);
  }
}
