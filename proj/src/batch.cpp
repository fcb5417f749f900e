#include "minsudoku/batch.hpp"

#include <array>
#include <stdexcept>

namespace minsudoku {

void BatchSummary::add(const GenerationRecord& record) {
  ++count;
  total_grids_consumed += record.grids_consumed;
  ++on[record.puzzle.clue_count()];
}

void BatchSummary::merge(const BatchSummary& other) {
  count += other.count;
  total_grids_consumed += other.total_grids_consumed;
  for (const auto& [n, c] : other.on) on[n] += c;
}

GenerationRecord generate_record(GeneratorKind kind, std::uint64_t seed, std::uint64_t index,
                                 const GridSource& source) {
  Rng rng = derive_stream(seed, index);
  const Board& board = source.board();
  GenerationRecord record = [&] {
    switch (kind) {
      case GeneratorKind::bottom_up:
        return bottom_up_one(rng, board);
      case GeneratorKind::top_down: {
        std::array<std::uint8_t, Board::kMaxCells> buf{};
        std::span<std::uint8_t> grid(buf.data(), static_cast<std::size_t>(board.cells()));
        source.draw(rng, grid);
        return top_down_one(rng, Grid(Puzzle(board, grid)));
      }
      case GeneratorKind::controlled_bias:
        return controlled_bias_one(rng, source);
    }
    throw std::invalid_argument("unknown generator kind");
  }();
  record.provenance = {seed, index};
  return record;
}

BatchSummary generate_batch(GeneratorKind kind, std::uint64_t count, std::uint64_t seed,
                            const GridSource& source, const Exec& exec, const RecordSink& sink) {
  BatchSummary summary;
  summary.kind = kind;
  summary.seed = seed;
  summary.box_side = source.board().box_side();
  run_ordered<GenerationRecord>(
      count, exec, [&](std::size_t i) { return generate_record(kind, seed, i, source); },
      [&](std::size_t, const GenerationRecord& record) {
        summary.add(record);
        if (sink) sink(record);
      });
  return summary;
}

}  // namespace minsudoku
