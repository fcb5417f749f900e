#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "minsudoku/exec.hpp"
#include "minsudoku/generators.hpp"

namespace minsudoku {

struct BatchSummary {
  GeneratorKind kind = GeneratorKind::controlled_bias;
  std::uint64_t seed = 0;
  int box_side = 3;
  std::uint64_t count = 0;
  std::uint64_t total_grids_consumed = 0;
  std::map<int, std::uint64_t> on;  // clue count -> number of records

  void add(const GenerationRecord& record);
  // Histogram merge; associative and commutative.
  void merge(const BatchSummary& other);
};

using RecordSink = std::function<void(const GenerationRecord&)>;

// Record i is generated from derive_stream(seed, i), so the output sequence depends
// only on (kind, count, seed, source) and not on exec. Records reach the sink in
// index order. Bottom-up ignores the grid source apart from its board.
BatchSummary generate_batch(GeneratorKind kind, std::uint64_t count, std::uint64_t seed,
                            const GridSource& source, const Exec& exec, const RecordSink& sink = {});

GenerationRecord generate_record(GeneratorKind kind, std::uint64_t seed, std::uint64_t index,
                                 const GridSource& source);

}  // namespace minsudoku
