#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minsudoku/board.hpp"
#include "minsudoku/exec.hpp"
#include "minsudoku/rng.hpp"

namespace minsudoku {

// Raw kernels working on a cells()-long array of values (0 = empty). Generators call
// these directly to stay allocation-free in their inner loops.
namespace kernel {

// Number of solutions, saturated at cap. The first solution found is written to
// `solution` when it is non-empty.
int count_solutions(int box_side, std::span<const std::uint8_t> values, int cap,
                    std::span<std::uint8_t> solution = {});

// Randomized backtracking fill of an empty board.
void random_fill(int box_side, Rng& rng, std::span<std::uint8_t> out);

}  // namespace kernel

// min(cap, number of solutions). Inconsistent puzzles have 0 solutions.
int count_solutions(const Puzzle& p, int cap);

// Unique solution, or nullopt when there are zero or several.
std::optional<Grid> unique_solution(const Puzzle& p);

// One and only one solution, and deleting any clue leaves several.
bool is_minimal(const Puzzle& p);

Grid random_complete_grid(Rng& rng, const Board& board);

// Exhaustive enumerations; only feasible for the 4x4 board. Both throw
// std::invalid_argument on a 9x9 board.
std::vector<Grid> enumerate_complete_grids(const Board& board);

// All minimal puzzles, grouped by solution grid in the order of
// enumerate_complete_grids. The OpenMP path returns the same sequence.
std::vector<Puzzle> enumerate_all_minimals(const Board& board, Exec exec = {});

// Minimal sub-puzzles of one grid, by depth-first deletion over the subset lattice.
std::vector<Puzzle> minimal_subpuzzles(const Grid& grid);

}  // namespace minsudoku
