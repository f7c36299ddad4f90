#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wallx/blockO.hpp"

namespace wallx {

// Seeded module families shared by the verification suites and the tests.
// All randomness is drawn from std::mt19937_64 by plain modular reduction,
// so a seed gives the same corpus on every platform.

BlockModule random_basis_change(const BlockModule& m, std::mt19937_64& rng);
// d = 1, slice dimensions at most max_slice; strict modules have AB = 0.
BlockModule random_single_factor(std::mt19937_64& rng, std::size_t max_slice, bool strict);
// Random submodule generated by a few random vectors.
Subspaces random_submodule(const BlockModule& m, std::mt19937_64& rng, std::size_t gens);

// The d = 1 patterns understood by both backends, with their expression names.
std::vector<std::pair<std::string, BlockModule>> shared_patterns();

std::vector<BlockModule> single_factor_corpus(std::uint64_t seed, std::size_t size, std::size_t max_total = 12,
                                              bool strict_only = false);
// Strict two-factor modules with every slice of dimension at most max_cell.
std::vector<BlockModule> two_factor_corpus(std::uint64_t seed, std::size_t size, std::size_t max_cell = 10);

}  // namespace wallx
