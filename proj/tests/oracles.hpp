#pragma once

// Independent reference computations and random generators for the tests.

#include "stripconf/algebra.hpp"
#include "stripconf/cells.hpp"
#include "stripconf/chains.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using stripconf::Integer;
using stripconf::Label;
using stripconf::Weight;

/// Rank of a dense integer matrix by Bareiss elimination.
std::size_t dense_rank(std::vector<std::vector<Integer>> rows);

/// Dense boundary matrix of the complex in the given degree, rows = cells of
/// degree-1, built from boundary_of_cell one column at a time.
std::vector<std::vector<Integer>> dense_boundary(const stripconf::ComplexSpec& spec, std::size_t degree);

/// Betti numbers from dense ranks.
std::vector<std::size_t> dense_betti(const stripconf::ComplexSpec& spec);

/// Cells per degree by brute force: every ordering of the labels with every
/// bar pattern, filtered by block weight. Ordered complexes only.
std::vector<std::uint64_t> brute_cell_counts(const stripconf::WeightedSet& set, Weight w);
/// Same for the permutohedron: ordered set partitions of the labels.
std::vector<std::uint64_t> brute_permutohedron_counts(const stripconf::WeightedSet& set, Weight w);

/// Unsigned Stirling numbers of the first kind c(n, k).
std::uint64_t stirling1(unsigned n, unsigned k);
/// Betti numbers of the ordered configuration space of n points in the plane.
std::vector<std::uint64_t> plane_betti(unsigned n);
/// Ordered set partitions of an n-set.
std::uint64_t fubini(unsigned n);
/// n! 2^{n-1}: cells of the unrestricted ordered complex (n ≥ 1).
std::uint64_t ordered_total(unsigned n);

// ----------------------------------------------------------------- random

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  long long between(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }
  bool coin() { return below(2) == 1; }

  /// Labels from 1..(2·size) with weights in 1..max_weight.
  stripconf::WeightedSet weighted_set(std::size_t size, Weight max_weight);
  /// A random admissible cell of the complex.
  stripconf::Cell cell(const stripconf::ComplexSpec& spec);
  stripconf::Cell cell(const stripconf::ComplexSpec& spec, std::size_t degree);
  /// Random combination of up to `terms` cells of one degree, small integer
  /// coefficients.
  stripconf::ChainVector chain(const stripconf::ComplexSpec& spec, std::size_t degree, std::size_t terms);
  std::vector<Label> shuffled(std::vector<Label> v);
  stripconf::Permutation permutation(const std::vector<Label>& domain);
  /// A random word of generators on the labels 1..n at width w.
  stripconf::GeneratorWord generator_word(std::size_t n, Weight w);
};

}  // namespace oracle
