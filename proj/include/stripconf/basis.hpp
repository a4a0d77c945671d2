#pragma once

#include "stripconf/cycles.hpp"
#include "stripconf/homology.hpp"

#include <vector>

namespace stripconf {

enum class BasisKind { AM, AMW };

/// Admissible words of homological degree k on labels 1..n, in the
/// canonical word order.
std::vector<GeneratorWord> enumerate_basis(std::size_t n, Weight w, std::size_t k, BasisKind kind);
/// Same on an arbitrary label set.
std::vector<GeneratorWord> enumerate_basis(const std::vector<Label>& labels, Weight w, std::size_t k, BasisKind kind);

/// Whether a word satisfies the adjacency and ordering rules of the basis
/// (factor shapes included).
bool is_basis_word(const GeneratorWord& word, Weight w, BasisKind kind);

std::vector<ChainVector> basis_cycles(const std::vector<GeneratorWord>& words, Weight w);

struct BasisReport {
  std::size_t n = 0;
  Weight w = 0;
  std::size_t k = 0;
  BasisKind kind = BasisKind::AMW;
  std::size_t count = 0;
  std::size_t betti = 0;
  std::size_t rank = 0;  // rank of the cycles modulo boundaries
  bool passes() const { return count == betti && rank == count; }
};
BasisReport verify_basis(std::size_t n, Weight w, std::size_t k, BasisKind kind, HomologyEngine& engine = default_engine());

/// Complexity order: products of two wheels, then filters by wheel count;
/// ties broken by the textual form.
bool complexity_less(const GeneratorWord& a, const GeneratorWord& b);

struct BasisChange {
  std::vector<GeneratorWord> am;   // columns, complexity order
  std::vector<GeneratorWord> amw;  // rows, paired with the column of the same index
  std::vector<std::vector<Rational>> matrix;  // amw[i] = Σ_j matrix[i][j] am[j]
  bool lower_triangular() const;
  bool unit_diagonal() const;
  bool unit_lower_triangular() const { return lower_triangular() && unit_diagonal(); }
};
/// Expresses the AMW basis in the AM basis. Rows are paired with columns by
/// merging each rank-increasing wheel pair into a two-wheel filter and
/// each averaged filter into the plain filter on the same wheels.
BasisChange basis_change(std::size_t n, Weight w, std::size_t k, HomologyEngine& engine = default_engine());
GeneratorWord am_partner(const GeneratorWord& amw_word);

}  // namespace stripconf
