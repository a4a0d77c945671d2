#pragma once

#include "stripconf/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stripconf {

struct IntEntry {
  std::uint32_t index;
  Integer value;
};
using IntVector = std::vector<IntEntry>;  // sorted by index, no zeros

struct RatEntry {
  std::size_t source;
  Rational value;
};
using Combination = std::vector<RatEntry>;  // sorted by source

/// Row echelon form over ℚ kept with integer entries. Each stored vector
/// has a distinct pivot (its least index); elimination is fraction-free
/// with content removal. Optionally every stored vector remembers how it
/// was combined from the inserted sources. A read-only base echelon may be
/// layered underneath; its vectors take part in every reduction.
class Echelon {
 public:
  explicit Echelon(std::size_t dimension, bool track = false, const Echelon* base = nullptr);

  /// Inserts a vector tagged with `source`. Returns true when it was
  /// independent of everything stored so far.
  bool insert(IntVector v, std::size_t source);

  struct Reduction {
    IntVector residual;       // zero at every pivot index
    Rational scale;           // residual = scale * input - sum(combination)
    Combination combination;  // over sources (only when tracking)
  };
  Reduction reduce(IntVector v) const;

  std::size_t rank() const;  // including the base
  bool is_pivot(std::uint32_t index) const { return row_for(index) != nullptr; }
  std::size_t own_rank() const { return rows_.size(); }
  std::size_t dimension() const { return dimension_; }
  bool tracking() const { return track_; }

  /// Functional vanishing on the span and equal to 1 on e_j for a
  /// non-pivot index j (dense, length = dimension).
  std::vector<Rational> annihilator(std::uint32_t j) const;

 private:
  struct Row {
    IntVector vec;
    Combination combo;
  };
  const Row* row_for(std::uint32_t index) const;
  void eliminate(IntVector& v, Rational* scale, Combination* combo, std::size_t& pos) const;

  std::size_t dimension_;
  bool track_;
  const Echelon* base_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_row_;
};

/// Rank of a column-stored integer matrix.
std::size_t integer_rank(std::size_t rows, const std::vector<IntVector>& columns);

/// Scales a rational dense-indexed sparse vector to integers.
IntVector to_integer_vector(const std::vector<std::pair<std::uint32_t, Rational>>& v, Integer& denominator);

}  // namespace stripconf
