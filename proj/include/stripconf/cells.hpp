#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stripconf {

using Label = std::int64_t;
using Weight = std::int64_t;

struct WeightedLabel {
  Label label = 0;
  Weight weight = 1;
  friend auto operator<=>(const WeightedLabel&, const WeightedLabel&) = default;
};

/// Finite set of distinct positive labels with positive weights, kept in
/// ascending label order. That order is the fixed order a_1 < ... < a_n
/// used by the permutohedral complexes.
class WeightedSet {
 public:
  WeightedSet() = default;
  explicit WeightedSet(std::vector<WeightedLabel> items);
  static WeightedSet unit(const std::vector<Label>& labels);
  static WeightedSet range(Label n);  // {1..n}, unit weights

  const std::vector<WeightedLabel>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(Label a) const;
  Weight weight(Label a) const;  // throws InvalidInput if absent
  Weight total_weight() const;
  std::vector<Label> labels() const;
  Label max_label() const;  // 0 when empty

  WeightedSet with(WeightedLabel x) const;
  WeightedSet without(Label a) const;
  WeightedSet united(const WeightedSet& other) const;  // labels must be disjoint

  friend bool operator==(const WeightedSet&, const WeightedSet&) = default;
  friend auto operator<=>(const WeightedSet&, const WeightedSet&) = default;

 private:
  std::vector<WeightedLabel> items_;
};

/// A cell: an ordered sequence of labels cut into consecutive nonempty
/// blocks. Comparison is the canonical order: block-size sequence first,
/// then the flattened label sequence.
struct Cell {
  std::vector<std::uint32_t> blocks;
  std::vector<Label> labels;

  std::size_t block_count() const { return blocks.size(); }
  std::size_t dim() const { return labels.size() - blocks.size(); }
  std::vector<std::vector<Label>> split() const;
  static Cell from_blocks(const std::vector<std::vector<Label>>& blocks);

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept;
};

enum class ComplexKind { ordered, permutohedron };

/// cell(A, W, w) for `ordered`, P(A, W, w) for `permutohedron`.
struct ComplexSpec {
  WeightedSet set;
  Weight width = 0;
  ComplexKind kind = ComplexKind::ordered;

  static ComplexSpec cells(Label n, Weight w);
  static ComplexSpec cells(WeightedSet set, Weight w);
  static ComplexSpec permutohedron(WeightedSet set, Weight w);
  static ComplexSpec unrestricted(WeightedSet set, ComplexKind kind);

  bool admits(const Cell& c) const;
  void require(const Cell& c) const;  // throws InvalidInput naming the violation
  std::size_t top_degree() const;
  Weight wdim(const Cell& c) const;
  Weight wlength(const std::vector<Label>& block) const;
  std::string canonical() const;

  friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

/// Sign of rearranging the weighted sequence `from` into `to`: every pair
/// whose relative order flips contributes (-1)^{w_a w_b}.
int wsgn(const WeightedSet& set, const std::vector<Label>& from, const std::vector<Label>& to);
/// Same, with weights given positionally for `from` and `to` given as a
/// permutation of positions.
int wsgn_positions(const std::vector<Weight>& weights, const std::vector<std::size_t>& order);

/// Permutation of labels; labels not mentioned are fixed.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::map<Label, Label> images);
  static Permutation parse_cycles(std::string_view text);
  static Permutation from_one_line(const std::vector<Label>& domain, const std::vector<Label>& images);

  Label operator()(Label a) const;
  Permutation inverse() const;
  Permutation compose(const Permutation& after) const;  // after ∘ this
  const std::map<Label, Label>& images() const { return images_; }
  std::string to_cycles() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::map<Label, Label> images_;
};

/// Cells of the complex in geometric degree d (= #labels - #blocks), in
/// canonical order.
std::vector<Cell> enumerate_cells(const ComplexSpec& spec, std::size_t degree);
/// Exact cell count per degree without enumerating the cells.
std::vector<std::uint64_t> count_cells(const ComplexSpec& spec);
std::uint64_t total_cells(const ComplexSpec& spec);

std::string format_cell(const Cell& c);
Cell parse_cell(std::string_view text);
std::string format_weighted_set(const WeightedSet& s);
WeightedSet parse_weighted_set(std::string_view text);

/// Enumerates the facets of `c` as (facet, ±1), by block, then split size,
/// then the lexicographic choice of positions sent to the first half.
void for_each_facet(const ComplexSpec& spec, const Cell& c,
                    const std::function<void(Cell&&, int)>& emit);

}  // namespace stripconf
