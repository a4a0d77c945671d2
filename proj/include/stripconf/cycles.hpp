#pragma once

#include "stripconf/chains.hpp"
#include "stripconf/maps.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stripconf {

// ------------------------------------------------------------------- trees

/// Binary tree recording how a wheel unwinds: a node spins its composite
/// label into (left, right).
class WheelTree {
 public:
  static WheelTree leaf(Label a, Weight w = 1);
  static WheelTree node(WheelTree left, WheelTree right);
  /// W(i1..in): the left comb, peeling the last label at every step.
  static WheelTree proper(const std::vector<Label>& labels);

  bool is_leaf() const { return !left_; }
  const WheelTree& left() const { return *left_; }
  const WheelTree& right() const { return *right_; }
  WeightedLabel leaf_label() const { return leaf_; }
  Weight weight() const { return weight_; }
  std::vector<WeightedLabel> leaves() const;
  bool is_proper() const;
  std::string to_string() const;

  /// Steps spinning a label `root` of this weight down to the leaves;
  /// internal nodes get fresh labels starting at `next_fresh`.
  SpinProgram program(Label root, Label& next_fresh) const;

 private:
  WeightedLabel leaf_{};
  Weight weight_ = 1;
  std::shared_ptr<const WheelTree> left_, right_;
};

// ------------------------------------------------------------------- words

/// Proper wheel W(i1,...,in). The first label is the axle.
struct Wheel {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  Label largest() const;
  bool largest_first() const;
  friend auto operator<=>(const Wheel&, const Wheel&) = default;
};

/// Rank: more disks wins, then the larger largest label.
bool outranks(const Wheel& a, const Wheel& b);

enum class FilterKind { plain, averaged };

struct FilterFactor {
  FilterKind kind = FilterKind::averaged;
  std::vector<Wheel> wheels;
  std::size_t size() const;  // total disks
  friend auto operator<=>(const FilterFactor&, const FilterFactor&) = default;
};

using Factor = std::variant<Wheel, FilterFactor>;

struct GeneratorWord {
  std::vector<Factor> factors;
  std::vector<Label> labels() const;
  std::size_t degree() const;  // homological degree of the cycle
  friend auto operator<=>(const GeneratorWord&, const GeneratorWord&) = default;
};

using WordCombination = std::map<GeneratorWord, Rational>;

void add_term(WordCombination& acc, const GeneratorWord& w, const Rational& q);
WordCombination scaled(const WordCombination& x, const Rational& s);

std::string format_wheel(const Wheel& w);
std::string format_factor(const Factor& f);
std::string format_word(const GeneratorWord& w);
std::string format_combination(const WordCombination& x);
GeneratorWord parse_word(std::string_view text);
WordCombination parse_combination(std::string_view text);

// -------------------------------------------------------------- admissibility

/// Filters need ≥ 2 wheels, width ≥ 2, disjoint labels, and every sum of
/// all but one of the wheel sizes ≤ w.
bool filter_admissible(const std::vector<Weight>& sizes, Weight width);
void require_filter_admissible(const std::vector<Weight>& sizes, Weight width);
bool filter_nontrivial(const std::vector<Weight>& sizes, Weight width);

// -------------------------------------------------------------- cycle chains

ChainVector wheel_cycle(const WheelTree& tree, Weight width);
ChainVector wheel_cycle(const Wheel& wheel, Weight width);
/// F(W1..Wm) (plain) or AF(W1..Wm) (averaged): ∂ of the top permutohedral
/// cell on the wheels (listed order), through i_id or q, then the spins;
/// scaled by (-1)^{n_1}.
ChainVector filter_cycle(const std::vector<WheelTree>& wheels, Weight width, FilterKind kind);
ChainVector filter_cycle(const FilterFactor& f, Weight width);
ChainVector factor_cycle(const Factor& f, Weight width);
ChainVector word_cycle(const GeneratorWord& w, Weight width);
/// Σ q·word_cycle; all words must share one label set and degree.
ChainVector combination_cycle(const WordCombination& x, Weight width);

/// ∂ of the top cell of P(U, {n}, unrestricted) on labels `ids` (ascending).
ChainVector top_boundary(const WeightedSet& wheels);

/// Thread-safe memo of word cycles keyed by (word, width).
class CycleCache {
 public:
  ChainVector get(const GeneratorWord& w, Weight width);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<GeneratorWord, Weight>, ChainVector> memo_;
};

// ------------------------------------------------------------- permutations

/// -1, 0, 1 as a < b, equal, a > b lexicographically.
int lex_compare(const std::vector<Label>& a, const std::vector<Label>& b);

/// Cuts the word into wheels: each running maximum (axle) starts a wheel.
std::vector<std::vector<Label>> wheel_decomposition(const std::vector<Label>& sigma);
/// Orbit of σ under reordering its wheels, lexicographically sorted.
std::vector<std::vector<Label>> orbit_S(const std::vector<Label>& sigma);
/// (A - #σ, W(σ)): one label per wheel, namely its axle, weighted by size.
WeightedSet wheel_weights(const std::vector<Label>& sigma);
/// spin_σ : cell(A-#σ, W(σ), w) -> cell(A, w).
SpinProgram spin_sigma(const std::vector<Label>& sigma);
/// spin_{τ,σ} : cell(A-#τ, W(τ), w) -> cell(A-#σ, W(σ), w) for τ ∈ S(σ).
SpinProgram spin_tau_sigma(const std::vector<Label>& tau, const std::vector<Label>& sigma);

}  // namespace stripconf
