#pragma once

#include "stripconf/basis.hpp"
#include "stripconf/cycles.hpp"
#include "stripconf/homology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stripconf {

// ------------------------------------------------------------------ action

/// Σ a_j W_j over largest-first wheels on the same labels, homologous to
/// the wheel as listed. Coefficients are solved once per label pattern.
WordCombination properize_wheel(const Wheel& wheel);

/// Relabels every factor, then rewrites non-proper wheels into largest-first
/// form and sorts averaged-filter wheels into increasing rank.
WordCombination act(const Permutation& sigma, const WordCombination& x);
WordCombination act(const Permutation& sigma, const GeneratorWord& x);

/// Sign s with AF(wheels in `order`) = s·AF(wheels).
int averaged_filter_reorder_sign(const std::vector<Wheel>& wheels, const std::vector<std::size_t>& order);

// --------------------------------------------------------------- relations

enum class RelationFamily { R1, R2, R3, R4, R5 };
std::string to_string(RelationFamily f);
RelationFamily parse_relation_family(std::string_view text);

/// Coefficients of Σ a_k U_k|AF(rest_k) + Σ b_k AF(rest_k)|U_k ≡ 0.
struct ExchangeCoefficients {
  std::vector<Weight> sizes;
  std::vector<int> a, b;          // with the library's filter orientation
  std::vector<int> raw_a, raw_b;  // with AF read as the bare image of ∂(top cell)
  std::vector<int> closed_a, closed_b;
  /// Σ closed_a U_k|AF = Σ closed_b AF|U_k agrees with the computed
  /// relation term by term up to the orientation of each filter: the
  /// products a_k·b_k agree.
  bool closed_forms_match() const;
  /// Agreement of the raw coefficients up to one global sign.
  bool closed_forms_exact() const;
};
/// The wheels must be listed in increasing rank.
ExchangeCoefficients exchange_coefficients(const std::vector<Wheel>& wheels);

struct RelationInstance {
  RelationFamily family = RelationFamily::R1;
  Weight width = 0;
  std::string data;  // human-readable instantiation
  WordCombination lhs, rhs;
  std::optional<ExchangeCoefficients> exchange;  // R5 only
  WordCombination difference() const;
};

/// R1: the wheel against its largest-first expansion.
RelationInstance proper_wheel_relation(const Wheel& wheel, Weight width);
/// R2: X|Y = (-1)^{(n_X-1)(n_Y-1)} Y|X for n_X + n_Y ≤ w.
RelationInstance commutation_relation(const Wheel& x, const Wheel& y, Weight width);
/// R3: AF(wheels[order]) = s·AF(wheels).
RelationInstance reorder_relation(const std::vector<Wheel>& wheels, const std::vector<std::size_t>& order, Weight width);
/// R4: an averaged filter against the expansion of its wheels into
/// largest-first form.
RelationInstance filter_properization_relation(const std::vector<Wheel>& wheels, Weight width);
/// R5 for m+1 ≥ 3 wheels listed in increasing rank; trivial filters kept.
RelationInstance exchange_relation(const std::vector<Wheel>& wheels, Weight width);

/// Every instance of a family on the labels 1..n for n ≤ max_labels.
std::vector<RelationInstance> relation_instances(RelationFamily family, std::size_t max_labels, Weight width);

struct RelationCheck {
  bool boundary = false;       // lhs - rhs is a boundary, witness verified
  bool barriers_kept = true;   // one barrier count per d over words with generator filters
  std::optional<bool> closed_forms;  // R5 with m+1 ≤ 4
};
RelationCheck check_relation(const RelationInstance& r, HomologyEngine& engine = default_engine());

// -------------------------------------------------------------- reduction

/// Rewrites into the AMW basis: trivial averaged filters vanish, adjacent
/// wheels commute towards decreasing rank, and a wheel left of a filter
/// whose least wheel outranks it is exchanged through R5. Leftmost
/// violation first.
WordCombination reduce(const WordCombination& x, Weight w);
WordCombination reduce(const GeneratorWord& x, Weight w);
/// Throws InvalidInput unless every factor is a generator.
void require_generators(const GeneratorWord& x, Weight w);

// ---------------------------------------------------------------- barriers

/// Wheels on ≥ w+1-d disks and filters.
std::size_t count_barriers(const GeneratorWord& word, std::size_t d, Weight w);
std::map<std::size_t, WordCombination> barrier_decompose(const WordCombination& x, std::size_t d, Weight w);

struct StabilityParams {
  std::size_t order = 1;  // d
  std::size_t index = 0;  // k (first order) or i
  Weight width = 0;
  std::size_t b = 0;
  std::size_t generation_degree = 0;
  std::size_t module_width() const { return b + 1; }  // FI_{b+1} / FIW(d)_{b+1}
};
StabilityParams stability_params(std::size_t k, Weight w);
StabilityParams higher_stability_params(std::size_t d, std::size_t i, Weight w);

/// reduce, then drop every word with a bare wheel on ≤ d disks.
WordCombination quotient_reduce(const WordCombination& x, std::size_t d, Weight w);

struct GenerationReport {
  std::size_t k = 0;
  Weight w = 0;
  std::size_t n = 0;  // bound + 1
  std::size_t elements = 0;
  std::vector<GeneratorWord> counterexamples;
  bool passes() const { return counterexamples.empty(); }
};
/// Every AMW basis element of degree k just above the generation bound
/// has a bare singleton wheel.
GenerationReport generation_check(std::size_t k, Weight w);

}  // namespace stripconf
