#pragma once

#include "stripconf/chains.hpp"

#include <vector>

namespace stripconf {

/// spin_{a:b,c}: every occurrence of `source` becomes the substring b c,
/// plus c b with sign (-1)^{w_b w_c - 1}. Requires w_a = w_b + w_c.
struct SpinStep {
  Label source = 0;
  WeightedLabel b;
  WeightedLabel c;
  friend bool operator==(const SpinStep&, const SpinStep&) = default;
};

/// Steps applied in order (the first step acts first).
using SpinProgram = std::vector<SpinStep>;

ChainVector spin(const SpinStep& step, const ChainVector& x);
ChainVector spin(const SpinProgram& program, const ChainVector& x);
/// Complex reached after applying the steps to `spec`.
ComplexSpec spin_target(const SpinProgram& program, const ComplexSpec& spec);

/// i_σ : P(A,W,w) -> cell(A,W,w) for the order of A listed in `ordering`.
/// Each block is written in the order induced by `ordering`, with the sign
/// of that rearrangement from ascending order. On cells whose blocks the
/// rearrangement leaves alone it is the plain inclusion.
ChainVector include_permutohedron(const std::vector<Label>& ordering, const ChainVector& x);
ChainVector include_identity(const ChainVector& x);
/// The normalisation fixing the top cell: i_σ(a_1..a_n) = a_σ(1)..a_σ(n).
/// Equals wsgn(σ) times include_permutohedron.
ChainVector include_permutohedron_top_normalised(const std::vector<Label>& ordering, const ChainVector& x);

/// q = (1/|A|!) Σ_σ wsgn(σ) i_σ (top-normalised i_σ), computed block by block.
ChainVector average_inclusion(const ChainVector& x);
/// The same operator summed literally over all |A|! orderings.
ChainVector average_inclusion_literal(const ChainVector& x);

/// p : cell(A,W,w) -> P(A,W,w): sorts each block, times the wsgn of the sort.
ChainVector project(const ChainVector& x);

}  // namespace stripconf
