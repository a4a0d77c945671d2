#pragma once

#include "stripconf/chains.hpp"
#include "stripconf/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace stripconf {

struct HomologyOptions {
  Guard guard;
  std::optional<std::filesystem::path> cache_root;  // on-disk matrix cache
};

struct HomologyProfile {
  ComplexSpec complex;
  std::vector<std::uint64_t> cells;  // per degree
  std::vector<std::size_t> ranks;    // ranks[d] = rank ∂_d
  std::vector<std::size_t> betti;
  long long euler_cells = 0;
  long long euler_betti = 0;
  bool euler_consistent() const { return euler_cells == euler_betti; }
};

/// A functional on C_k, nonzero only on the listed cells.
using Functional = std::map<Cell, Rational>;
Rational evaluate(const Functional& phi, const ChainVector& x);

struct BoundaryQuery {
  bool is_boundary = false;
  std::optional<ChainVector> witness;     // ∂ witness = z
  std::optional<Functional> certificate;  // vanishes on boundaries, nonzero on z
};

struct DegreeCells {
  std::vector<Cell> cells;
  std::unordered_map<Cell, std::uint32_t, CellHash> index;
};

/// Exact rational homology of the cell complexes, with memoised cell
/// lists and echelon forms of boundary images.
class HomologyEngine {
 public:
  explicit HomologyEngine(HomologyOptions options = {});

  HomologyProfile betti(const ComplexSpec& spec);
  std::size_t boundary_rank(const ComplexSpec& spec, std::size_t degree);

  BoundaryQuery is_boundary(const ChainVector& z, bool want_witness = true, bool want_certificate = true);
  /// Coefficients c with z - Σ c_i basis_i a boundary.
  std::vector<Rational> express(const ChainVector& z, const std::vector<ChainVector>& basis);
  /// Dimension of the span of the cycles in homology.
  std::size_t rank_modulo_boundaries(const std::vector<ChainVector>& cycles);

  std::shared_ptr<const DegreeCells> cells(const ComplexSpec& spec, std::size_t degree);
  /// Echelon of im ∂_{degree+1} inside C_degree.
  std::shared_ptr<const Echelon> image(const ComplexSpec& spec, std::size_t degree, bool track = false);
  IntVector to_vector(const ChainVector& z, Integer& denominator);

  const HomologyOptions& options() const { return options_; }

 private:
  BoundaryMatrix matrix(const ComplexSpec& spec, std::size_t degree);

  HomologyOptions options_;
  std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const DegreeCells>> cells_;
  std::map<std::string, std::shared_ptr<const Echelon>> images_;
};

HomologyEngine& default_engine();

HomologyProfile betti(const ComplexSpec& spec);
BoundaryQuery is_boundary(const ChainVector& z);
std::vector<Rational> express(const ChainVector& z, const std::vector<ChainVector>& basis);

/// Σ_σ H_{*-#σ}(P(A-#σ, W(σ), w)) against H_*(cell(A, W, w)).
struct DecompositionReport {
  std::vector<std::size_t> direct;
  std::vector<std::size_t> summed;
  std::size_t permutations = 0;
  bool holds() const { return direct == summed; }
};
DecompositionReport decomposition_check(const ComplexSpec& spec, HomologyEngine& engine = default_engine());

}  // namespace stripconf
