#pragma once

#include "stripconf/cells.hpp"
#include "stripconf/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stripconf {

/// Sparse rational chain on a fixed complex, homogeneous in geometric
/// degree. Zero coefficients are never stored.
class ChainVector {
 public:
  ChainVector() = default;
  ChainVector(ComplexSpec complex, std::size_t degree) : complex_(std::move(complex)), degree_(degree) {}
  static ChainVector of(ComplexSpec complex, const Cell& c, Rational coeff = 1);

  const ComplexSpec& complex() const { return complex_; }
  std::size_t degree() const { return degree_; }
  /// Weighted degree: the common wdim of the cells.
  Weight wdegree() const;
  const std::map<Cell, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Cell& c) const;

  void add(const Cell& c, const Rational& coeff);  // checks admissibility and degree
  void add_unchecked(const Cell& c, const Rational& coeff);
  ChainVector& operator+=(const ChainVector& other);
  ChainVector& operator-=(const ChainVector& other);
  ChainVector& operator*=(const Rational& s);
  friend ChainVector operator+(ChainVector a, const ChainVector& b) { return a += b; }
  friend ChainVector operator-(ChainVector a, const ChainVector& b) { return a -= b; }
  friend ChainVector operator*(const Rational& s, ChainVector a) { return a *= s; }
  /// Zero chains compare equal whatever their nominal degree.
  friend bool operator==(const ChainVector& a, const ChainVector& b) {
    return a.complex_ == b.complex_ && a.terms_ == b.terms_ && (a.degree_ == b.degree_ || a.terms_.empty());
  }

  /// Same cells reinterpreted in another complex (e.g. a narrower width).
  ChainVector retarget(const ComplexSpec& complex) const;
  std::string to_string() const;

 private:
  void require_compatible(const ChainVector& other) const;
  ComplexSpec complex_;
  std::size_t degree_ = 0;
  std::map<Cell, Rational> terms_;
};

ChainVector boundary(const ChainVector& x);
ChainVector boundary_of_cell(const ComplexSpec& spec, const Cell& c);
/// x|y on disjoint label sets; widths and kinds must agree.
ChainVector concat(const ChainVector& x, const ChainVector& y);
/// Applies a label bijection to an ordered-kind chain (weights travel with labels).
ChainVector relabel(const ChainVector& x, const Permutation& sigma);

/// ∂_d : C_d -> C_{d-1} in the canonical bases, stored by column.
struct BoundaryMatrix {
  ComplexSpec complex;
  std::size_t degree = 0;
  std::vector<Cell> rows;  // cells of degree d-1
  std::vector<Cell> cols;  // cells of degree d
  std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;
  std::size_t nonzeros() const;
};

/// Cell cap guarding every enumeration-backed operation.
struct Guard {
  std::uint64_t max_cells = 5'000'000;
  void check(const ComplexSpec& spec) const;  // throws ResourceRefusal
};

BoundaryMatrix build_boundary_matrix(const ComplexSpec& spec, std::size_t degree, const Guard& guard = {});

/// Checks ∂∘∂ = 0 on every cell of the given degree; returns the offending
/// cells (empty when the identity holds).
std::vector<Cell> verify_boundary_squared(const ComplexSpec& spec, std::size_t degree);

/// On-disk store of boundary matrices: {root}/{complex-hash}/d{degree}.mtx
/// plus a JSON sidecar holding the complex, the cell lists and a digest.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path root);
  static std::filesystem::path default_root();  // $STRIPCONF_CACHE_DIR or ./cache

  std::optional<BoundaryMatrix> load(const ComplexSpec& spec, std::size_t degree) const;
  void store(const BoundaryMatrix& m) const;
  BoundaryMatrix get(const ComplexSpec& spec, std::size_t degree, const Guard& guard = {}) const;
  std::filesystem::path directory(const ComplexSpec& spec) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

/// Describes the enumeration order and sign rules; changes invalidate caches.
const std::string& convention_descriptor();
std::string sha256_hex(const std::string& data);

}  // namespace stripconf
