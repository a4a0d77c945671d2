#include "stripconf/homology.hpp"

#include "stripconf/cycles.hpp"
#include "stripconf/errors.hpp"

#include <algorithm>
#include <mutex>

namespace stripconf {

Rational evaluate(const Functional& phi, const ChainVector& x) {
  Rational s = 0;
  for (const auto& [c, q] : x.terms()) {
    auto it = phi.find(c);
    if (it != phi.end()) s += it->second * q;
  }
  return s;
}

HomologyEngine::HomologyEngine(HomologyOptions options) : options_(std::move(options)) {}

HomologyEngine& default_engine() {
  static HomologyEngine engine;
  return engine;
}

namespace {
std::string key(const ComplexSpec& spec, std::size_t degree, const char* tag = "") {
  return spec.canonical() + "#" + std::to_string(degree) + tag;
}
}  // namespace

std::shared_ptr<const DegreeCells> HomologyEngine::cells(const ComplexSpec& spec, std::size_t degree) {
  auto k = key(spec, degree);
  {
    std::shared_lock lock(mu_);
    auto it = cells_.find(k);
    if (it != cells_.end()) return it->second;
  }
  options_.guard.check(spec);
  auto d = std::make_shared<DegreeCells>();
  d->cells = enumerate_cells(spec, degree);
  d->index.reserve(d->cells.size() * 2);
  for (std::uint32_t i = 0; i < d->cells.size(); ++i) d->index.emplace(d->cells[i], i);
  std::unique_lock lock(mu_);
  return cells_.try_emplace(k, std::move(d)).first->second;
}

BoundaryMatrix HomologyEngine::matrix(const ComplexSpec& spec, std::size_t degree) {
  if (options_.cache_root) return MatrixCache(*options_.cache_root).get(spec, degree, options_.guard);
  return build_boundary_matrix(spec, degree, options_.guard);
}

std::shared_ptr<const Echelon> HomologyEngine::image(const ComplexSpec& spec, std::size_t degree, bool track) {
  auto k = key(spec, degree, track ? "#t" : "");
  {
    std::shared_lock lock(mu_);
    auto it = images_.find(k);
    if (it != images_.end()) return it->second;
  }
  auto rows = cells(spec, degree);
  // a column that is a pivot of the image one degree up is a combination of
  // later columns, so it can be skipped without changing the span
  std::shared_ptr<const Echelon> above;
  if (degree + 2 <= spec.top_degree()) above = image(spec, degree + 1);
  auto e = std::make_shared<Echelon>(rows->cells.size(), track);
  BoundaryMatrix m = matrix(spec, degree + 1);
  if (!m.rows.empty() && m.rows != rows->cells) throw InvariantViolation("cached matrix rows disagree with enumeration");
  for (std::size_t j = 0; j < m.columns.size(); ++j) {
    if (above && above->is_pivot(static_cast<std::uint32_t>(j))) continue;
    IntVector v;
    v.reserve(m.columns[j].size());
    for (const auto& [i, s] : m.columns[j]) v.push_back({i, Integer(s)});
    e->insert(std::move(v), j);
  }
  std::unique_lock lock(mu_);
  return images_.try_emplace(k, std::move(e)).first->second;
}

std::size_t HomologyEngine::boundary_rank(const ComplexSpec& spec, std::size_t degree) {
  if (degree == 0) return 0;
  return image(spec, degree - 1)->rank();
}

HomologyProfile HomologyEngine::betti(const ComplexSpec& spec) {
  options_.guard.check(spec);
  HomologyProfile p;
  p.complex = spec;
  p.cells = count_cells(spec);
  const std::size_t top = p.cells.size();
  p.ranks.assign(top + 1, 0);
  for (std::size_t d = 1; d < top; ++d) p.ranks[d] = boundary_rank(spec, d);
  p.betti.resize(top);
  for (std::size_t d = 0; d < top; ++d) {
    p.betti[d] = static_cast<std::size_t>(p.cells[d]) - p.ranks[d] - p.ranks[d + 1];
    long long sgn = d % 2 ? -1 : 1;
    p.euler_cells += sgn * static_cast<long long>(p.cells[d]);
    p.euler_betti += sgn * static_cast<long long>(p.betti[d]);
  }
  return p;
}

IntVector HomologyEngine::to_vector(const ChainVector& z, Integer& denominator) {
  auto idx = cells(z.complex(), z.degree());
  std::vector<std::pair<std::uint32_t, Rational>> v;
  v.reserve(z.size());
  for (const auto& [c, q] : z.terms()) {
    auto it = idx->index.find(c);
    if (it == idx->index.end()) throw InvalidInput("cell " + format_cell(c) + " not in the complex");
    v.emplace_back(it->second, q);
  }
  return to_integer_vector(v, denominator);
}

BoundaryQuery HomologyEngine::is_boundary(const ChainVector& z, bool want_witness, bool want_certificate) {
  if (!boundary(z).is_zero()) throw InvalidInput("is_boundary: chain is not a cycle");
  const auto& spec = z.complex();
  const std::size_t k = z.degree();
  BoundaryQuery out;
  Integer den;
  IntVector v = to_vector(z, den);
  auto e = image(spec, k, want_witness);
  auto red = e->reduce(v);
  out.is_boundary = red.residual.empty();
  if (out.is_boundary && want_witness) {
    auto upper = cells(spec, k + 1);
    ChainVector w(spec, k + 1);
    Rational factor = Rational(1) / (red.scale * Rational(den));
    for (const auto& [src, q] : red.combination) w.add_unchecked(upper->cells[src], q * factor);
    if (!(boundary(w) == z)) throw InvariantViolation("boundary witness does not reproduce the cycle");
    out.witness = std::move(w);
  }
  if (!out.is_boundary && want_certificate) {
    auto lower = cells(spec, k);
    auto phi = e->annihilator(red.residual.front().index);
    Functional f;
    for (std::size_t i = 0; i < phi.size(); ++i)
      if (phi[i] != 0) f.emplace(lower->cells[i], phi[i]);
    if (evaluate(f, z) == 0) throw InvariantViolation("certificate does not separate the cycle");
    out.certificate = std::move(f);
  }
  return out;
}

std::vector<Rational> HomologyEngine::express(const ChainVector& z, const std::vector<ChainVector>& basis) {
  if (!boundary(z).is_zero()) throw InvalidInput("express: target is not a cycle");
  const auto& spec = z.complex();
  const std::size_t k = z.degree();
  auto base = image(spec, k);
  Echelon overlay(base->dimension(), true, base.get());
  std::vector<Integer> dens(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!(basis[i].complex() == spec) || (basis[i].degree() != k && !basis[i].is_zero()))
      throw InvalidInput("express: basis element " + std::to_string(i) + " lives elsewhere");
    if (!boundary(basis[i]).is_zero()) throw InvalidInput("express: basis element " + std::to_string(i) + " is not a cycle");
    if (!overlay.insert(to_vector(basis[i], dens[i]), i))
      throw InvalidInput("express: basis element " + std::to_string(i) + " depends on the others modulo boundaries");
  }
  Integer den;
  auto red = overlay.reduce(to_vector(z, den));
  if (!red.residual.empty()) throw InvalidInput("express: the basis does not span the class of the target");
  std::vector<Rational> coeffs(basis.size());
  for (const auto& [src, q] : red.combination)
    coeffs[src] = q * Rational(dens[src]) / (red.scale * Rational(den));
  return coeffs;
}

std::size_t HomologyEngine::rank_modulo_boundaries(const std::vector<ChainVector>& cycles) {
  if (cycles.empty()) return 0;
  const auto& spec = cycles.front().complex();
  const std::size_t k = cycles.front().degree();
  auto base = image(spec, k);
  Echelon overlay(base->dimension(), false, base.get());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (!(cycles[i].complex() == spec) || cycles[i].degree() != k)
      throw InvalidInput("rank_modulo_boundaries: mixed complexes");
    Integer den;
    overlay.insert(to_vector(cycles[i], den), i);
  }
  return overlay.own_rank();
}

HomologyProfile betti(const ComplexSpec& spec) { return default_engine().betti(spec); }
BoundaryQuery is_boundary(const ChainVector& z) { return default_engine().is_boundary(z); }
std::vector<Rational> express(const ChainVector& z, const std::vector<ChainVector>& basis) {
  return default_engine().express(z, basis);
}

DecompositionReport decomposition_check(const ComplexSpec& spec, HomologyEngine& engine) {
  if (spec.kind != ComplexKind::ordered) throw InvalidInput("decomposition_check expects an ordered cell complex");
  DecompositionReport r;
  r.direct = engine.betti(spec).betti;
  std::map<std::vector<Weight>, std::vector<std::size_t>> memo;
  std::vector<Label> sigma = spec.set.labels();
  do {
    ++r.permutations;
    std::vector<WeightedLabel> wheels;
    std::vector<Weight> key_weights;
    for (const auto& w : wheel_decomposition(sigma)) {
      Weight t = 0;
      for (Label a : w) t += spec.set.weight(a);
      wheels.push_back({w.front(), t});
      key_weights.push_back(t);
    }
    std::sort(key_weights.begin(), key_weights.end());
    auto it = memo.find(key_weights);
    if (it == memo.end()) {
      auto p = engine.betti(ComplexSpec::permutohedron(WeightedSet(wheels), spec.width));
      it = memo.emplace(key_weights, p.betti).first;
    }
    std::size_t shift = sigma.size() - wheels.size();
    const auto& b = it->second;
    for (std::size_t d = 0; d < b.size(); ++d) {
      if (r.summed.size() < d + shift + 1) r.summed.resize(d + shift + 1, 0);
      r.summed[d + shift] += b[d];
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  for (auto* v : {&r.direct, &r.summed})
    while (!v->empty() && v->back() == 0) v->pop_back();
  return r;
}

}  // namespace stripconf
