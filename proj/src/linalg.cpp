#include "stripconf/linalg.hpp"

#include "stripconf/errors.hpp"

#include <algorithm>

namespace stripconf {

namespace {

// a*x - b*y for sorted sparse integer vectors
IntVector axpby(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y) {
  IntVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  const bool a_one = a == 1;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      out.push_back({x[i].index, a_one ? x[i].value : Integer(a * x[i].value)});
      ++i;
    } else if (i == x.size() || y[j].index < x[i].index) {
      out.push_back({y[j].index, Integer(-b * y[j].value)});
      ++j;
    } else {
      Integer v = a_one ? Integer(x[i].value - b * y[j].value) : Integer(a * x[i].value - b * y[j].value);
      if (v != 0) out.push_back({x[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

Combination combine(const Integer& a, const Combination& x, const Integer& b, const Combination& y) {
  Combination out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].source < y[j].source)) {
      out.push_back({x[i].source, Rational(a * x[i].value)});
      ++i;
    } else if (i == x.size() || y[j].source < x[i].source) {
      out.push_back({y[j].source, Rational(-b * y[j].value)});
      ++j;
    } else {
      Rational v = a * x[i].value - b * y[j].value;
      if (v != 0) out.push_back({x[i].source, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& e : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

}  // namespace

Echelon::Echelon(std::size_t dimension, bool track, const Echelon* base)
    : dimension_(dimension), track_(track), base_(base), pivot_row_(dimension, -1) {
  if (base_ != nullptr && base_->dimension_ != dimension_) throw InvalidInput("echelon layers differ in dimension");
}

const Echelon::Row* Echelon::row_for(std::uint32_t index) const {
  if (base_ != nullptr)
    if (const Row* r = base_->row_for(index)) return r;
  auto k = pivot_row_[index];
  return k < 0 ? nullptr : &rows_[static_cast<std::size_t>(k)];
}

void Echelon::eliminate(IntVector& v, Rational* scale, Combination* combo, std::size_t& pos) const {
  const Row* r = row_for(v[pos].index);
  const Integer& p = r->vec.front().value;
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), v[pos].value.get_mpz_t());
  Integer a = p / g;
  Integer b = v[pos].value / g;
  if (a < 0) {
    a = -a;
    b = -b;
  }
  IntVector tail(std::make_move_iterator(v.begin() + static_cast<std::ptrdiff_t>(pos)),
                 std::make_move_iterator(v.end()));
  IntVector reduced = axpby(a, tail, b, r->vec);
  v.resize(pos);
  if (a != 1)
    for (auto& e : v) e.value *= a;
  v.insert(v.end(), std::make_move_iterator(reduced.begin()), std::make_move_iterator(reduced.end()));
  if (scale != nullptr && a != 1) *scale *= Rational(a);
  if (combo != nullptr) *combo = combine(a, *combo, b, r->combo);
  if (a != 1) {
    Integer g2 = content(v);
    if (g2 > 1) {
      for (auto& e : v) e.value /= g2;
      if (scale != nullptr) *scale /= Rational(g2);
      if (combo != nullptr)
        for (auto& e : *combo) e.value /= Rational(g2);
    }
  }
}

bool Echelon::insert(IntVector v, std::size_t source) {
  // combo expresses v over the sources, the input included
  Combination combo;
  if (track_) combo.push_back({source, Rational(1)});
  std::size_t pos = 0;
  while (pos < v.size()) {
    if (row_for(v[pos].index) == nullptr) break;
    eliminate(v, nullptr, track_ ? &combo : nullptr, pos);
  }
  if (pos >= v.size()) return false;
  Integer g = content(v);
  if (v.front().value < 0) g = -g;
  for (auto& e : v) e.value /= g;
  if (track_)
    for (auto& e : combo) e.value /= Rational(g);
  auto idx = v.front().index;
  pivot_row_[idx] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(Row{std::move(v), std::move(combo)});
  return true;
}

Echelon::Reduction Echelon::reduce(IntVector v) const {
  // invariant: v = scale*input + combination
  Reduction out;
  out.scale = 1;
  std::size_t pos = 0;
  while (pos < v.size()) {
    if (row_for(v[pos].index) == nullptr) {
      ++pos;
      continue;
    }
    eliminate(v, &out.scale, track_ ? &out.combination : nullptr, pos);
  }
  for (auto& e : out.combination) e.value = -e.value;
  out.residual = std::move(v);
  return out;
}

std::size_t Echelon::rank() const { return rows_.size() + (base_ ? base_->rank() : 0); }

std::vector<Rational> Echelon::annihilator(std::uint32_t j) const {
  if (row_for(j) != nullptr) throw InvalidInput("annihilator index is a pivot");
  std::vector<Rational> phi(dimension_);
  phi[j] = 1;
  // collect all rows, process in decreasing pivot order
  std::vector<const Row*> all;
  for (const Echelon* e = this; e != nullptr; e = e->base_)
    for (const auto& r : e->rows_) all.push_back(&r);
  std::sort(all.begin(), all.end(),
            [](const Row* a, const Row* b) { return a->vec.front().index > b->vec.front().index; });
  for (const Row* r : all) {
    Rational s = 0;
    for (std::size_t k = 1; k < r->vec.size(); ++k)
      if (phi[r->vec[k].index] != 0) s += phi[r->vec[k].index] * Rational(r->vec[k].value);
    phi[r->vec.front().index] = -s / Rational(r->vec.front().value);
  }
  return phi;
}

std::size_t integer_rank(std::size_t rows, const std::vector<IntVector>& columns) {
  Echelon e(rows);
  for (std::size_t j = 0; j < columns.size(); ++j) e.insert(columns[j], j);
  return e.rank();
}

IntVector to_integer_vector(const std::vector<std::pair<std::uint32_t, Rational>>& v, Integer& denominator) {
  denominator = 1;
  for (const auto& [i, q] : v) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), q.get_den_mpz_t());
  IntVector out;
  out.reserve(v.size());
  for (const auto& [i, q] : v) {
    if (q == 0) continue;
    Integer num = q.get_num() * (denominator / q.get_den());
    out.push_back({i, std::move(num)});
  }
  std::sort(out.begin(), out.end(), [](const IntEntry& a, const IntEntry& b) { return a.index < b.index; });
  return out;
}

}  // namespace stripconf
