#include "stripconf/basis.hpp"

#include "stripconf/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace stripconf {

namespace {

const Wheel& least_wheel(const FilterFactor& f) {
  return *std::min_element(f.wheels.begin(), f.wheels.end(),
                           [](const Wheel& a, const Wheel& b) { return outranks(b, a); });
}

std::vector<Weight> sizes_of(const FilterFactor& f) {
  std::vector<Weight> s;
  for (const auto& v : f.wheels) s.push_back(static_cast<Weight>(v.size()));
  return s;
}

bool wheel_ok(const Wheel& v, Weight w) {
  return !v.labels.empty() && static_cast<Weight>(v.size()) <= w && v.largest_first();
}

bool filter_ok(const FilterFactor& f, Weight w, BasisKind kind) {
  const std::size_t m = f.wheels.size();
  if (kind == BasisKind::AMW && (f.kind != FilterKind::averaged || m < 3)) return false;
  if (kind == BasisKind::AM && (f.kind != FilterKind::plain || m < 2)) return false;
  for (const auto& v : f.wheels)
    if (!wheel_ok(v, w)) return false;
  auto sizes = sizes_of(f);
  if (!filter_admissible(sizes, w) || !filter_nontrivial(sizes, w)) return false;
  for (std::size_t i = 1; i < m; ++i) {
    const auto& a = f.wheels[i - 1];
    const auto& b = f.wheels[i];
    bool ordered = (kind == BasisKind::AM && m >= 3) ? a.largest() < b.largest() : outranks(b, a);
    if (!ordered) return false;
  }
  return true;
}

bool adjacent_ok(const Factor& left, const Factor& right, Weight w, BasisKind kind) {
  const auto* lw = std::get_if<Wheel>(&left);
  if (lw == nullptr) return true;  // anything may follow a filter
  if (const auto* rw = std::get_if<Wheel>(&right)) {
    if (outranks(*lw, *rw)) return true;
    return kind == BasisKind::AMW && static_cast<Weight>(lw->size() + rw->size()) > w;
  }
  return outranks(*lw, least_wheel(std::get<FilterFactor>(right)));
}

// all largest-first wheels on the labels of `set`
std::vector<Wheel> wheels_on(std::vector<Label> set) {
  std::sort(set.begin(), set.end());
  Label top = set.back();
  set.pop_back();
  std::vector<Wheel> out;
  do {
    Wheel v;
    v.labels.push_back(top);
    v.labels.insert(v.labels.end(), set.begin(), set.end());
    out.push_back(std::move(v));
  } while (std::next_permutation(set.begin(), set.end()));
  return out;
}

void set_partitions(const std::vector<Label>& items, std::size_t i, std::vector<std::vector<Label>>& blocks,
                    const std::function<void(const std::vector<std::vector<Label>>&)>& emit) {
  if (i == items.size()) {
    emit(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(items[i]);
    set_partitions(items, i + 1, blocks, emit);
    blocks[b].pop_back();
  }
  blocks.push_back({items[i]});
  set_partitions(items, i + 1, blocks, emit);
  blocks.pop_back();
}

std::vector<Factor> filters_on(const std::vector<Label>& set, Weight w, BasisKind kind) {
  std::vector<Factor> out;
  std::vector<std::vector<Label>> blocks;
  set_partitions(set, 0, blocks, [&](const std::vector<std::vector<Label>>& parts) {
    const std::size_t m = parts.size();
    if (m < (kind == BasisKind::AMW ? 3u : 2u)) return;
    std::vector<Weight> sizes;
    for (const auto& p : parts) sizes.push_back(static_cast<Weight>(p.size()));
    if (!filter_admissible(sizes, w) || !filter_nontrivial(sizes, w)) return;
    std::vector<std::vector<Wheel>> options;
    for (const auto& p : parts) options.push_back(wheels_on(p));
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      FilterFactor f;
      f.kind = kind == BasisKind::AMW ? FilterKind::averaged : FilterKind::plain;
      for (std::size_t i = 0; i < m; ++i) f.wheels.push_back(options[i][pick[i]]);
      if (kind == BasisKind::AM && m >= 3)
        std::sort(f.wheels.begin(), f.wheels.end(),
                  [](const Wheel& a, const Wheel& b) { return a.largest() < b.largest(); });
      else
        std::sort(f.wheels.begin(), f.wheels.end(), [](const Wheel& a, const Wheel& b) { return outranks(b, a); });
      out.emplace_back(std::move(f));
      std::size_t k = 0;
      while (k < m && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == m) break;
    }
  });
  return out;
}

std::size_t factor_degree(const Factor& f) {
  if (const auto* v = std::get_if<Wheel>(&f)) return v->size() - 1;
  return std::get<FilterFactor>(f).size() - 2;
}

}  // namespace

bool is_basis_word(const GeneratorWord& word, Weight w, BasisKind kind) {
  for (std::size_t i = 0; i < word.factors.size(); ++i) {
    const auto& f = word.factors[i];
    if (const auto* v = std::get_if<Wheel>(&f)) {
      if (!wheel_ok(*v, w)) return false;
    } else if (!filter_ok(std::get<FilterFactor>(f), w, kind)) {
      return false;
    }
    if (i > 0 && !adjacent_ok(word.factors[i - 1], f, w, kind)) return false;
  }
  return true;
}

std::vector<GeneratorWord> enumerate_basis(const std::vector<Label>& labels_in, Weight w, std::size_t k,
                                           BasisKind kind) {
  std::vector<Label> labels = labels_in;
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) throw InvalidInput("repeated label");
  if (w < 1) throw InvalidInput("width must be positive");
  const std::size_t n = labels.size();
  if (n > 20) throw InvalidInput("too many labels for basis enumeration");
  // candidate factors on every subset
  std::map<std::uint32_t, std::vector<Factor>> on_subset;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Label> set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) set.push_back(labels[i]);
    auto& fs = on_subset[mask];
    if (static_cast<Weight>(set.size()) <= w)
      for (auto& v : wheels_on(set)) fs.emplace_back(std::move(v));
    for (auto& f : filters_on(set, w, kind)) fs.push_back(std::move(f));
  }
  std::vector<GeneratorWord> out;
  GeneratorWord cur;
  std::function<void(std::uint32_t, std::size_t)> dfs = [&](std::uint32_t rem, std::size_t deg) {
    if (rem == 0) {
      if (deg == k) out.push_back(cur);
      return;
    }
    const std::size_t left = static_cast<std::size_t>(__builtin_popcount(rem));
    if (deg > k || deg + left - 1 < k) return;
    for (std::uint32_t sub = rem; sub != 0; sub = (sub - 1) & rem) {
      for (const auto& f : on_subset[sub]) {
        if (!cur.factors.empty() && !adjacent_ok(cur.factors.back(), f, w, kind)) continue;
        cur.factors.push_back(f);
        dfs(rem & ~sub, deg + factor_degree(f));
        cur.factors.pop_back();
      }
    }
  };
  if (n == 0) {
    if (k == 0) out.push_back(cur);
    return out;
  }
  dfs((1u << n) - 1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GeneratorWord> enumerate_basis(std::size_t n, Weight w, std::size_t k, BasisKind kind) {
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{1});
  return enumerate_basis(labels, w, k, kind);
}

std::vector<ChainVector> basis_cycles(const std::vector<GeneratorWord>& words, Weight w) {
  std::vector<ChainVector> out;
  out.reserve(words.size());
  for (const auto& x : words) out.push_back(word_cycle(x, w));
  return out;
}

BasisReport verify_basis(std::size_t n, Weight w, std::size_t k, BasisKind kind, HomologyEngine& engine) {
  BasisReport r{n, w, k, kind, 0, 0, 0};
  auto spec = ComplexSpec::cells(static_cast<Label>(n), w);
  auto prof = engine.betti(spec);
  r.betti = k < prof.betti.size() ? prof.betti[k] : 0;
  auto words = enumerate_basis(n, w, k, kind);
  r.count = words.size();
  auto cycles = basis_cycles(words, w);
  for (auto& c : cycles) c = c.retarget(spec);
  r.rank = engine.rank_modulo_boundaries(cycles);
  return r;
}

// ------------------------------------------------------------- basis change

namespace {
std::size_t complexity(const GeneratorWord& w) {
  std::size_t c = 0;
  for (const auto& f : w.factors)
    if (const auto* ff = std::get_if<FilterFactor>(&f)) c += ff->wheels.size();
  return c;
}
}  // namespace

bool complexity_less(const GeneratorWord& a, const GeneratorWord& b) {
  auto ca = complexity(a), cb = complexity(b);
  if (ca != cb) return ca < cb;
  return format_word(a) < format_word(b);
}

GeneratorWord am_partner(const GeneratorWord& x) {
  GeneratorWord out;
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    const auto& f = x.factors[i];
    if (const auto* v = std::get_if<Wheel>(&f)) {
      if (i + 1 < x.factors.size()) {
        if (const auto* u = std::get_if<Wheel>(&x.factors[i + 1]); u != nullptr && outranks(*u, *v)) {
          out.factors.emplace_back(FilterFactor{FilterKind::plain, {*v, *u}});
          ++i;
          continue;
        }
      }
      out.factors.push_back(f);
    } else {
      FilterFactor g = std::get<FilterFactor>(f);
      g.kind = FilterKind::plain;
      std::sort(g.wheels.begin(), g.wheels.end(), [](const Wheel& a, const Wheel& b) { return a.largest() < b.largest(); });
      out.factors.emplace_back(std::move(g));
    }
  }
  return out;
}

bool BasisChange::unit_diagonal() const {
  for (std::size_t i = 0; i < matrix.size(); ++i)
    if (matrix[i][i] != 1) return false;
  return true;
}

bool BasisChange::lower_triangular() const {
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i][i] == 0) return false;
    for (std::size_t j = i + 1; j < matrix[i].size(); ++j)
      if (matrix[i][j] != 0) return false;
  }
  return true;
}

BasisChange basis_change(std::size_t n, Weight w, std::size_t k, HomologyEngine& engine) {
  BasisChange out;
  out.am = enumerate_basis(n, w, k, BasisKind::AM);
  std::sort(out.am.begin(), out.am.end(), complexity_less);
  auto amw = enumerate_basis(n, w, k, BasisKind::AMW);
  if (amw.size() != out.am.size()) throw InvariantViolation("AM and AMW bases differ in size");
  std::map<GeneratorWord, std::size_t> column;
  for (std::size_t j = 0; j < out.am.size(); ++j) column[out.am[j]] = j;
  out.amw.assign(amw.size(), {});
  std::vector<bool> filled(amw.size(), false);
  for (const auto& x : amw) {
    auto it = column.find(am_partner(x));
    if (it == column.end() || filled[it->second])
      throw InvariantViolation("no AM partner for " + format_word(x));
    out.amw[it->second] = x;
    filled[it->second] = true;
  }
  auto spec = ComplexSpec::cells(static_cast<Label>(n), w);
  auto cols = basis_cycles(out.am, w);
  for (auto& c : cols) c = c.retarget(spec);
  for (const auto& x : out.amw) out.matrix.push_back(engine.express(word_cycle(x, w).retarget(spec), cols));
  return out;
}

}  // namespace stripconf
