#include "stripconf/algebra.hpp"

#include "stripconf/errors.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <tuple>

namespace stripconf {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

std::vector<Weight> sizes_of(const std::vector<Wheel>& wheels) {
  std::vector<Weight> s;
  for (const auto& v : wheels) s.push_back(static_cast<Weight>(v.size()));
  return s;
}

bool rank_less(const Wheel& a, const Wheel& b) { return outranks(b, a); }

GeneratorWord single(Factor f) {
  GeneratorWord w;
  w.factors.push_back(std::move(f));
  return w;
}

WordCombination unit(const GeneratorWord& w) { return WordCombination{{w, Rational(1)}}; }

void add_all(WordCombination& acc, const WordCombination& x, const Rational& s) {
  for (const auto& [w, q] : x) add_term(acc, w, q * s);
}

WordCombination minus(const WordCombination& a, const WordCombination& b) {
  WordCombination out = a;
  add_all(out, b, Rational(-1));
  return out;
}

std::string join_wheels(const std::vector<Wheel>& wheels) {
  std::string s;
  for (std::size_t i = 0; i < wheels.size(); ++i) s += (i ? "," : "") + format_wheel(wheels[i]);
  return s;
}

GeneratorWord averaged(std::vector<Wheel> wheels) { return single(FilterFactor{FilterKind::averaged, std::move(wheels)}); }

GeneratorWord joined(const GeneratorWord& a, const GeneratorWord& b) {
  GeneratorWord out = a;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

}  // namespace

// ------------------------------------------------------------------ action

WordCombination properize_wheel(const Wheel& wheel) {
  if (wheel.labels.empty()) throw InvalidInput("empty wheel");
  if (wheel.largest_first()) return unit(single(wheel));
  const std::size_t s = wheel.size();
  std::vector<Label> sorted = wheel.labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Label> pattern;
  for (Label a : wheel.labels)
    pattern.push_back(static_cast<Label>(std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin()) + 1);

  static std::shared_mutex mu;
  static std::map<std::vector<Label>, std::vector<std::pair<std::vector<Label>, Rational>>> memo;
  std::vector<std::pair<std::vector<Label>, Rational>> coeffs;
  {
    std::shared_lock lock(mu);
    auto it = memo.find(pattern);
    if (it != memo.end()) coeffs = it->second;
  }
  if (coeffs.empty()) {
    const Weight width = static_cast<Weight>(s);
    std::vector<std::vector<Label>> proper;
    std::vector<Label> rest(s - 1);
    std::iota(rest.begin(), rest.end(), Label{1});
    do {
      std::vector<Label> p{static_cast<Label>(s)};
      p.insert(p.end(), rest.begin(), rest.end());
      proper.push_back(std::move(p));
    } while (std::next_permutation(rest.begin(), rest.end()));
    std::vector<ChainVector> basis;
    for (const auto& p : proper) basis.push_back(wheel_cycle(Wheel{p}, width));
    auto c = default_engine().express(wheel_cycle(Wheel{pattern}, width), basis);
    for (std::size_t j = 0; j < proper.size(); ++j)
      if (c[j] != 0) coeffs.emplace_back(proper[j], c[j]);
    std::unique_lock lock(mu);
    memo.emplace(pattern, coeffs);
  }
  WordCombination out;
  for (const auto& [p, q] : coeffs) {
    Wheel v;
    for (Label r : p) v.labels.push_back(sorted[static_cast<std::size_t>(r - 1)]);
    add_term(out, single(v), q);
  }
  return out;
}

int averaged_filter_reorder_sign(const std::vector<Wheel>& wheels, const std::vector<std::size_t>& order) {
  if (order.size() != wheels.size()) throw InvalidInput("reorder: length mismatch");
  auto sizes = sizes_of(wheels);
  return wsgn_positions(sizes, order) * parity_sign(sizes[order.front()] + sizes.front());
}

namespace {

using FactorCombination = std::vector<std::pair<Factor, Rational>>;

FactorCombination wheel_options(const Wheel& v) {
  FactorCombination out;
  for (const auto& [w, q] : properize_wheel(v)) out.emplace_back(w.factors.front(), q);
  return out;
}

FactorCombination factor_options(const Factor& f) {
  if (const auto* v = std::get_if<Wheel>(&f)) return wheel_options(*v);
  const auto& ff = std::get<FilterFactor>(f);
  std::vector<std::size_t> order(ff.wheels.size());
  std::iota(order.begin(), order.end(), 0);
  int sign = 1;
  if (ff.kind == FilterKind::averaged) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank_less(ff.wheels[a], ff.wheels[b]); });
    sign = averaged_filter_reorder_sign(ff.wheels, order);
  }
  FactorCombination out{{FilterFactor{ff.kind, {}}, Rational(sign)}};
  for (std::size_t i : order) {
    FactorCombination next;
    for (const auto& [partial, q] : out)
      for (const auto& [wf, r] : wheel_options(ff.wheels[i])) {
        FilterFactor g = std::get<FilterFactor>(partial);
        g.wheels.push_back(std::get<Wheel>(wf));
        next.emplace_back(std::move(g), q * r);
      }
    out = std::move(next);
  }
  return out;
}

Factor relabel_factor(const Factor& f, const Permutation& sigma) {
  auto wheel = [&](const Wheel& v) {
    Wheel out;
    for (Label a : v.labels) out.labels.push_back(sigma(a));
    return out;
  };
  if (const auto* v = std::get_if<Wheel>(&f)) return wheel(*v);
  FilterFactor g = std::get<FilterFactor>(f);
  for (auto& v : g.wheels) v = wheel(v);
  return g;
}

}  // namespace

WordCombination act(const Permutation& sigma, const GeneratorWord& x) {
  auto labels = x.labels();
  std::set<Label> domain(labels.begin(), labels.end());
  for (const auto& [a, b] : sigma.images())
    if (a != b && (!domain.count(a) || !domain.count(b)))
      throw InvalidInput("permutation " + sigma.to_cycles() + " does not permute the labels of " + format_word(x));
  WordCombination acc{{GeneratorWord{}, Rational(1)}};
  for (const auto& f : x.factors) {
    auto options = factor_options(relabel_factor(f, sigma));
    WordCombination next;
    for (const auto& [w, q] : acc)
      for (const auto& [g, r] : options) {
        GeneratorWord v = w;
        v.factors.push_back(g);
        add_term(next, v, q * r);
      }
    acc = std::move(next);
  }
  return acc;
}

WordCombination act(const Permutation& sigma, const WordCombination& x) {
  WordCombination out;
  for (const auto& [w, q] : x) add_all(out, act(sigma, w), q);
  return out;
}

// --------------------------------------------------------------- relations

std::string to_string(RelationFamily f) {
  switch (f) {
    case RelationFamily::R1: return "R1";
    case RelationFamily::R2: return "R2";
    case RelationFamily::R3: return "R3";
    case RelationFamily::R4: return "R4";
    case RelationFamily::R5: return "R5";
  }
  return "?";
}

RelationFamily parse_relation_family(std::string_view text) {
  for (auto f : {RelationFamily::R1, RelationFamily::R2, RelationFamily::R3, RelationFamily::R4, RelationFamily::R5})
    if (text == to_string(f)) return f;
  throw InvalidInput("unknown relation family '" + std::string(text) + "'");
}

bool ExchangeCoefficients::closed_forms_match() const {
  for (std::size_t k = 0; k < raw_a.size(); ++k)
    if (raw_a[k] * raw_b[k] != -closed_a[k] * closed_b[k]) return false;
  return true;
}

bool ExchangeCoefficients::closed_forms_exact() const {
  for (int s : {1, -1}) {
    bool ok = true;
    for (std::size_t k = 0; k < raw_a.size() && ok; ++k)
      ok = raw_a[k] == s * closed_a[k] && raw_b[k] == -s * closed_b[k];
    if (ok) return true;
  }
  return false;
}

ExchangeCoefficients exchange_coefficients(const std::vector<Wheel>& wheels) {
  const std::size_t m1 = wheels.size();
  if (m1 < 3) throw InvalidInput("the exchange relation needs at least 3 wheels");
  for (std::size_t i = 1; i < m1; ++i)
    if (!rank_less(wheels[i - 1], wheels[i])) throw InvalidInput("exchange wheels must be listed in increasing rank");
  auto n = sizes_of(wheels);
  std::vector<WeightedLabel> ids;
  for (std::size_t i = 0; i < m1; ++i) ids.push_back({static_cast<Label>(i + 1), n[i]});
  WeightedSet set(ids);
  auto spec = ComplexSpec::unrestricted(set, ComplexKind::permutohedron);
  auto all = set.labels();
  auto d = boundary_of_cell(spec, Cell::from_blocks({all}));
  auto coeff = [&](const std::vector<std::vector<Label>>& blocks) {
    auto it = d.terms().find(Cell::from_blocks(blocks));
    if (it == d.terms().end()) throw InvariantViolation("missing facet of the top permutohedral cell");
    return it->second > 0 ? 1 : -1;
  };
  ExchangeCoefficients out;
  out.sizes = n;
  for (std::size_t k = 0; k < m1; ++k) {
    std::vector<Label> rest;
    for (Label a : all)
      if (a != static_cast<Label>(k + 1)) rest.push_back(a);
    const Weight first = n[k == 0 ? 1 : 0];
    int ra = coeff({{static_cast<Label>(k + 1)}, rest}) * parity_sign(n[k] - 1);
    int rb = coeff({rest, {static_cast<Label>(k + 1)}});
    out.raw_a.push_back(ra);
    out.raw_b.push_back(rb);
    out.a.push_back(ra * parity_sign(first));
    out.b.push_back(rb * parity_sign(first));
    long long before = 0, after = 0;
    for (std::size_t i = 0; i < k; ++i) before += n[i];
    for (std::size_t i = k + 1; i < m1; ++i) after += n[i];
    const long long kk = static_cast<long long>(k + 1), m = static_cast<long long>(m1 - 1);
    out.closed_a.push_back(parity_sign(kk - 1) * parity_sign((n[k] - 1) * (before - kk + 1)));
    out.closed_b.push_back(parity_sign(kk - 1) * parity_sign((n[k] - 1) * (after - m + kk - 1)));
  }
  return out;
}

WordCombination RelationInstance::difference() const { return minus(lhs, rhs); }

RelationInstance proper_wheel_relation(const Wheel& wheel, Weight width) {
  if (static_cast<Weight>(wheel.size()) > width) throw InvalidInput("wheel wider than the strip");
  RelationInstance r{RelationFamily::R1, width, format_wheel(wheel), unit(single(wheel)), properize_wheel(wheel), {}};
  return r;
}

RelationInstance commutation_relation(const Wheel& x, const Wheel& y, Weight width) {
  const auto nx = static_cast<Weight>(x.size()), ny = static_cast<Weight>(y.size());
  if (nx + ny > width) throw InvalidInput("wheels too large to commute: " + std::to_string(nx) + "+" + std::to_string(ny) + " > w");
  GeneratorWord l{{x, y}}, r{{y, x}};
  return RelationInstance{RelationFamily::R2, width, format_wheel(x) + "," + format_wheel(y), unit(l),
                          scaled(unit(r), Rational(parity_sign((nx - 1) * (ny - 1)))), {}};
}

RelationInstance reorder_relation(const std::vector<Wheel>& wheels, const std::vector<std::size_t>& order, Weight width) {
  require_filter_admissible(sizes_of(wheels), width);
  std::vector<Wheel> moved;
  for (std::size_t i : order) moved.push_back(wheels.at(i));
  std::string data = join_wheels(wheels) + " by";
  for (std::size_t i : order) data += " " + std::to_string(i + 1);
  return RelationInstance{RelationFamily::R3, width, data, unit(averaged(moved)),
                          scaled(unit(averaged(wheels)), Rational(averaged_filter_reorder_sign(wheels, order))), {}};
}

RelationInstance filter_properization_relation(const std::vector<Wheel>& wheels, Weight width) {
  require_filter_admissible(sizes_of(wheels), width);
  WordCombination rhs{{GeneratorWord{{FilterFactor{FilterKind::averaged, {}}}}, Rational(1)}};
  for (const auto& v : wheels) {
    WordCombination next;
    for (const auto& [w, q] : rhs)
      for (const auto& [p, r] : properize_wheel(v)) {
        GeneratorWord g = w;
        std::get<FilterFactor>(g.factors.front()).wheels.push_back(std::get<Wheel>(p.factors.front()));
        add_term(next, g, q * r);
      }
    rhs = std::move(next);
  }
  return RelationInstance{RelationFamily::R4, width, join_wheels(wheels), unit(averaged(wheels)), rhs, {}};
}

namespace {
bool exchange_admissible(std::vector<Weight> n, Weight width) {
  std::sort(n.begin(), n.end());
  const Weight total = std::accumulate(n.begin(), n.end(), Weight{0});
  return width >= 2 && n.size() >= 3 && total - n[0] - n[1] <= width;
}
}  // namespace

RelationInstance exchange_relation(const std::vector<Wheel>& wheels, Weight width) {
  if (!exchange_admissible(sizes_of(wheels), width))
    throw InvalidInput("exchange relation needs ≥3 wheels with every sum of all but two sizes ≤ w");
  auto c = exchange_coefficients(wheels);
  RelationInstance r{RelationFamily::R5, width, join_wheels(wheels), {}, {}, c};
  for (std::size_t k = 0; k < wheels.size(); ++k) {
    std::vector<Wheel> rest;
    for (std::size_t i = 0; i < wheels.size(); ++i)
      if (i != k) rest.push_back(wheels[i]);
    add_term(r.lhs, joined(single(wheels[k]), averaged(rest)), Rational(c.a[k]));
    add_term(r.rhs, joined(averaged(rest), single(wheels[k])), Rational(-c.b[k]));
  }
  return r;
}

namespace {

void set_partitions(std::size_t n, std::size_t i, std::vector<std::vector<Label>>& blocks,
                    const std::function<void(const std::vector<std::vector<Label>>&)>& emit) {
  if (i == n) {
    emit(blocks);
    return;
  }
  const Label a = static_cast<Label>(i + 1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(a);
    set_partitions(n, i + 1, blocks, emit);
    blocks[b].pop_back();
  }
  blocks.push_back({a});
  set_partitions(n, i + 1, blocks, emit);
  blocks.pop_back();
}

std::vector<Wheel> orderings(std::vector<Label> labels, bool proper_only) {
  std::sort(labels.begin(), labels.end());
  std::vector<Wheel> out;
  do {
    Wheel v{labels};
    if (!proper_only || v.largest_first()) out.push_back(v);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

/// Calls emit for every choice of one ordering per block, wheels sorted by rank.
void wheel_choices(const std::vector<std::vector<Label>>& blocks, bool proper_only,
                   const std::function<void(const std::vector<Wheel>&)>& emit) {
  std::vector<std::vector<Wheel>> options;
  for (const auto& b : blocks) options.push_back(orderings(b, proper_only));
  std::vector<std::size_t> pick(blocks.size(), 0);
  while (true) {
    std::vector<Wheel> ws;
    for (std::size_t i = 0; i < blocks.size(); ++i) ws.push_back(options[i][pick[i]]);
    std::sort(ws.begin(), ws.end(), rank_less);
    emit(ws);
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
}

}  // namespace

std::vector<RelationInstance> relation_instances(RelationFamily family, std::size_t max_labels, Weight width) {
  std::vector<RelationInstance> out;
  for (std::size_t n = 1; n <= max_labels; ++n) {
    std::vector<std::vector<Label>> blocks;
    set_partitions(n, 0, blocks, [&](const std::vector<std::vector<Label>>& parts) {
      std::vector<Weight> sizes;
      for (const auto& p : parts) sizes.push_back(static_cast<Weight>(p.size()));
      const std::size_t m = parts.size();
      switch (family) {
        case RelationFamily::R1:
          if (m == 1 && static_cast<Weight>(n) <= width)
            for (const auto& v : orderings(parts[0], false))
              if (!v.largest_first()) out.push_back(proper_wheel_relation(v, width));
          break;
        case RelationFamily::R2:
          if (m == 2 && static_cast<Weight>(n) <= width)
            wheel_choices(parts, true, [&](const std::vector<Wheel>& ws) {
              out.push_back(commutation_relation(ws[0], ws[1], width));
              out.push_back(commutation_relation(ws[1], ws[0], width));
            });
          break;
        case RelationFamily::R3:
          if (m >= 2 && filter_admissible(sizes, width))
            wheel_choices(parts, true, [&](const std::vector<Wheel>& ws) {
              std::vector<std::size_t> order(m);
              std::iota(order.begin(), order.end(), 0);
              while (std::next_permutation(order.begin(), order.end())) out.push_back(reorder_relation(ws, order, width));
            });
          break;
        case RelationFamily::R4:
          if (m >= 2 && filter_admissible(sizes, width))
            wheel_choices(parts, false, [&](const std::vector<Wheel>& ws) {
              if (std::any_of(ws.begin(), ws.end(), [](const Wheel& v) { return !v.largest_first(); }))
                out.push_back(filter_properization_relation(ws, width));
            });
          break;
        case RelationFamily::R5:
          if (exchange_admissible(sizes, width) &&
              std::all_of(sizes.begin(), sizes.end(), [&](Weight s) { return s <= width; }))
            wheel_choices(parts, true, [&](const std::vector<Wheel>& ws) { out.push_back(exchange_relation(ws, width)); });
          break;
      }
    });
  }
  return out;
}

namespace {
// Trivial filters vanish in homology and two-wheel filters are not
// generators, so neither carries a barrier count.
bool counts_barriers(const GeneratorWord& w, Weight width) {
  for (const auto& f : w.factors)
    if (const auto* ff = std::get_if<FilterFactor>(&f))
      if (ff->wheels.size() < 3 || !filter_nontrivial(sizes_of(ff->wheels), width)) return false;
  return true;
}
}  // namespace

RelationCheck check_relation(const RelationInstance& r, HomologyEngine& engine) {
  RelationCheck out;
  auto diff = r.difference();
  if (diff.empty()) {
    out.boundary = true;
  } else {
    auto z = combination_cycle(diff, r.width);
    out.boundary = z.is_zero() || engine.is_boundary(z, true, false).is_boundary;
  }
  for (std::size_t d = 1; d <= static_cast<std::size_t>(r.width / 2); ++d) {
    std::set<std::size_t> counts;
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const auto& [w, q] : *side)
        if (counts_barriers(w, r.width)) counts.insert(count_barriers(w, d, r.width));
    if (counts.size() > 1) out.barriers_kept = false;
  }
  if (r.exchange && r.exchange->a.size() <= 4) out.closed_forms = r.exchange->closed_forms_match();
  return out;
}

// -------------------------------------------------------------- reduction

void require_generators(const GeneratorWord& x, Weight w) {
  std::set<Label> seen;
  for (Label a : x.labels())
    if (!seen.insert(a).second) throw InvalidInput("label " + std::to_string(a) + " repeats in " + format_word(x));
  for (const auto& f : x.factors) {
    if (const auto* v = std::get_if<Wheel>(&f)) {
      if (v->labels.empty()) throw InvalidInput("empty wheel");
      if (static_cast<Weight>(v->size()) > w) throw InvalidInput(format_wheel(*v) + " is wider than the strip");
      if (!v->largest_first())
        throw InvalidInput(format_wheel(*v) + " is not a generator: its largest label must come first (apply act to properize)");
      continue;
    }
    const auto& ff = std::get<FilterFactor>(f);
    if (ff.kind == FilterKind::plain)
      throw InvalidInput(format_factor(f) + " is not a generator: use averaged filters AF(...)");
    if (ff.wheels.size() == 2)
      throw InvalidInput(format_factor(f) + " is not a generator: write it with the ordered products " +
                         format_wheel(ff.wheels[0]) + "|" + format_wheel(ff.wheels[1]) + " and " +
                         format_wheel(ff.wheels[1]) + "|" + format_wheel(ff.wheels[0]));
    if (ff.wheels.size() < 2) throw InvalidInput(format_factor(f) + " needs at least three wheels");
    for (const auto& v : ff.wheels)
      if (!v.largest_first() || static_cast<Weight>(v.size()) > w)
        throw InvalidInput(format_wheel(v) + " inside " + format_factor(f) + " is not a generator wheel (apply act to properize)");
    for (std::size_t i = 1; i < ff.wheels.size(); ++i)
      if (!rank_less(ff.wheels[i - 1], ff.wheels[i]))
        throw InvalidInput(format_factor(f) + " is not a generator: list its wheels in increasing rank (apply act)");
    require_filter_admissible(sizes_of(ff.wheels), w);
  }
}

namespace {

using Signature = std::vector<std::tuple<int, std::size_t, Label>>;

Signature signature(const GeneratorWord& x) {
  Signature s;
  for (const auto& f : x.factors) {
    if (const auto* v = std::get_if<Wheel>(&f))
      s.emplace_back(0, v->size(), v->largest());
    else
      s.emplace_back(1, 0, 0);
  }
  return s;
}

class Reducer {
 public:
  explicit Reducer(Weight w) : w_(w) {}

  WordCombination word(const GeneratorWord& x) {
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(x);
      if (it != memo_.end()) return it->second;
    }
    WordCombination r = compute(x);
    std::unique_lock lock(mu_);
    return memo_.try_emplace(x, std::move(r)).first->second;
  }

 private:
  WordCombination compute(const GeneratorWord& x) {
    for (const auto& f : x.factors)
      if (const auto* ff = std::get_if<FilterFactor>(&f))
        if (!filter_nontrivial(sizes_of(ff->wheels), w_)) return {};
    const auto before = signature(x);
    auto follow = [&](const GeneratorWord& y) {
      if (!(signature(y) > before)) throw InvariantViolation("rewrite of " + format_word(x) + " did not progress");
      return word(y);
    };
    for (std::size_t i = 1; i < x.factors.size(); ++i) {
      const auto* left = std::get_if<Wheel>(&x.factors[i - 1]);
      if (left == nullptr) continue;
      const auto nl = static_cast<Weight>(left->size());
      if (const auto* right = std::get_if<Wheel>(&x.factors[i])) {
        const auto nr = static_cast<Weight>(right->size());
        if (outranks(*right, *left) && nl + nr <= w_) {
          GeneratorWord y = x;
          std::swap(y.factors[i - 1], y.factors[i]);
          return scaled(follow(y), Rational(parity_sign((nl - 1) * (nr - 1))));
        }
        continue;
      }
      const auto& ff = std::get<FilterFactor>(x.factors[i]);
      if (!outranks(ff.wheels.front(), *left)) continue;
      std::vector<Wheel> u{*left};
      u.insert(u.end(), ff.wheels.begin(), ff.wheels.end());
      auto c = exchange_coefficients(u);
      WordCombination out;
      auto put = [&](std::size_t k, bool wheel_first, int coeff) {
        std::vector<Wheel> rest;
        for (std::size_t j = 0; j < u.size(); ++j)
          if (j != k) rest.push_back(u[j]);
        if (!filter_nontrivial(sizes_of(rest), w_)) return;
        GeneratorWord y;
        y.factors.assign(x.factors.begin(), x.factors.begin() + static_cast<std::ptrdiff_t>(i - 1));
        Factor af = FilterFactor{FilterKind::averaged, rest};
        if (wheel_first) {
          y.factors.push_back(u[k]);
          y.factors.push_back(af);
        } else {
          y.factors.push_back(af);
          y.factors.push_back(u[k]);
        }
        y.factors.insert(y.factors.end(), x.factors.begin() + static_cast<std::ptrdiff_t>(i + 1), x.factors.end());
        add_all(out, follow(y), Rational(-coeff, c.a[0]));
      };
      for (std::size_t k = 1; k < u.size(); ++k) put(k, true, c.a[k]);
      for (std::size_t k = 0; k < u.size(); ++k) put(k, false, c.b[k]);
      return out;
    }
    if (!is_basis_word(x, w_, BasisKind::AMW))
      throw InvariantViolation("reduction stopped at a non-basis word " + format_word(x));
    return unit(x);
  }

  Weight w_;
  std::shared_mutex mu_;
  std::map<GeneratorWord, WordCombination> memo_;
};

Reducer& reducer(Weight w) {
  static std::mutex mu;
  static std::map<Weight, std::unique_ptr<Reducer>> all;
  std::lock_guard lock(mu);
  auto& r = all[w];
  if (!r) r = std::make_unique<Reducer>(w);
  return *r;
}

}  // namespace

WordCombination reduce(const GeneratorWord& x, Weight w) {
  if (w < 1) throw InvalidInput("width must be positive");
  require_generators(x, w);
  return reducer(w).word(x);
}

WordCombination reduce(const WordCombination& x, Weight w) {
  WordCombination out;
  for (const auto& [word, q] : x) add_all(out, reduce(word, w), q);
  return out;
}

// ---------------------------------------------------------------- barriers

namespace {
void require_order(std::size_t d, Weight w, std::size_t lowest) {
  if (w < 2 || d < lowest || d > static_cast<std::size_t>(w / 2))
    throw InvalidInput("order d=" + std::to_string(d) + " outside " + std::to_string(lowest) + "..floor(w/2) for w=" +
                       std::to_string(w));
}
}  // namespace

std::size_t count_barriers(const GeneratorWord& word, std::size_t d, Weight w) {
  require_order(d, w, 1);
  std::size_t count = 0;
  for (const auto& f : word.factors) {
    if (const auto* v = std::get_if<Wheel>(&f))
      count += static_cast<Weight>(v->size()) >= w + 1 - static_cast<Weight>(d) ? 1 : 0;
    else
      ++count;
  }
  return count;
}

std::map<std::size_t, WordCombination> barrier_decompose(const WordCombination& x, std::size_t d, Weight w) {
  std::map<std::size_t, WordCombination> out;
  for (const auto& [word, q] : x) add_term(out[count_barriers(word, d, w)], word, q);
  return out;
}

StabilityParams stability_params(std::size_t k, Weight w) {
  if (w < 2) throw InvalidInput("stability needs w ≥ 2");
  StabilityParams p;
  p.order = 1;
  p.index = k;
  p.width = w;
  p.b = k / static_cast<std::size_t>(w - 1);
  p.generation_degree = w >= 3 ? 2 * k : 3 * k;
  return p;
}

StabilityParams higher_stability_params(std::size_t d, std::size_t i, Weight w) {
  require_order(d, w, 1);
  StabilityParams p;
  p.order = d;
  p.index = i;
  p.width = w;
  p.b = d * i / static_cast<std::size_t>(w - static_cast<Weight>(d));
  p.generation_degree = w >= static_cast<Weight>(2 * d + 1) ? (d + 1) * i : (d + 1) * i + d;
  return p;
}

WordCombination quotient_reduce(const WordCombination& x, std::size_t d, Weight w) {
  if (d > 0) require_order(d, w, 1);
  WordCombination out;
  for (const auto& [word, q] : reduce(x, w)) {
    bool killed = std::any_of(word.factors.begin(), word.factors.end(), [&](const Factor& f) {
      const auto* v = std::get_if<Wheel>(&f);
      return v != nullptr && v->size() <= d;
    });
    if (!killed) add_term(out, word, q);
  }
  return out;
}

GenerationReport generation_check(std::size_t k, Weight w) {
  auto p = stability_params(k, w);
  GenerationReport r;
  r.k = k;
  r.w = w;
  r.n = p.generation_degree + 1;
  auto words = enumerate_basis(r.n, w, k, BasisKind::AMW);
  r.elements = words.size();
  for (const auto& x : words) {
    bool bare = std::any_of(x.factors.begin(), x.factors.end(), [](const Factor& f) {
      const auto* v = std::get_if<Wheel>(&f);
      return v != nullptr && v->size() == 1;
    });
    if (!bare) r.counterexamples.push_back(x);
  }
  return r;
}

}  // namespace stripconf
