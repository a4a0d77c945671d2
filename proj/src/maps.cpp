#include "stripconf/maps.hpp"

#include "stripconf/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stripconf {

namespace {

void check_step(const SpinStep& s, const ComplexSpec& spec) {
  if (spec.kind != ComplexKind::ordered) throw InvalidInput("spin acts on ordered cell complexes");
  if (!spec.set.contains(s.source)) throw InvalidInput("spin source " + std::to_string(s.source) + " not in complex");
  if (s.b.label == s.c.label) throw InvalidInput("spin targets must differ");
  if (s.b.weight < 1 || s.c.weight < 1) throw InvalidInput("spin target weights must be positive");
  if (spec.set.weight(s.source) != s.b.weight + s.c.weight)
    throw InvalidInput("spin weights do not add up for source " + std::to_string(s.source));
  for (Label t : {s.b.label, s.c.label})
    if (t != s.source && spec.set.contains(t))
      throw InvalidInput("spin target " + std::to_string(t) + " already in complex");
}

ComplexSpec step_target(const SpinStep& s, const ComplexSpec& spec) {
  check_step(s, spec);
  return ComplexSpec{spec.set.without(s.source).with(s.b).with(s.c), spec.width, spec.kind};
}

}  // namespace

ComplexSpec spin_target(const SpinProgram& program, const ComplexSpec& spec) {
  ComplexSpec cur = spec;
  for (const auto& s : program) cur = step_target(s, cur);
  return cur;
}

ChainVector spin(const SpinStep& step, const ChainVector& x) {
  ComplexSpec target = step_target(step, x.complex());
  ChainVector out(target, x.degree() + 1);
  const bool odd = ((step.b.weight * step.c.weight - 1) & 1) != 0;
  for (const auto& [c, q] : x.terms()) {
    auto it = std::find(c.labels.begin(), c.labels.end(), step.source);
    auto at = static_cast<std::size_t>(it - c.labels.begin());
    std::size_t block = 0, start = 0;
    while (start + c.blocks[block] <= at) start += c.blocks[block++];
    Cell bc;
    bc.blocks = c.blocks;
    bc.blocks[block] += 1;
    bc.labels.reserve(c.labels.size() + 1);
    bc.labels.insert(bc.labels.end(), c.labels.begin(), it);
    Cell cb = bc;
    bc.labels.push_back(step.b.label);
    bc.labels.push_back(step.c.label);
    cb.labels.push_back(step.c.label);
    cb.labels.push_back(step.b.label);
    bc.labels.insert(bc.labels.end(), it + 1, c.labels.end());
    cb.labels.insert(cb.labels.end(), it + 1, c.labels.end());
    out.add_unchecked(bc, q);
    out.add_unchecked(cb, odd ? Rational(-q) : q);
  }
  return out;
}

ChainVector spin(const SpinProgram& program, const ChainVector& x) {
  ChainVector cur = x;
  for (const auto& s : program) cur = spin(s, cur);
  return cur;
}

// ------------------------------------------------------------------ inclusions

namespace {

void require_perm_chain(const ChainVector& x) {
  if (x.complex().kind != ComplexKind::permutohedron) throw InvalidInput("expected a permutohedral chain");
}

std::map<Label, std::size_t> positions(const std::vector<Label>& ordering, const WeightedSet& set) {
  std::vector<Label> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != set.labels()) throw InvalidInput("ordering is not an arrangement of the complex's labels");
  std::map<Label, std::size_t> pos;
  for (std::size_t i = 0; i < ordering.size(); ++i) pos[ordering[i]] = i;
  return pos;
}

ComplexSpec ordered_twin(const ComplexSpec& spec) { return ComplexSpec{spec.set, spec.width, ComplexKind::ordered}; }

// block-wise rearrangement by `pos`, returning the sign from ascending order
int rearrange(const WeightedSet& set, const std::map<Label, std::size_t>& pos, Cell& c) {
  int sign = 1;
  std::size_t at = 0;
  for (auto len : c.blocks) {
    auto first = c.labels.begin() + static_cast<std::ptrdiff_t>(at);
    std::vector<Label> before(first, first + len);
    std::sort(first, first + len, [&](Label a, Label b) { return pos.at(a) < pos.at(b); });
    std::vector<Label> after(first, first + len);
    sign *= wsgn(set, before, after);
    at += len;
  }
  return sign;
}

}  // namespace

ChainVector include_permutohedron(const std::vector<Label>& ordering, const ChainVector& x) {
  require_perm_chain(x);
  auto pos = positions(ordering, x.complex().set);
  ChainVector out(ordered_twin(x.complex()), x.degree());
  for (const auto& [c, q] : x.terms()) {
    Cell d = c;
    int s = rearrange(x.complex().set, pos, d);
    out.add_unchecked(d, s > 0 ? q : Rational(-q));
  }
  return out;
}

ChainVector include_identity(const ChainVector& x) {
  require_perm_chain(x);
  ChainVector out(ordered_twin(x.complex()), x.degree());
  for (const auto& [c, q] : x.terms()) out.add_unchecked(c, q);
  return out;
}

ChainVector include_permutohedron_top_normalised(const std::vector<Label>& ordering, const ChainVector& x) {
  require_perm_chain(x);
  int s = wsgn(x.complex().set, x.complex().set.labels(), ordering);
  ChainVector out = include_permutohedron(ordering, x);
  if (s < 0) out *= Rational(-1);
  return out;
}

ChainVector average_inclusion(const ChainVector& x) {
  require_perm_chain(x);
  const auto& set = x.complex().set;
  ChainVector out(ordered_twin(x.complex()), x.degree());
  for (const auto& [c, q] : x.terms()) {
    // expand the product over blocks of (1/|B|!) Σ_τ wsgn(asc B -> τ) τ
    std::vector<std::pair<std::vector<Label>, Rational>> partial{{{}, q}};
    for (const auto& block : c.split()) {
      std::vector<std::pair<std::vector<Label>, Rational>> next;
      std::vector<Label> tau = block;  // ascending already
      Rational count = 0;
      std::vector<std::pair<std::vector<Label>, int>> orders;
      do {
        orders.emplace_back(tau, wsgn(set, block, tau));
        count += 1;
      } while (std::next_permutation(tau.begin(), tau.end()));
      for (const auto& [prefix, coeff] : partial)
        for (const auto& [ord, s] : orders) {
          auto seq = prefix;
          seq.insert(seq.end(), ord.begin(), ord.end());
          next.emplace_back(std::move(seq), s > 0 ? Rational(coeff / count) : Rational(-coeff / count));
        }
      partial = std::move(next);
    }
    for (auto& [seq, coeff] : partial) {
      Cell d;
      d.blocks = c.blocks;
      d.labels = std::move(seq);
      out.add_unchecked(d, coeff);
    }
  }
  return out;
}

ChainVector average_inclusion_literal(const ChainVector& x) {
  require_perm_chain(x);
  const auto& set = x.complex().set;
  std::vector<Label> ordering = set.labels();
  Rational total = 0;
  ChainVector acc(ordered_twin(x.complex()), x.degree());
  do {
    int s = wsgn(set, set.labels(), ordering);
    ChainVector term = include_permutohedron_top_normalised(ordering, x);
    if (s < 0) term *= Rational(-1);
    acc += term;
    total += 1;
  } while (std::next_permutation(ordering.begin(), ordering.end()));
  acc *= Rational(1) / total;
  return acc;
}

ChainVector project(const ChainVector& x) {
  const auto& spec = x.complex();
  if (spec.kind != ComplexKind::ordered) throw InvalidInput("project expects an ordered cell chain");
  ComplexSpec target{spec.set, spec.width, ComplexKind::permutohedron};
  ChainVector out(target, x.degree());
  std::map<Label, std::size_t> pos;
  auto labels = spec.set.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = i;
  for (const auto& [c, q] : x.terms()) {
    Cell d = c;
    int s = rearrange(spec.set, pos, d);
    out.add_unchecked(d, s > 0 ? q : Rational(-q));
  }
  return out;
}

}  // namespace stripconf
