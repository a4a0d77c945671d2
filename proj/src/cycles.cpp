#include "stripconf/cycles.hpp"

#include "stripconf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <set>

namespace stripconf {

// ------------------------------------------------------------------- trees

WheelTree WheelTree::leaf(Label a, Weight w) {
  if (a <= 0 || w <= 0) throw InvalidInput("wheel leaves need positive label and weight");
  WheelTree t;
  t.leaf_ = {a, w};
  t.weight_ = w;
  return t;
}

WheelTree WheelTree::node(WheelTree left, WheelTree right) {
  WheelTree t;
  t.weight_ = left.weight_ + right.weight_;
  t.left_ = std::make_shared<const WheelTree>(std::move(left));
  t.right_ = std::make_shared<const WheelTree>(std::move(right));
  return t;
}

WheelTree WheelTree::proper(const std::vector<Label>& labels) {
  if (labels.empty()) throw InvalidInput("a wheel needs at least one label");
  WheelTree t = leaf(labels.front());
  for (std::size_t i = 1; i < labels.size(); ++i) t = node(std::move(t), leaf(labels[i]));
  return t;
}

std::vector<WeightedLabel> WheelTree::leaves() const {
  if (is_leaf()) return {leaf_};
  auto out = left_->leaves();
  auto r = right_->leaves();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool WheelTree::is_proper() const {
  if (is_leaf()) return true;
  return right_->is_leaf() && left_->is_proper();
}

std::string WheelTree::to_string() const {
  if (is_proper()) {
    std::string out = "W(";
    auto ls = leaves();
    for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + std::to_string(ls[i].label);
    return out + ")";
  }
  auto inner = [](const WheelTree& t) -> std::string {
    if (t.is_leaf()) return std::to_string(t.leaf_.label);
    return t.to_string();
  };
  return "[" + inner(*left_) + " " + inner(*right_) + "]";
}

SpinProgram WheelTree::program(Label root, Label& next_fresh) const {
  SpinProgram out;
  if (is_leaf()) return out;
  auto id_of = [&next_fresh](const WheelTree& t) { return t.is_leaf() ? t.leaf_.label : next_fresh++; };
  Label l = id_of(*left_);
  Label r = id_of(*right_);
  out.push_back(SpinStep{root, {l, left_->weight_}, {r, right_->weight_}});
  auto pl = left_->program(l, next_fresh);
  auto pr = right_->program(r, next_fresh);
  out.insert(out.end(), pl.begin(), pl.end());
  out.insert(out.end(), pr.begin(), pr.end());
  return out;
}

// ------------------------------------------------------------------- words

Label Wheel::largest() const {
  if (labels.empty()) throw InvalidInput("empty wheel");
  return *std::max_element(labels.begin(), labels.end());
}

bool Wheel::largest_first() const { return !labels.empty() && labels.front() == largest(); }

bool outranks(const Wheel& a, const Wheel& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.largest() > b.largest();
}

std::size_t FilterFactor::size() const {
  std::size_t t = 0;
  for (const auto& w : wheels) t += w.size();
  return t;
}

std::vector<Label> GeneratorWord::labels() const {
  std::vector<Label> out;
  for (const auto& f : factors) {
    if (const auto* w = std::get_if<Wheel>(&f)) {
      out.insert(out.end(), w->labels.begin(), w->labels.end());
    } else {
      for (const auto& v : std::get<FilterFactor>(f).wheels) out.insert(out.end(), v.labels.begin(), v.labels.end());
    }
  }
  return out;
}

std::size_t GeneratorWord::degree() const {
  std::size_t d = 0;
  for (const auto& f : factors) {
    if (const auto* w = std::get_if<Wheel>(&f))
      d += w->size() - 1;
    else
      d += std::get<FilterFactor>(f).size() - 2;
  }
  return d;
}

void add_term(WordCombination& acc, const GeneratorWord& w, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = acc.try_emplace(w, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) acc.erase(it);
  }
}

WordCombination scaled(const WordCombination& x, const Rational& s) {
  WordCombination out;
  if (s == 0) return out;
  for (const auto& [w, q] : x) out.emplace(w, q * s);
  return out;
}

std::string format_wheel(const Wheel& w) {
  std::string out = "W(";
  for (std::size_t i = 0; i < w.labels.size(); ++i) out += (i ? "," : "") + std::to_string(w.labels[i]);
  return out + ")";
}

std::string format_factor(const Factor& f) {
  if (const auto* w = std::get_if<Wheel>(&f)) return format_wheel(*w);
  const auto& ff = std::get<FilterFactor>(f);
  std::string out = ff.kind == FilterKind::averaged ? "AF(" : "F(";
  for (std::size_t i = 0; i < ff.wheels.size(); ++i) out += (i ? "," : "") + format_wheel(ff.wheels[i]);
  return out + ")";
}

std::string format_word(const GeneratorWord& w) {
  if (w.factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.factors.size(); ++i) out += (i ? "|" : "") + format_factor(w.factors[i]);
  return out;
}

std::string format_combination(const WordCombination& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, q] : x) {
    Rational a = abs(q);
    if (first)
      out += q < 0 ? "-" : "";
    else
      out += q < 0 ? " - " : " + ";
    first = false;
    if (a != 1) out += to_string(a) + "*";
    out += format_word(w);
  }
  return out;
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  WordCombination combination() {
    WordCombination out;
    if (s_ == "0") return out;
    bool first = true;
    while (i_ < s_.size() || first) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      Rational coeff = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
        coeff = parse_rational(s_.substr(start, i_ - start));
        if (peek() == '*') ++i_;
      }
      add_term(out, word(), sign * coeff);
    }
    return out;
  }

  GeneratorWord word_only() {
    if (s_ == "1") return {};
    auto w = word();
    if (i_ != s_.size()) fail("trailing characters");
    return w;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char get() { return i_ < s_.size() ? s_[i_++] : '\0'; }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("cannot parse word at offset " + std::to_string(i_) + " (" + why + "): " + s_);
  }
  void expect(char ch) {
    if (get() != ch) fail(std::string("expected '") + ch + "'");
  }
  bool starts_with(std::string_view t) const { return s_.compare(i_, t.size(), t) == 0; }

  Label label() {
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a label");
    auto v = std::stoll(s_.substr(start, i_ - start));
    if (v <= 0) fail("labels must be positive");
    return v;
  }

  Wheel wheel() {
    if (!starts_with("W(")) fail("expected W(");
    i_ += 2;
    Wheel w;
    w.labels.push_back(label());
    while (peek() == ',') {
      ++i_;
      w.labels.push_back(label());
    }
    expect(')');
    return w;
  }

  Factor factor() {
    if (starts_with("W(")) return wheel();
    FilterFactor f;
    if (starts_with("AF(")) {
      f.kind = FilterKind::averaged;
      i_ += 3;
    } else if (starts_with("F(")) {
      f.kind = FilterKind::plain;
      i_ += 2;
    } else {
      fail("expected W(, F( or AF(");
    }
    f.wheels.push_back(wheel());
    while (peek() == ',') {
      ++i_;
      f.wheels.push_back(wheel());
    }
    expect(')');
    return f;
  }

  GeneratorWord word() {
    GeneratorWord w;
    if (peek() == '\0' || peek() == '+' || peek() == '-') return w;
    w.factors.push_back(factor());
    while (peek() == '|') {
      ++i_;
      w.factors.push_back(factor());
    }
    auto ls = w.labels();
    std::sort(ls.begin(), ls.end());
    if (std::adjacent_find(ls.begin(), ls.end()) != ls.end()) fail("a label occurs twice");
    return w;
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

GeneratorWord parse_word(std::string_view text) { return WordParser(text).word_only(); }
WordCombination parse_combination(std::string_view text) { return WordParser(text).combination(); }

// -------------------------------------------------------------- admissibility

bool filter_admissible(const std::vector<Weight>& sizes, Weight width) {
  if (sizes.size() < 2 || width < 2) return false;
  Weight total = 0;
  for (auto s : sizes) {
    if (s < 1) return false;
    total += s;
  }
  return total - *std::min_element(sizes.begin(), sizes.end()) <= width;
}

void require_filter_admissible(const std::vector<Weight>& sizes, Weight width) {
  if (filter_admissible(sizes, width)) return;
  std::string s;
  for (auto v : sizes) s += (s.empty() ? "" : ",") + std::to_string(v);
  throw InvalidInput("filter not admissible: wheel sizes (" + s + ") at width " + std::to_string(width) +
                     " (need at least 2 wheels, width at least 2, every sum of all but one size at most the width)");
}

bool filter_nontrivial(const std::vector<Weight>& sizes, Weight width) {
  return std::accumulate(sizes.begin(), sizes.end(), Weight{0}) > width;
}

// -------------------------------------------------------------- cycle chains

ChainVector wheel_cycle(const WheelTree& tree, Weight width) {
  auto leaves = tree.leaves();
  if (tree.weight() > width)
    throw InvalidInput("wheel " + tree.to_string() + " has weight " + std::to_string(tree.weight()) +
                       " above width " + std::to_string(width));
  WeightedSet leaf_set(leaves);  // rejects repeats
  if (tree.is_leaf()) return ChainVector::of(ComplexSpec::cells(leaf_set, width), Cell{{1}, {leaves[0].label}});
  Label root = leaf_set.max_label() + 1;
  Label fresh = root + 1;
  auto prog = tree.program(root, fresh);
  auto start = ChainVector::of(ComplexSpec::cells(WeightedSet({{root, tree.weight()}}), width), Cell{{1}, {root}});
  return spin(prog, start);
}

ChainVector wheel_cycle(const Wheel& wheel, Weight width) { return wheel_cycle(WheelTree::proper(wheel.labels), width); }

ChainVector top_boundary(const WeightedSet& wheels) {
  auto spec = ComplexSpec::unrestricted(wheels, ComplexKind::permutohedron);
  Cell top{{static_cast<std::uint32_t>(wheels.size())}, wheels.labels()};
  return boundary_of_cell(spec, top);
}

ChainVector filter_cycle(const std::vector<WheelTree>& wheels, Weight width, FilterKind kind) {
  std::vector<Weight> sizes;
  std::vector<WeightedLabel> all_leaves;
  for (const auto& t : wheels) {
    sizes.push_back(t.weight());
    auto l = t.leaves();
    all_leaves.insert(all_leaves.end(), l.begin(), l.end());
  }
  require_filter_admissible(sizes, width);
  WeightedSet leaf_set(all_leaves);
  const Label base = leaf_set.max_label();
  std::vector<WeightedLabel> ids;
  for (std::size_t i = 0; i < wheels.size(); ++i) ids.push_back({base + 1 + static_cast<Label>(i), sizes[i]});
  WeightedSet id_set(ids);
  ChainVector z = top_boundary(id_set).retarget(ComplexSpec::permutohedron(id_set, width));
  ChainVector x = kind == FilterKind::plain ? include_identity(z) : average_inclusion(z);
  Label fresh = base + static_cast<Label>(wheels.size()) + 1;
  for (std::size_t i = 0; i < wheels.size(); ++i) {
    Label id = ids[i].label;
    if (wheels[i].is_leaf()) {
      Label leaf = wheels[i].leaf_label().label;
      x = relabel(x, Permutation({{id, leaf}, {leaf, id}}));
    } else {
      x = spin(wheels[i].program(id, fresh), x);
    }
  }
  if (sizes.front() % 2 != 0) x *= Rational(-1);
  return x;
}

ChainVector filter_cycle(const FilterFactor& f, Weight width) {
  std::vector<WheelTree> trees;
  for (const auto& w : f.wheels) trees.push_back(WheelTree::proper(w.labels));
  return filter_cycle(trees, width, f.kind);
}

ChainVector factor_cycle(const Factor& f, Weight width) {
  if (const auto* w = std::get_if<Wheel>(&f)) return wheel_cycle(*w, width);
  return filter_cycle(std::get<FilterFactor>(f), width);
}

ChainVector word_cycle(const GeneratorWord& w, Weight width) {
  ChainVector acc = ChainVector::of(ComplexSpec::cells(WeightedSet{}, width), Cell{});
  for (const auto& f : w.factors) acc = concat(acc, factor_cycle(f, width));
  return acc;
}

ChainVector combination_cycle(const WordCombination& x, Weight width) {
  if (x.empty()) throw InvalidInput("zero combination has no ambient complex");
  std::optional<ChainVector> acc;
  for (const auto& [w, q] : x) {
    ChainVector c = word_cycle(w, width);
    c *= q;
    if (!acc)
      acc = std::move(c);
    else
      *acc += c;
  }
  return *acc;
}

ChainVector CycleCache::get(const GeneratorWord& w, Weight width) {
  auto key = std::make_pair(w, width);
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  ChainVector c = word_cycle(w, width);
  std::unique_lock lock(mu_);
  return memo_.try_emplace(std::move(key), std::move(c)).first->second;
}

std::size_t CycleCache::size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

// ------------------------------------------------------------- permutations

int lex_compare(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return -1;
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) return 1;
  return 0;
}

namespace {

void require_word(const std::vector<Label>& sigma) {
  if (sigma.empty()) throw InvalidInput("empty permutation");
  auto s = sigma;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("permutation repeats a label");
  if (s.front() <= 0) throw InvalidInput("labels must be positive");
}

}  // namespace

std::vector<std::vector<Label>> wheel_decomposition(const std::vector<Label>& sigma) {
  require_word(sigma);
  std::vector<std::vector<Label>> out;
  Label top = 0;
  for (Label a : sigma) {
    if (a > top) {
      out.push_back({a});
      top = a;
    } else {
      out.back().push_back(a);
    }
  }
  return out;
}

std::vector<std::vector<Label>> orbit_S(const std::vector<Label>& sigma) {
  auto wheels = wheel_decomposition(sigma);
  std::vector<std::size_t> idx(wheels.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::set<std::vector<Label>> seen;
  do {
    std::vector<Label> t;
    for (auto i : idx) t.insert(t.end(), wheels[i].begin(), wheels[i].end());
    seen.insert(std::move(t));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return {seen.begin(), seen.end()};
}

WeightedSet wheel_weights(const std::vector<Label>& sigma) {
  std::vector<WeightedLabel> items;
  for (const auto& w : wheel_decomposition(sigma)) items.push_back({w.front(), static_cast<Weight>(w.size())});
  return WeightedSet(std::move(items));
}

SpinProgram spin_sigma(const std::vector<Label>& sigma) {
  SpinProgram out;
  for (const auto& w : wheel_decomposition(sigma))
    for (std::size_t len = w.size(); len > 1; --len)
      out.push_back(SpinStep{w.front(), {w.front(), static_cast<Weight>(len - 1)}, {w[len - 1], 1}});
  return out;
}

SpinProgram spin_tau_sigma(const std::vector<Label>& tau, const std::vector<Label>& sigma) {
  auto orbit = orbit_S(sigma);
  if (!std::binary_search(orbit.begin(), orbit.end(), tau)) throw InvalidInput("tau is not in the orbit S(sigma)");
  std::map<Label, std::vector<Label>> by_axle;
  for (const auto& w : wheel_decomposition(sigma)) by_axle[w.front()] = w;
  SpinProgram out;
  for (const auto& tw : wheel_decomposition(tau)) {
    std::vector<std::vector<Label>> pieces;
    std::size_t at = 0;
    while (at < tw.size()) {
      const auto& piece = by_axle.at(tw[at]);
      pieces.push_back(piece);
      at += piece.size();
    }
    Weight total = static_cast<Weight>(tw.size());
    for (std::size_t k = pieces.size(); k > 1; --k) {
      Weight last = static_cast<Weight>(pieces[k - 1].size());
      out.push_back(SpinStep{tw.front(), {tw.front(), total - last}, {pieces[k - 1].front(), last}});
      total -= last;
    }
  }
  return out;
}

}  // namespace stripconf
