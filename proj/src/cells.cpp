#include "stripconf/cells.hpp"

#include "stripconf/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace stripconf {

namespace {

std::vector<std::string> tokens(std::string_view text, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || seps.find(ch) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput(std::string("bad ") + what + ": " + s);
  }
  if (used != s.size()) throw InvalidInput(std::string("bad ") + what + ": " + s);
  return v;
}

}  // namespace

// ---------------------------------------------------------------- WeightedSet

WeightedSet::WeightedSet(std::vector<WeightedLabel> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].label <= 0) throw InvalidInput("labels must be positive");
    if (items_[i].weight <= 0) throw InvalidInput("weights must be positive");
    if (i > 0 && items_[i].label == items_[i - 1].label)
      throw InvalidInput("duplicate label " + std::to_string(items_[i].label));
  }
}

WeightedSet WeightedSet::unit(const std::vector<Label>& labels) {
  std::vector<WeightedLabel> items;
  items.reserve(labels.size());
  for (Label a : labels) items.push_back({a, 1});
  return WeightedSet(std::move(items));
}

WeightedSet WeightedSet::range(Label n) {
  std::vector<Label> labels(static_cast<std::size_t>(std::max<Label>(n, 0)));
  std::iota(labels.begin(), labels.end(), Label{1});
  return unit(labels);
}

bool WeightedSet::contains(Label a) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), a,
                             [](const WeightedLabel& x, Label v) { return x.label < v; });
  return it != items_.end() && it->label == a;
}

Weight WeightedSet::weight(Label a) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), a,
                             [](const WeightedLabel& x, Label v) { return x.label < v; });
  if (it == items_.end() || it->label != a) throw InvalidInput("unknown label " + std::to_string(a));
  return it->weight;
}

Weight WeightedSet::total_weight() const {
  Weight t = 0;
  for (const auto& x : items_) t += x.weight;
  return t;
}

std::vector<Label> WeightedSet::labels() const {
  std::vector<Label> out;
  out.reserve(items_.size());
  for (const auto& x : items_) out.push_back(x.label);
  return out;
}

Label WeightedSet::max_label() const { return items_.empty() ? 0 : items_.back().label; }

WeightedSet WeightedSet::with(WeightedLabel x) const {
  auto items = items_;
  items.push_back(x);
  return WeightedSet(std::move(items));
}

WeightedSet WeightedSet::without(Label a) const {
  if (!contains(a)) throw InvalidInput("unknown label " + std::to_string(a));
  std::vector<WeightedLabel> items;
  for (const auto& x : items_)
    if (x.label != a) items.push_back(x);
  return WeightedSet(std::move(items));
}

WeightedSet WeightedSet::united(const WeightedSet& other) const {
  auto items = items_;
  items.insert(items.end(), other.items_.begin(), other.items_.end());
  return WeightedSet(std::move(items));
}

// ----------------------------------------------------------------------- Cell

std::vector<std::vector<Label>> Cell::split() const {
  std::vector<std::vector<Label>> out;
  std::size_t at = 0;
  for (auto len : blocks) {
    out.emplace_back(labels.begin() + static_cast<std::ptrdiff_t>(at),
                     labels.begin() + static_cast<std::ptrdiff_t>(at + len));
    at += len;
  }
  return out;
}

Cell Cell::from_blocks(const std::vector<std::vector<Label>>& blocks) {
  Cell c;
  for (const auto& b : blocks) {
    c.blocks.push_back(static_cast<std::uint32_t>(b.size()));
    c.labels.insert(c.labels.end(), b.begin(), b.end());
  }
  return c;
}

std::size_t CellHash::operator()(const Cell& c) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto b : c.blocks) mix(b);
  mix(0xffff);
  for (auto a : c.labels) mix(static_cast<std::uint64_t>(a));
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- ComplexSpec

ComplexSpec ComplexSpec::cells(Label n, Weight w) { return cells(WeightedSet::range(n), w); }

ComplexSpec ComplexSpec::cells(WeightedSet set, Weight w) {
  if (w < 1) throw InvalidInput("width must be positive");
  return ComplexSpec{std::move(set), w, ComplexKind::ordered};
}

ComplexSpec ComplexSpec::permutohedron(WeightedSet set, Weight w) {
  if (w < 1) throw InvalidInput("width must be positive");
  return ComplexSpec{std::move(set), w, ComplexKind::permutohedron};
}

ComplexSpec ComplexSpec::unrestricted(WeightedSet set, ComplexKind kind) {
  Weight w = std::max<Weight>(set.total_weight(), 1);
  return ComplexSpec{std::move(set), w, kind};
}

Weight ComplexSpec::wlength(const std::vector<Label>& block) const {
  Weight t = 0;
  for (Label a : block) t += set.weight(a);
  return t;
}

Weight ComplexSpec::wdim(const Cell& c) const {
  Weight t = 0;
  for (Label a : c.labels) t += set.weight(a);
  return t - static_cast<Weight>(c.blocks.size());
}

bool ComplexSpec::admits(const Cell& c) const {
  try {
    require(c);
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

void ComplexSpec::require(const Cell& c) const {
  if (c.labels.size() != set.size()) throw InvalidInput("cell " + format_cell(c) + " does not use every label once");
  std::size_t at = 0;
  std::vector<Label> seen;
  seen.reserve(c.labels.size());
  for (auto len : c.blocks) {
    if (len == 0) throw InvalidInput("empty block");
    Weight wl = 0;
    for (std::size_t i = at; i < at + len; ++i) {
      if (at + len > c.labels.size()) throw InvalidInput("block sizes exceed labels");
      wl += set.weight(c.labels[i]);
      if (kind == ComplexKind::permutohedron && i > at && c.labels[i - 1] >= c.labels[i])
        throw InvalidInput("permutohedral block not ascending in " + format_cell(c));
      seen.push_back(c.labels[i]);
    }
    if (wl > width)
      throw InvalidInput("block of weight " + std::to_string(wl) + " exceeds width " + std::to_string(width) +
                         " in " + format_cell(c));
    at += len;
  }
  if (at != c.labels.size()) throw InvalidInput("block sizes do not cover the labels");
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw InvalidInput("repeated label");
}

std::size_t ComplexSpec::top_degree() const {
  // Largest dim attained: fewest blocks. Greedy is not exact with weights,
  // so scan the exact counts.
  auto counts = count_cells(*this);
  std::size_t top = 0;
  for (std::size_t d = 0; d < counts.size(); ++d)
    if (counts[d] > 0) top = d;
  return top;
}

std::string ComplexSpec::canonical() const {
  std::ostringstream os;
  os << (kind == ComplexKind::ordered ? "cell" : "perm") << ";w=" << width << ";A=" << format_weighted_set(set);
  return os.str();
}

// ----------------------------------------------------------------------- wsgn

int wsgn_positions(const std::vector<Weight>& weights, const std::vector<std::size_t>& order) {
  // order[k] = source position placed at target position k.
  int parity = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) parity ^= static_cast<int>((weights[order[i]] * weights[order[j]]) & 1);
  return parity ? -1 : 1;
}

int wsgn(const WeightedSet& set, const std::vector<Label>& from, const std::vector<Label>& to) {
  if (from.size() != to.size()) throw InvalidInput("wsgn: sequences differ in length");
  std::vector<Weight> weights;
  weights.reserve(from.size());
  for (Label a : from) weights.push_back(set.weight(a));
  std::vector<std::size_t> order;
  order.reserve(to.size());
  for (Label b : to) {
    auto it = std::find(from.begin(), from.end(), b);
    if (it == from.end()) throw InvalidInput("wsgn: sequences are not rearrangements");
    order.push_back(static_cast<std::size_t>(it - from.begin()));
  }
  auto check = order;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end())
    throw InvalidInput("wsgn: repeated label");
  return wsgn_positions(weights, order);
}

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::map<Label, Label> images) {
  std::vector<Label> values;
  for (const auto& [a, b] : images) {
    if (a <= 0 || b <= 0) throw InvalidInput("permutation labels must be positive");
    values.push_back(b);
    if (a != b) images_.emplace(a, b);
  }
  std::vector<Label> keys;
  for (const auto& [a, b] : images) keys.push_back(a);
  std::sort(values.begin(), values.end());
  if (values != keys) throw InvalidInput("not a permutation");
}

Permutation Permutation::parse_cycles(std::string_view text) {
  std::map<Label, Label> images;
  std::string s(text);
  auto trimmed = tokens(s, "");
  if (trimmed.empty() || (trimmed.size() == 1 && (trimmed[0] == "e" || trimmed[0] == "id" || trimmed[0] == "()")))
    return Permutation();
  std::size_t i = 0;
  std::vector<Label> used;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') throw InvalidInput("cycle notation expects '(' in: " + s);
    auto close = s.find(')', i);
    if (close == std::string::npos) throw InvalidInput("unbalanced cycle in: " + s);
    std::vector<Label> cyc;
    for (const auto& t : tokens(std::string_view(s).substr(i + 1, close - i - 1), ","))
      cyc.push_back(parse_int(t, "label"));
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      Label a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      if (std::find(used.begin(), used.end(), a) != used.end())
        throw InvalidInput("label repeated across cycles: " + std::to_string(a));
      images[a] = b;
    }
    used.insert(used.end(), cyc.begin(), cyc.end());
    i = close + 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_line(const std::vector<Label>& domain, const std::vector<Label>& images) {
  if (domain.size() != images.size()) throw InvalidInput("one-line permutation has wrong length");
  std::map<Label, Label> m;
  for (std::size_t i = 0; i < domain.size(); ++i) m[domain[i]] = images[i];
  return Permutation(std::move(m));
}

Label Permutation::operator()(Label a) const {
  auto it = images_.find(a);
  return it == images_.end() ? a : it->second;
}

Permutation Permutation::inverse() const {
  std::map<Label, Label> inv;
  for (const auto& [a, b] : images_) inv[b] = a;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& after) const {
  std::map<Label, Label> m;
  for (const auto& [a, b] : images_) m[a] = after(b);
  for (const auto& [a, b] : after.images_)
    if (!m.count(a) && !images_.count(a)) m[a] = b;
  return Permutation(std::move(m));
}

std::string Permutation::to_cycles() const {
  if (images_.empty()) return "()";
  std::string out;
  std::vector<Label> done;
  for (const auto& [start, img] : images_) {
    if (std::find(done.begin(), done.end(), start) != done.end()) continue;
    out += "(";
    Label a = start;
    bool first = true;
    do {
      if (!first) out += " ";
      first = false;
      out += std::to_string(a);
      done.push_back(a);
      a = (*this)(a);
    } while (a != start);
    out += ")";
  }
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct Enumerator {
  const ComplexSpec& spec;
  std::vector<Label> labels;
  std::vector<Weight> weights;
  std::size_t want_blocks;
  std::vector<Cell>* out;
  Cell current;

  void run(std::uint64_t remaining, std::size_t blocks_left) {
    if (remaining == 0) {
      if (blocks_left == 0) out->push_back(current);
      return;
    }
    if (blocks_left == 0) return;
    std::size_t rem_count = static_cast<std::size_t>(__builtin_popcountll(remaining));
    if (rem_count < blocks_left) return;
    // Enumerate nonempty submasks of `remaining`.
    for (std::uint64_t sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
      Weight wl = 0;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (sub >> i & 1ULL) {
          wl += weights[i];
          idx.push_back(i);
        }
      if (wl > spec.width) continue;
      if (rem_count - idx.size() < blocks_left - 1) continue;
      current.blocks.push_back(static_cast<std::uint32_t>(idx.size()));
      auto mark = current.labels.size();
      if (spec.kind == ComplexKind::permutohedron) {
        for (auto i : idx) current.labels.push_back(labels[i]);
        run(remaining & ~sub, blocks_left - 1);
        current.labels.resize(mark);
      } else {
        do {
          for (auto i : idx) current.labels.push_back(labels[i]);
          run(remaining & ~sub, blocks_left - 1);
          current.labels.resize(mark);
        } while (std::next_permutation(idx.begin(), idx.end()));
      }
      current.blocks.pop_back();
    }
  }
};

}  // namespace

std::vector<Cell> enumerate_cells(const ComplexSpec& spec, std::size_t degree) {
  std::size_t n = spec.set.size();
  if (n > 62) throw InvalidInput("too many labels to enumerate");
  std::vector<Cell> out;
  if (n == 0) {
    if (degree == 0) out.push_back(Cell{});
    return out;
  }
  if (degree >= n) return out;
  Enumerator e{spec, spec.set.labels(), {}, n - degree, &out, {}};
  for (const auto& x : spec.set.items()) e.weights.push_back(x.weight);
  e.run((n == 64 ? ~0ULL : ((1ULL << n) - 1)), n - degree);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// DP over the vector of remaining counts per distinct weight.
struct Counter {
  const ComplexSpec& spec;
  std::vector<Weight> class_weight;
  std::map<std::vector<int>, std::vector<mpz_class>> memo;
  std::vector<mpz_class> factorial;

  mpz_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  }

  // result[d] = number of ways to finish with total dim contribution d
  const std::vector<mpz_class>& run(const std::vector<int>& rem) {
    auto it = memo.find(rem);
    if (it != memo.end()) return it->second;
    std::vector<mpz_class> res;
    bool empty = std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; });
    if (empty) {
      res = {1};
      return memo.emplace(rem, res).first->second;
    }
    std::vector<int> pick(rem.size(), 0);
    // iterate over all block compositions pick <= rem
    while (true) {
      std::size_t k = 0;
      while (k < pick.size() && pick[k] == rem[k]) {
        pick[k] = 0;
        ++k;
      }
      if (k == pick.size()) break;
      ++pick[k];
      Weight wl = 0;
      int size = 0;
      for (std::size_t j = 0; j < pick.size(); ++j) {
        wl += class_weight[j] * pick[j];
        size += pick[j];
      }
      if (wl > spec.width) continue;
      mpz_class ways = spec.kind == ComplexKind::ordered ? factorial[static_cast<std::size_t>(size)] : mpz_class(1);
      std::vector<int> next = rem;
      for (std::size_t j = 0; j < pick.size(); ++j) {
        ways *= binom(rem[j], pick[j]);
        next[j] -= pick[j];
      }
      const auto& sub = run(next);
      std::size_t shift = static_cast<std::size_t>(size - 1);
      if (res.size() < sub.size() + shift) res.resize(sub.size() + shift);
      for (std::size_t d = 0; d < sub.size(); ++d) res[d + shift] += ways * sub[d];
    }
    return memo.emplace(rem, res).first->second;
  }
};

std::uint64_t saturate(const mpz_class& v) {
  if (v > mpz_class("18446744073709551615")) return ~0ULL;
  return static_cast<std::uint64_t>(std::stoull(v.get_str()));
}

}  // namespace

std::vector<std::uint64_t> count_cells(const ComplexSpec& spec) {
  std::map<Weight, int> classes;
  for (const auto& x : spec.set.items()) ++classes[x.weight];
  Counter c{spec, {}, {}, {}};
  std::vector<int> rem;
  for (const auto& [w, k] : classes) {
    c.class_weight.push_back(w);
    rem.push_back(k);
  }
  c.factorial.resize(spec.set.size() + 1);
  c.factorial[0] = 1;
  for (std::size_t i = 1; i < c.factorial.size(); ++i) c.factorial[i] = c.factorial[i - 1] * static_cast<unsigned long>(i);
  const auto& res = c.run(rem);
  std::vector<std::uint64_t> out;
  for (const auto& v : res) out.push_back(saturate(v));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::uint64_t total_cells(const ComplexSpec& spec) {
  std::uint64_t t = 0;
  for (auto v : count_cells(spec)) {
    if (t > ~0ULL - v) return ~0ULL;
    t += v;
  }
  return t;
}

// ----------------------------------------------------------------- text forms

std::string format_cell(const Cell& c) {
  std::string out;
  std::size_t at = 0;
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    if (b > 0) out += "|";
    for (std::size_t i = 0; i < c.blocks[b]; ++i) {
      if (i > 0) out += " ";
      out += std::to_string(c.labels[at + i]);
    }
    at += c.blocks[b];
  }
  return out;
}

Cell parse_cell(std::string_view text) {
  std::vector<std::vector<Label>> blocks;
  std::string s(text);
  std::size_t start = 0;
  while (true) {
    auto bar = s.find('|', start);
    auto part = s.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    std::vector<Label> block;
    for (const auto& t : tokens(part, ",")) block.push_back(parse_int(t, "label"));
    if (block.empty()) throw InvalidInput("empty block in cell: " + s);
    blocks.push_back(std::move(block));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return Cell::from_blocks(blocks);
}

std::string format_weighted_set(const WeightedSet& s) {
  std::string out;
  for (const auto& x : s.items()) {
    if (!out.empty()) out += " ";
    out += std::to_string(x.label) + ":" + std::to_string(x.weight);
  }
  return out;
}

WeightedSet parse_weighted_set(std::string_view text) {
  std::vector<WeightedLabel> items;
  for (const auto& t : tokens(text, ",{}")) {
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      items.push_back({parse_int(t, "label"), 1});
    } else {
      items.push_back({parse_int(t.substr(0, colon), "label"), parse_int(t.substr(colon + 1), "weight")});
    }
  }
  return WeightedSet(std::move(items));
}

// --------------------------------------------------------------------- facets

void for_each_facet(const ComplexSpec& spec, const Cell& c, const std::function<void(Cell&&, int)>& emit) {
  std::vector<Weight> w(c.labels.size());
  for (std::size_t i = 0; i < c.labels.size(); ++i) w[i] = spec.set.weight(c.labels[i]);
  Weight prefix = 0;  // wdim of the blocks to the left
  std::size_t at = 0;
  std::vector<std::size_t> pos;
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    const std::size_t len = c.blocks[b];
    Weight wl_block = 0;
    for (std::size_t i = at; i < at + len; ++i) wl_block += w[i];
    for (std::size_t s = 1; s < len; ++s) {
      pos.resize(s);
      std::iota(pos.begin(), pos.end(), std::size_t{0});
      while (true) {
        // positions in `pos` (relative to block) form the first half
        Weight wl_first = 0;
        Weight parity = 0;
        Weight second_seen = 0;
        std::size_t k = 0;
        for (std::size_t i = 0; i < len; ++i) {
          if (k < s && pos[k] == i) {
            wl_first += w[at + i];
            parity += w[at + i] * second_seen;
            ++k;
          } else {
            second_seen += w[at + i];
          }
        }
        int sign = ((prefix + wl_first + parity) & 1) ? -1 : 1;
        Cell f;
        f.blocks.reserve(c.blocks.size() + 1);
        f.blocks.insert(f.blocks.end(), c.blocks.begin(), c.blocks.begin() + static_cast<std::ptrdiff_t>(b));
        f.blocks.push_back(static_cast<std::uint32_t>(s));
        f.blocks.push_back(static_cast<std::uint32_t>(len - s));
        f.blocks.insert(f.blocks.end(), c.blocks.begin() + static_cast<std::ptrdiff_t>(b + 1), c.blocks.end());
        f.labels.reserve(c.labels.size());
        f.labels.insert(f.labels.end(), c.labels.begin(), c.labels.begin() + static_cast<std::ptrdiff_t>(at));
        k = 0;
        for (std::size_t i = 0; i < len; ++i)
          if (k < s && pos[k] == i) {
            f.labels.push_back(c.labels[at + i]);
            ++k;
          }
        k = 0;
        for (std::size_t i = 0; i < len; ++i) {
          if (k < s && pos[k] == i)
            ++k;
          else
            f.labels.push_back(c.labels[at + i]);
        }
        f.labels.insert(f.labels.end(), c.labels.begin() + static_cast<std::ptrdiff_t>(at + len), c.labels.end());
        emit(std::move(f), sign);
        // next combination
        std::size_t j = s;
        while (j > 0 && pos[j - 1] == len - s + j - 1) --j;
        if (j == 0) break;
        ++pos[j - 1];
        for (std::size_t t = j; t < s; ++t) pos[t] = pos[t - 1] + 1;
      }
    }
    prefix += wl_block - 1;
    at += len;
  }
}

}  // namespace stripconf
