#include "stripconf/chains.hpp"

#include "stripconf/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace stripconf {

// ---------------------------------------------------------------- ChainVector

ChainVector ChainVector::of(ComplexSpec complex, const Cell& c, Rational coeff) {
  ChainVector x(std::move(complex), c.dim());
  x.add(c, coeff);
  return x;
}

Weight ChainVector::wdegree() const {
  Weight extra = 0;
  for (const auto& it : complex_.set.items()) extra += it.weight - 1;
  return static_cast<Weight>(degree_) + extra;
}

Rational ChainVector::coefficient(const Cell& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ChainVector::add(const Cell& c, const Rational& coeff) {
  complex_.require(c);
  if (c.dim() != degree_)
    throw InvalidInput("cell " + format_cell(c) + " has degree " + std::to_string(c.dim()) + ", chain has degree " +
                       std::to_string(degree_));
  add_unchecked(c, coeff);
}

void ChainVector::add_unchecked(const Cell& c, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(c, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void ChainVector::require_compatible(const ChainVector& other) const {
  if (!(complex_ == other.complex_)) throw InvalidInput("chains live on different complexes");
  if (degree_ != other.degree_ && !terms_.empty() && !other.terms_.empty())
    throw InvalidInput("chains have different degrees");
}

ChainVector& ChainVector::operator+=(const ChainVector& other) {
  require_compatible(other);
  if (terms_.empty()) degree_ = other.degree_;
  for (const auto& [c, q] : other.terms_) add_unchecked(c, q);
  return *this;
}

ChainVector& ChainVector::operator-=(const ChainVector& other) {
  require_compatible(other);
  if (terms_.empty()) degree_ = other.degree_;
  for (const auto& [c, q] : other.terms_) add_unchecked(c, -q);
  return *this;
}

ChainVector& ChainVector::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [c, q] : terms_) q *= s;
  return *this;
}

ChainVector ChainVector::retarget(const ComplexSpec& complex) const {
  ChainVector y(complex, degree_);
  for (const auto& [c, q] : terms_) y.add(c, q);
  return y;
}

std::string ChainVector::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, q] : terms_) {
    Rational a = abs(q);
    if (first)
      out += q < 0 ? "-" : "";
    else
      out += q < 0 ? " - " : " + ";
    first = false;
    if (a != 1) out += stripconf::to_string(a) + "*";
    out += "(" + format_cell(c) + ")";
  }
  return out;
}

// ------------------------------------------------------------------ operators

ChainVector boundary_of_cell(const ComplexSpec& spec, const Cell& c) {
  spec.require(c);
  if (c.dim() == 0) return ChainVector(spec, 0);
  ChainVector out(spec, c.dim() - 1);
  for_each_facet(spec, c, [&](Cell&& f, int sign) { out.add_unchecked(f, sign); });
  return out;
}

ChainVector boundary(const ChainVector& x) {
  const auto& spec = x.complex();
  ChainVector out(spec, x.degree() == 0 ? 0 : x.degree() - 1);
  if (x.degree() == 0) return out;
  for (const auto& [c, q] : x.terms())
    for_each_facet(spec, c, [&](Cell&& f, int sign) { out.add_unchecked(f, sign > 0 ? q : Rational(-q)); });
  return out;
}

ChainVector concat(const ChainVector& x, const ChainVector& y) {
  const auto& a = x.complex();
  const auto& b = y.complex();
  if (a.width != b.width) throw InvalidInput("concat: widths differ");
  if (a.kind != b.kind) throw InvalidInput("concat: complex kinds differ");
  for (const auto& it : b.set.items())
    if (a.set.contains(it.label)) throw InvalidInput("concat: label " + std::to_string(it.label) + " on both sides");
  ComplexSpec spec{a.set.united(b.set), a.width, a.kind};
  ChainVector out(spec, x.degree() + y.degree());
  for (const auto& [c1, q1] : x.terms())
    for (const auto& [c2, q2] : y.terms()) {
      Cell c = c1;
      c.blocks.insert(c.blocks.end(), c2.blocks.begin(), c2.blocks.end());
      c.labels.insert(c.labels.end(), c2.labels.begin(), c2.labels.end());
      out.add_unchecked(c, q1 * q2);
    }
  return out;
}

ChainVector relabel(const ChainVector& x, const Permutation& sigma) {
  const auto& spec = x.complex();
  if (spec.kind != ComplexKind::ordered) throw InvalidInput("relabel applies to ordered cell complexes");
  std::vector<WeightedLabel> items;
  for (const auto& it : spec.set.items()) items.push_back({sigma(it.label), it.weight});
  ComplexSpec target{WeightedSet(std::move(items)), spec.width, spec.kind};
  ChainVector out(target, x.degree());
  for (const auto& [c, q] : x.terms()) {
    Cell d = c;
    for (auto& a : d.labels) a = sigma(a);
    out.add_unchecked(d, q);
  }
  return out;
}

// --------------------------------------------------------------------- matrix

std::size_t BoundaryMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns) n += col.size();
  return n;
}

void Guard::check(const ComplexSpec& spec) const {
  auto total = total_cells(spec);
  if (total > max_cells)
    throw ResourceRefusal("complex " + spec.canonical() + " has " + std::to_string(total) +
                              " cells, above the cap of " + std::to_string(max_cells),
                          total, max_cells);
}

BoundaryMatrix build_boundary_matrix(const ComplexSpec& spec, std::size_t degree, const Guard& guard) {
  guard.check(spec);
  BoundaryMatrix m;
  m.complex = spec;
  m.degree = degree;
  m.cols = enumerate_cells(spec, degree);
  if (degree == 0) {
    m.columns.assign(m.cols.size(), {});
    return m;
  }
  m.rows = enumerate_cells(spec, degree - 1);
  std::unordered_map<Cell, std::uint32_t, CellHash> index;
  index.reserve(m.rows.size() * 2);
  for (std::uint32_t i = 0; i < m.rows.size(); ++i) index.emplace(m.rows[i], i);
  m.columns.resize(m.cols.size());
  for (std::size_t j = 0; j < m.cols.size(); ++j) {
    auto& col = m.columns[j];
    for_each_facet(spec, m.cols[j], [&](Cell&& f, int sign) {
      auto it = index.find(f);
      if (it == index.end()) throw InvariantViolation("facet " + format_cell(f) + " missing from enumeration");
      col.emplace_back(it->second, sign);
    });
    std::sort(col.begin(), col.end());
    // merge repeats (cannot occur for these complexes, kept for safety)
    std::vector<std::pair<std::uint32_t, int>> merged;
    for (const auto& e : col) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }),
                 merged.end());
    col = std::move(merged);
  }
  return m;
}

std::vector<Cell> verify_boundary_squared(const ComplexSpec& spec, std::size_t degree) {
  std::vector<Cell> bad;
  if (degree < 2) return bad;
  for (const auto& c : enumerate_cells(spec, degree)) {
    std::unordered_map<Cell, long long, CellHash> acc;
    for_each_facet(spec, c, [&](Cell&& f, int s1) {
      for_each_facet(spec, f, [&](Cell&& g, int s2) { acc[std::move(g)] += s1 * s2; });
    });
    for (const auto& [g, v] : acc)
      if (v != 0) {
        bad.push_back(c);
        break;
      }
  }
  return bad;
}

// ---------------------------------------------------------------------- cache

const std::string& convention_descriptor() {
  static const std::string d =
      "stripconf-conventions/1;order=block-sizes,then-labels;"
      "facet-sign=(-1)^wlength(first)*wsgn(block->first.second);"
      "product-sign=(-1)^wdim(left);degree=geometric";
  return d;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw StripError("sha256: context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

namespace {

std::string matrix_text(const BoundaryMatrix& m) {
  std::ostringstream os;
  os << "%stripconf-triplet 1\n" << m.rows.size() << " " << m.cols.size() << " " << m.nonzeros() << "\n";
  for (std::size_t j = 0; j < m.columns.size(); ++j)
    for (const auto& [i, v] : m.columns[j]) os << i << " " << j << " " << v << "\n";
  return os.str();
}

void write_atomic(const std::filesystem::path& target, const std::string& content) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  auto tmp = target;
  tmp += ".tmp." + std::to_string(rng());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StripError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw StripError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

MatrixCache::MatrixCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path MatrixCache::default_root() {
  if (const char* env = std::getenv("STRIPCONF_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path("cache");
}

std::filesystem::path MatrixCache::directory(const ComplexSpec& spec) const {
  return root_ / sha256_hex(spec.canonical() + "\n" + convention_descriptor()).substr(0, 20);
}

std::optional<BoundaryMatrix> MatrixCache::load(const ComplexSpec& spec, std::size_t degree) const {
  auto dir = directory(spec);
  auto mtx = dir / ("d" + std::to_string(degree) + ".mtx");
  auto side = dir / ("d" + std::to_string(degree) + ".json");
  std::string text = read_file(mtx);
  std::string meta_text = read_file(side);
  if (text.empty() || meta_text.empty()) return std::nullopt;
  try {
    auto meta = nlohmann::json::parse(meta_text);
    if (meta.at("convention").get<std::string>() != convention_descriptor()) return std::nullopt;
    if (meta.at("complex").get<std::string>() != spec.canonical()) return std::nullopt;
    if (meta.at("degree").get<std::size_t>() != degree) return std::nullopt;
    if (meta.at("digest").get<std::string>() != sha256_hex(text)) return std::nullopt;
    BoundaryMatrix m;
    m.complex = spec;
    m.degree = degree;
    for (const auto& s : meta.at("rows")) m.rows.push_back(parse_cell(s.get<std::string>()));
    for (const auto& s : meta.at("cols")) m.cols.push_back(parse_cell(s.get<std::string>()));
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    if (header != "%stripconf-triplet 1") return std::nullopt;
    std::size_t r = 0, c = 0, nnz = 0;
    in >> r >> c >> nnz;
    if (r != m.rows.size() || c != m.cols.size()) return std::nullopt;
    m.columns.assign(c, {});
    for (std::size_t k = 0; k < nnz; ++k) {
      std::size_t i = 0, j = 0;
      int v = 0;
      if (!(in >> i >> j >> v) || i >= r || j >= c) return std::nullopt;
      m.columns[j].emplace_back(static_cast<std::uint32_t>(i), v);
    }
    return m;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void MatrixCache::store(const BoundaryMatrix& m) const {
  auto dir = directory(m.complex);
  std::filesystem::create_directories(dir);
  std::string text = matrix_text(m);
  nlohmann::json meta;
  meta["convention"] = convention_descriptor();
  meta["complex"] = m.complex.canonical();
  meta["degree"] = m.degree;
  meta["digest"] = sha256_hex(text);
  auto& rows = meta["rows"] = nlohmann::json::array();
  for (const auto& c : m.rows) rows.push_back(format_cell(c));
  auto& cols = meta["cols"] = nlohmann::json::array();
  for (const auto& c : m.cols) cols.push_back(format_cell(c));
  // matrix first: a sidecar never points at a missing matrix
  write_atomic(dir / ("d" + std::to_string(m.degree) + ".mtx"), text);
  write_atomic(dir / ("d" + std::to_string(m.degree) + ".json"), meta.dump());
}

BoundaryMatrix MatrixCache::get(const ComplexSpec& spec, std::size_t degree, const Guard& guard) const {
  if (auto hit = load(spec, degree)) return std::move(*hit);
  auto m = build_boundary_matrix(spec, degree, guard);
  store(m);
  return m;
}

}  // namespace stripconf
