#include "stripconf/cli.hpp"

#include "stripconf/errors.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace stripconf::cli {

namespace {

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string("missing required option ") + flag);
  return *v;
}

Json envelope(const RunConfig& c, Json result) {
  Json j{{"schema", 1}, {"command", c.command}, {"result", std::move(result)}};
  if (c.timestamp) j["generated_at"] = utc_now();
  return j;
}

HomologyEngine make_engine(const RunConfig& c) {
  HomologyOptions o;
  o.guard.max_cells = c.max_cells;
  if (c.use_cache) o.cache_root = c.cache_dir ? *c.cache_dir : MatrixCache::default_root();
  return HomologyEngine(o);
}

BasisKind parse_style(const std::string& s) {
  if (s == "AM") return BasisKind::AM;
  if (s == "AMW") return BasisKind::AMW;
  throw InvalidInput("style must be AM or AMW, got '" + s + "'");
}

std::size_t checked_n(const RunConfig& c) {
  auto n = need(c.n, "--n");
  if (n > 64) throw InvalidInput("--n above 64 is out of range");
  return n;
}

Weight checked_w(const RunConfig& c) {
  auto w = need(c.w, "--w");
  if (w < 1) throw InvalidInput("--w must be positive");
  return w;
}

CommandResult emit(const RunConfig& c, Json result, const std::string& table, int code = ok) {
  CommandResult r;
  r.exit_code = code;
  r.output = c.format == Format::json ? envelope(c, std::move(result)).dump(2) + "\n" : table;
  return r;
}

struct Check {
  Check(std::string n, std::string f, bool p = true) : name(std::move(n)), family(std::move(f)), pass(p) {}
  std::string name, family;
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;
};

}  // namespace

CommandResult cmd_betti(const RunConfig& c) {
  auto n = checked_n(c);
  auto w = checked_w(c);
  auto engine = make_engine(c);
  auto p = engine.betti(ComplexSpec::cells(static_cast<Label>(n), w));
  std::ostringstream os;
  os << "cell(" << n << "," << w << ")\n";
  os << std::left << std::setw(8) << "degree" << std::setw(14) << "cells" << "betti\n";
  for (std::size_t d = 0; d < p.betti.size(); ++d)
    os << std::left << std::setw(8) << d << std::setw(14) << p.cells[d] << p.betti[d] << "\n";
  os << "euler " << p.euler_cells << " (cells) " << p.euler_betti << " (betti)"
     << (p.euler_consistent() ? "" : " INCONSISTENT") << "\n";
  return emit(c, to_json(p), os.str(), p.euler_consistent() ? ok : verification_failed);
}

CommandResult cmd_verify(const RunConfig& c) {
  std::vector<Check> checks;
  auto engine = make_engine(c);
  const std::string& scope = c.scope;
  if (scope == "boundary") {
    auto n = checked_n(c);
    auto w = checked_w(c);
    auto spec = ComplexSpec::cells(static_cast<Label>(n), w);
    engine.options().guard.check(spec);
    for (std::size_t d = 0; d <= spec.top_degree(); ++d) {
      Check ch{"boundary squared d=" + std::to_string(d), "boundary"};
      for (const auto& cell : verify_boundary_squared(spec, d)) ch.failures.push_back(format_cell(cell));
      ch.pass = ch.failures.empty();
      checks.push_back(ch);
    }
  } else if (scope == "basis") {
    auto n = checked_n(c);
    auto w = checked_w(c);
    engine.options().guard.check(ComplexSpec::cells(static_cast<Label>(n), w));
    for (auto kind : {BasisKind::AM, BasisKind::AMW})
      for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
        auto r = verify_basis(n, w, k, kind, engine);
        Check ch{"basis k=" + std::to_string(k), kind == BasisKind::AM ? "AM" : "AMW", r.passes()};
        ch.detail = "count=" + std::to_string(r.count) + " betti=" + std::to_string(r.betti) + " rank=" + std::to_string(r.rank);
        checks.push_back(ch);
      }
  } else if (scope == "relations") {
    auto w = checked_w(c);
    if (c.max_labels > 6) throw InvalidInput("--max-labels above 6 is out of range");
    for (auto fam : {RelationFamily::R1, RelationFamily::R2, RelationFamily::R3, RelationFamily::R4, RelationFamily::R5}) {
      auto instances = relation_instances(fam, c.max_labels, w);
      Check ch{"relation instances", to_string(fam)};
      Check closed{"closed-form signs (m+1 <= 4)", to_string(fam)};
      std::size_t closed_total = 0;
      for (const auto& r : instances) {
        auto res = check_relation(r, engine);
        if (!res.boundary) ch.failures.push_back(r.data + ": not a boundary");
        if (!res.barriers_kept) ch.failures.push_back(r.data + ": barrier count changes");
        if (res.closed_forms) {
          ++closed_total;
          if (!*res.closed_forms) closed.failures.push_back(r.data);
        }
      }
      ch.pass = ch.failures.empty();
      ch.detail = std::to_string(instances.size()) + " instances";
      checks.push_back(ch);
      if (fam == RelationFamily::R5) {
        closed.pass = closed.failures.empty();
        closed.detail = std::to_string(closed_total - closed.failures.size()) + "/" + std::to_string(closed_total) + " agree";
        checks.push_back(closed);
      }
    }
  } else if (scope == "decomposition") {
    auto n = checked_n(c);
    auto w = checked_w(c);
    auto r = decomposition_check(ComplexSpec::cells(static_cast<Label>(n), w), engine);
    Check ch{"permutohedral decomposition", "decomposition", r.holds()};
    std::ostringstream os;
    os << "permutations=" << r.permutations << " direct=";
    for (auto b : r.direct) os << b << ' ';
    os << "summed=";
    for (auto b : r.summed) os << b << ' ';
    ch.detail = os.str();
    checks.push_back(ch);
  } else if (scope == "generation") {
    auto k = need(c.k, "--k");
    auto w = checked_w(c);
    auto r = generation_check(k, w);
    Check ch{"bare singleton above the bound", "generation", r.passes()};
    ch.detail = "n=" + std::to_string(r.n) + " elements=" + std::to_string(r.elements);
    for (const auto& x : r.counterexamples) ch.failures.push_back(format_word(x));
    checks.push_back(ch);
  } else {
    throw InvalidInput("--scope must be one of boundary, basis, relations, decomposition, generation");
  }

  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& ch) { return ch.pass; });
  Json list = Json::array();
  std::ostringstream os;
  for (const auto& ch : checks) {
    list.push_back(Json{{"name", ch.name}, {"family", ch.family}, {"pass", ch.pass}, {"detail", ch.detail}, {"failures", ch.failures}});
    os << (ch.pass ? "PASS " : "FAIL ") << ch.family << ": " << ch.name;
    if (!ch.detail.empty()) os << " (" << ch.detail << ")";
    os << "\n";
    for (const auto& f : ch.failures) os << "  " << f << "\n";
  }
  Json result{{"scope", scope}};
  if (c.n) result["n"] = *c.n;
  if (c.w) result["w"] = *c.w;
  result["checks"] = list;
  result["pass"] = all;
  return emit(c, result, os.str(), all ? ok : verification_failed);
}

CommandResult cmd_reduce(const RunConfig& c) {
  auto w = checked_w(c);
  if (c.expression.empty()) throw InvalidInput("missing required option --expr");
  WordCombination x = parse_combination(c.expression);
  if (c.act) x = act(Permutation::parse_cycles(*c.act), x);
  WordCombination y = c.quotient ? quotient_reduce(x, *c.quotient, w) : reduce(x, w);
  Json result{{"input", c.expression}, {"w", w}};
  if (c.act) result["act"] = *c.act;
  if (c.quotient) result["quotient"] = *c.quotient;
  result["output"] = to_json(y);
  return emit(c, result, format_combination(y) + "\n");
}

CommandResult cmd_stability(const RunConfig& c) {
  auto w = checked_w(c);
  StabilityParams p;
  if (c.d) {
    p = higher_stability_params(*c.d, need(c.i, "--i"), w);
  } else {
    p = stability_params(need(c.k, "--k"), w);
  }
  auto j = to_json(p);
  std::ostringstream os;
  os << "order " << p.order << "\n"
     << (p.order == 1 ? "k " : "i ") << p.index << "\n"
     << "w " << p.width << "\n"
     << "b " << p.b << "\n"
     << "module " << j["module"].get<std::string>() << "\n"
     << "generation degree " << p.generation_degree << "\n";
  return emit(c, j, os.str());
}

CommandResult cmd_basis(const RunConfig& c) {
  auto n = checked_n(c);
  auto w = checked_w(c);
  auto k = need(c.k, "--k");
  auto words = enumerate_basis(n, w, k, parse_style(c.style));
  Json list = Json::array();
  std::ostringstream os;
  for (const auto& x : words) {
    list.push_back(to_json(x, 1, w));
    os << format_word(x) << "\n";
  }
  Json result{{"n", n}, {"w", w}, {"k", k}, {"style", c.style}, {"count", words.size()}, {"elements", list}};
  return emit(c, result, os.str());
}

CommandResult run(const RunConfig& config) {
  try {
    if (config.command == "betti") return cmd_betti(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "reduce") return cmd_reduce(config);
    if (config.command == "stability") return cmd_stability(config);
    if (config.command == "basis") return cmd_basis(config);
    throw InvalidInput("unknown command '" + config.command + "'");
  } catch (const ResourceRefusal& e) {
    return {resource_refused, "",
            std::string("refused: ") + e.what() + " (estimate " + std::to_string(e.estimate()) + ", cap " +
                std::to_string(e.cap()) + ")\n"};
  } catch (const InvalidInput& e) {
    return {usage_error, "", std::string("error: ") + e.what() + "\n"};
  } catch (const InvariantViolation& e) {
    return {verification_failed, "", std::string("internal check failed: ") + e.what() + "\n"};
  }
}

}  // namespace stripconf::cli
