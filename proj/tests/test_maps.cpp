#include "doctest.h"
#include "oracles.hpp"

#include "stripconf/cycles.hpp"
#include "stripconf/errors.hpp"
#include "stripconf/maps.hpp"

using namespace stripconf;

namespace {

/// A random spin step on a random chain over a weighted ordered complex
/// containing a label of weight ≥ 2.
struct SpinCase {
  ChainVector x;
  SpinStep step;
};

SpinCase random_spin_case(oracle::Gen& g) {
  while (true) {
    auto set = g.weighted_set(1 + g.below(3), 3);
    Label heavy = 0;
    for (const auto& it : set.items())
      if (it.weight >= 2) heavy = it.label;
    if (heavy == 0 || set.total_weight() > 7) continue;
    Weight maxw = 1;
    for (const auto& it : set.items()) maxw = std::max(maxw, it.weight);
    auto spec = ComplexSpec::cells(set, g.between(maxw, 5));
    const Weight wa = set.weight(heavy);
    const Weight wb = g.between(1, wa - 1);
    const Label fresh = set.max_label() + 1;
    SpinStep step{heavy, {fresh, wb}, {fresh + 1, wa - wb}};
    return {g.chain(spec, g.below(spec.top_degree() + 1), 4), step};
  }
}

ChainVector random_perm_chain(oracle::Gen& g, ComplexSpec& spec_out) {
  auto set = g.weighted_set(1 + g.below(4), 2);
  Weight maxw = 1;
  for (const auto& it : set.items()) maxw = std::max(maxw, it.weight);
  spec_out = ComplexSpec::permutohedron(set, g.between(maxw, 6));
  return g.chain(spec_out, g.below(spec_out.top_degree() + 1), 4);
}

}  // namespace

TEST_SUITE("maps") {

TEST_CASE("spin of a|d") {
  auto spec = ComplexSpec::cells(WeightedSet({{1, 2}, {2, 1}}), 2);
  auto y = spin(SpinStep{1, {3, 1}, {4, 1}}, ChainVector::of(spec, parse_cell("1|2")));
  CHECK(y.degree() == 1);
  CHECK(y.coefficient(parse_cell("3 4|2")) == 1);
  CHECK(y.coefficient(parse_cell("4 3|2")) == 1);
  CHECK(y.size() == 2);
  CHECK(spin(SpinStep{1, {3, 1}, {4, 1}}, ChainVector(spec, 0)).is_zero());
}

TEST_CASE("spin of a weight-2 singleton is the wheel on two disks") {
  auto spec = ComplexSpec::cells(WeightedSet({{5, 2}}), 2);
  auto y = spin(SpinStep{5, {2, 1}, {1, 1}}, ChainVector::of(spec, parse_cell("5")));
  CHECK(y.coefficient(parse_cell("2 1")) == 1);
  CHECK(y.coefficient(parse_cell("1 2")) == 1);
  CHECK(boundary(y).is_zero());
}

TEST_CASE("spin rejects missing labels and weight mismatches") {
  auto spec = ComplexSpec::cells(WeightedSet({{1, 2}}), 2);
  auto x = ChainVector::of(spec, parse_cell("1"));
  CHECK_THROWS_AS(spin(SpinStep{7, {3, 1}, {4, 1}}, x), InvalidInput);
  CHECK_THROWS_AS(spin(SpinStep{1, {3, 1}, {4, 2}}, x), InvalidInput);
}

TEST_CASE("spin commutes with the boundary") {
  oracle::Gen g(31);
  for (int t = 0; t < 500; ++t) {
    auto [x, step] = random_spin_case(g);
    CHECK(boundary(spin(step, x)) == spin(step, boundary(x)));
  }
}

TEST_CASE("spins on disjoint labels commute") {
  oracle::Gen g(32);
  for (int t = 0; t < 200; ++t) {
    auto spec = ComplexSpec::cells(WeightedSet({{1, 2}, {2, 2}, {3, 1}}), g.between(2, 5));
    auto x = g.chain(spec, g.below(spec.top_degree() + 1), 3);
    SpinStep a{1, {4, 1}, {5, 1}}, b{2, {6, 1}, {7, 1}};
    CHECK(spin(b, spin(a, x)) == spin(a, spin(b, x)));
  }
}

TEST_CASE("spin_sigma does not depend on the expansion order") {
  auto sigma = std::vector<Label>{2, 1, 4, 3};
  auto source = ComplexSpec::cells(wheel_weights(sigma), 4);
  auto program = spin_sigma(sigma);
  SpinStep s21{2, {2, 1}, {1, 1}}, s43{4, {4, 1}, {3, 1}};
  for (const auto& c : enumerate_cells(source, 0)) {
    auto x = ChainVector::of(source, c);
    auto y = spin(program, x);
    CHECK(y == spin(s43, spin(s21, x)));
    CHECK(y == spin(s21, spin(s43, x)));
  }
  auto trivial = std::vector<Label>{1, 2, 3};
  CHECK(spin_sigma(trivial).empty());
}

TEST_CASE("spin_tau_sigma unwinds right to left") {
  auto program = spin_tau_sigma({4, 3, 2, 1}, {2, 1, 3, 4});
  auto source = ComplexSpec::cells(WeightedSet({{4, 4}}), 4);
  auto x = ChainVector::of(source, parse_cell("4"));
  // 4321 -> (43, 21), then 43 -> (4, 3); composite wheels carry their axle label
  auto expected = spin(SpinStep{4, {4, 1}, {3, 1}}, spin(SpinStep{4, {4, 2}, {2, 2}}, x));
  CHECK(spin(program, x) == expected);
}

TEST_CASE("inclusions and projection") {
  auto set = WeightedSet::range(3);
  auto p = ComplexSpec::permutohedron(set, 2);
  auto z = top_boundary(set).retarget(p);
  auto outer = include_identity(z);
  CHECK(outer.size() == 6);
  CHECK(boundary(outer).is_zero());
  auto vertex = ChainVector::of(p, parse_cell("2|1|3"));
  CHECK(include_identity(vertex).coefficient(parse_cell("2|1|3")) == 1);
  // swapping 2 and 3 changes exactly the cells where they share a block
  auto swapped = include_permutohedron_top_normalised({1, 3, 2}, z);
  for (const auto& [c, q] : z.terms()) {
    bool together = false;
    for (const auto& b : c.split())
      together = together || (std::count(b.begin(), b.end(), 2) && std::count(b.begin(), b.end(), 3));
    auto plain = include_identity(ChainVector::of(p, c, q));
    auto moved = include_permutohedron({1, 3, 2}, ChainVector::of(p, c, q));
    CHECK((plain == moved) == !together);
  }
  CHECK(boundary(swapped).is_zero());
}

TEST_CASE("q averages the two loops of the hexagon") {
  auto set = WeightedSet::range(3);
  auto p = ComplexSpec::permutohedron(set, 2);
  auto z = top_boundary(set).retarget(p);
  auto qz = average_inclusion(z);
  CHECK(qz.size() == 12);
  for (const auto& [c, q] : qz.terms()) CHECK(abs(q) == Rational(1, 2));
  CHECK(boundary(qz).is_zero());
  CHECK(project(qz) == z);
}

TEST_CASE("inclusions, q and p are chain maps") {
  oracle::Gen g(41);
  for (int t = 0; t < 500; ++t) {
    ComplexSpec spec;
    auto x = random_perm_chain(g, spec);
    CHECK(boundary(include_identity(x)) == include_identity(boundary(x)));
    auto order = g.shuffled(spec.set.labels());
    CHECK(boundary(include_permutohedron(order, x)) == include_permutohedron(order, boundary(x)));
    auto qx = average_inclusion(x);
    CHECK(boundary(qx) == average_inclusion(boundary(x)));
    CHECK(project(include_identity(x)) == x);
    CHECK(project(qx) == x);
    auto y = g.chain(ComplexSpec::cells(spec.set, spec.width), x.degree(), 4);
    CHECK(boundary(project(y)) == project(boundary(y)));
  }
}

TEST_CASE("blockwise q equals the literal average") {
  oracle::Gen g(42);
  for (int t = 0; t < 200; ++t) {
    ComplexSpec spec;
    auto x = random_perm_chain(g, spec);
    CHECK(average_inclusion(x) == average_inclusion_literal(x));
  }
}

TEST_CASE("p kills spin images") {
  oracle::Gen g(43);
  for (int t = 0; t < 500; ++t) {
    auto [x, step] = random_spin_case(g);
    CHECK(project(spin(step, x)).is_zero());
  }
}

TEST_CASE("p(q(Z)) = Z for top-cell boundaries") {
  oracle::Gen g(44);
  for (int t = 0; t < 500; ++t) {
    auto set = g.weighted_set(2 + g.below(3), 3);
    Weight minw = 100;
    for (const auto& it : set.items()) minw = std::min(minw, it.weight);
    auto spec = ComplexSpec::permutohedron(set, std::max<Weight>(2, set.total_weight() - minw));
    auto z = top_boundary(set).retarget(spec);
    CHECK(project(average_inclusion(z)) == z);
  }
}

}  // TEST_SUITE
