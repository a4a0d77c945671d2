#include "doctest.h"
#include "oracles.hpp"

#include "stripconf/cycles.hpp"
#include "stripconf/errors.hpp"
#include "stripconf/homology.hpp"

using namespace stripconf;

TEST_SUITE("homology") {

TEST_CASE("small examples") {
  CHECK(betti(ComplexSpec::cells(3, 2)).betti == std::vector<std::size_t>{1, 7});
  CHECK(betti(ComplexSpec::cells(2, 2)).betti == std::vector<std::size_t>{1, 1});
  CHECK(betti(ComplexSpec::cells(1, 1)).betti == std::vector<std::size_t>{1});
  CHECK(betti(ComplexSpec::cells(0, 1)).betti == std::vector<std::size_t>{1});
}

TEST_CASE("sparse ranks agree with dense Bareiss") {
  for (Label n = 1; n <= 5; ++n)
    for (Weight w = 1; w <= n; ++w) {
      auto spec = ComplexSpec::cells(n, w);
      CHECK(betti(spec).betti == oracle::dense_betti(spec));
      auto p = ComplexSpec::permutohedron(WeightedSet::range(n), w);
      CHECK(betti(p).betti == oracle::dense_betti(p));
    }
}

TEST_CASE("random weighted complexes agree with dense Bareiss") {
  oracle::Gen g(61);
  for (int t = 0; t < 40; ++t) {
    auto set = g.weighted_set(1 + g.below(4), 3);
    Weight maxw = 1;
    for (const auto& it : set.items()) maxw = std::max(maxw, it.weight);
    auto spec = ComplexSpec::cells(set, g.between(maxw, maxw + 3));
    CHECK(betti(spec).betti == oracle::dense_betti(spec));
  }
}

TEST_CASE("unrestricted width gives the plane") {
  for (unsigned n = 1; n <= 6; ++n) {
    auto b = betti(ComplexSpec::cells(n, n)).betti;
    auto plane = oracle::plane_betti(n);
    REQUIRE(b.size() == plane.size());
    for (std::size_t k = 0; k < b.size(); ++k) CHECK(b[k] == plane[k]);
  }
}

TEST_CASE("Euler characteristic from cells and from Betti numbers") {
  for (Label n = 1; n <= 6; ++n)
    for (Weight w = 1; w <= n; ++w) CHECK(betti(ComplexSpec::cells(n, w)).euler_consistent());
}

TEST_CASE("boundary witnesses and certificates") {
  auto spec = ComplexSpec::cells(3, 2);
  auto top = ChainVector::of(spec, parse_cell("3 1|2"));
  auto b = boundary(top);
  auto q = is_boundary(b);
  CHECK(q.is_boundary);
  REQUIRE(q.witness);
  CHECK(boundary(*q.witness) == b);

  auto z = wheel_cycle(Wheel{{2, 1}}, 2);
  auto zq = is_boundary(z);
  CHECK_FALSE(zq.is_boundary);
  REQUIRE(zq.certificate);
  CHECK(evaluate(*zq.certificate, z) != 0);
  for (const auto& c : enumerate_cells(z.complex(), 1)) CHECK(evaluate(*zq.certificate, boundary_of_cell(z.complex(), c)) == 0);
}

TEST_CASE("random boundaries are recognised") {
  oracle::Gen g(62);
  HomologyEngine engine;
  for (int t = 0; t < 100; ++t) {
    auto spec = ComplexSpec::cells(4, g.between(2, 3));
    auto x = g.chain(spec, 1 + g.below(spec.top_degree()), 4);
    auto q = engine.is_boundary(boundary(x));
    CHECK(q.is_boundary);
    REQUIRE(q.witness);
    CHECK(boundary(*q.witness) == boundary(x));
  }
}

TEST_CASE("express recovers coefficients modulo boundaries") {
  std::vector<ChainVector> basis = {word_cycle(parse_word("W(2,1)|W(3)"), 3), word_cycle(parse_word("W(3,1)|W(2)"), 3)};
  auto z = Rational(3) * basis[0] - Rational(1, 2) * basis[1];
  auto spec = z.complex();
  z += boundary(ChainVector::of(spec, parse_cell("2 1 3")) - Rational(5) * ChainVector::of(spec, parse_cell("3 1 2")));
  auto c = express(z, basis);
  CHECK(c == std::vector<Rational>{3, Rational(-1, 2)});
  CHECK_THROWS_AS(express(word_cycle(parse_word("W(3,2)|W(1)"), 3), {basis[0]}), InvalidInput);
}

TEST_CASE("ordered complex splits over wheel decompositions") {
  for (Label n = 1; n <= 4; ++n)
    for (Weight w = 1; w <= n; ++w) {
      auto r = decomposition_check(ComplexSpec::cells(n, w));
      CHECK(r.holds());
      CHECK(r.permutations > 0);
    }
}

TEST_CASE("guard refuses oversized complexes") {
  HomologyOptions opts;
  opts.guard.max_cells = 100;
  HomologyEngine engine(opts);
  CHECK_THROWS_AS(engine.betti(ComplexSpec::cells(6, 3)), ResourceRefusal);
}

}  // TEST_SUITE
