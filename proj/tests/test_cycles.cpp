#include "doctest.h"
#include "oracles.hpp"

#include "stripconf/cycles.hpp"
#include "stripconf/errors.hpp"

using namespace stripconf;

TEST_SUITE("cycles") {

TEST_CASE("W(2,1) and F(W(1),W(2))") {
  auto w21 = wheel_cycle(Wheel{{2, 1}}, 2);
  CHECK(w21.size() == 2);
  CHECK(w21.coefficient(parse_cell("1 2")) == 1);
  CHECK(w21.coefficient(parse_cell("2 1")) == 1);
  auto f = word_cycle(parse_word("F(W(1),W(2))"), 2);
  CHECK(f.size() == 2);
  CHECK(f.coefficient(parse_cell("1|2")) == 1);
  CHECK(f.coefficient(parse_cell("2|1")) == -1);
}

TEST_CASE("singleton wheel is a vertex") {
  auto c = wheel_cycle(Wheel{{3}}, 1);
  CHECK(c.degree() == 0);
  CHECK(c.coefficient(parse_cell("3")) == 1);
}

TEST_CASE("two-wheel filter sign rule") {
  // F(W1,W2) = W1|W2 + (-1)^{(n1-1)(n2-1)+1} W2|W1
  for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"W(2,1)", "W(4,3)"}, {"W(1)", "W(3,2)"}, {"W(3,1,2)", "W(4)"}}) {
    auto x = parse_word(a), y = parse_word(b);
    auto f = word_cycle(parse_word("F(" + a + "," + b + ")"), 4);
    auto xy = word_cycle(parse_word(a + "|" + b), 4);
    auto yx = word_cycle(parse_word(b + "|" + a), 4);
    auto nx = std::get<Wheel>(x.factors[0]).size(), ny = std::get<Wheel>(y.factors[0]).size();
    int s = ((nx - 1) * (ny - 1) + 1) % 2 ? -1 : 1;
    CHECK(f == xy + Rational(s) * yx);
  }
}

TEST_CASE("every generator word is a cycle") {
  oracle::Gen g(51);
  for (int t = 0; t < 300; ++t) {
    auto n = 1 + g.below(5);
    auto w = g.between(2, 4);
    auto word = g.generator_word(n, w);
    auto z = word_cycle(word, w);
    CHECK(z.degree() == word.degree());
    CHECK(boundary(z).is_zero());
  }
}

TEST_CASE("wheel trees of the same shape give the same cycle") {
  auto a = wheel_cycle(WheelTree::proper({3, 1, 2}), 3);
  CHECK(a == wheel_cycle(Wheel{{3, 1, 2}}, 3));
  CHECK(WheelTree::proper({3, 1, 2}).is_proper());
  CHECK(boundary(wheel_cycle(WheelTree::node(WheelTree::leaf(1), WheelTree::proper({3, 2})), 3)).is_zero());
}

TEST_CASE("word syntax round trips") {
  for (std::string s : {"W(3,1,2)|W(4)", "AF(W(1),W(2),W(3))", "F(W(2,1),W(3))|W(4)", "W(1)"}) {
    CHECK(format_word(parse_word(s)) == s);
  }
  auto c = parse_combination("W(1)|AF(W(2),W(3),W(4)) - 1/2*W(2,1)|W(3)|W(4)");
  CHECK(c.size() == 2);
  CHECK(parse_combination(format_combination(c)) == c);
  CHECK(parse_combination("0").empty());
  CHECK_THROWS_AS(parse_word("W(1,)"), InvalidInput);
  CHECK_THROWS_AS(parse_word("W(1)|W(1)"), InvalidInput);
  CHECK_THROWS_AS(parse_word("Q(1)"), InvalidInput);
}

TEST_CASE("filter admissibility") {
  CHECK(filter_admissible({1, 1}, 2));
  CHECK(filter_admissible({1, 1, 1}, 2));
  CHECK_FALSE(filter_admissible({1, 1}, 1));
  CHECK_FALSE(filter_admissible({2}, 4));
  CHECK_FALSE(filter_admissible({2, 2, 1}, 3));
  CHECK(filter_nontrivial({1, 1, 1}, 2));
  CHECK_FALSE(filter_nontrivial({1, 1}, 2));
  CHECK_THROWS_AS(word_cycle(parse_word("F(W(1),W(2))"), 1), InvalidInput);
  CHECK_THROWS_AS(word_cycle(parse_word("W(3,2,1)"), 2), InvalidInput);
}

TEST_CASE("trivial averaged filters bound") {
  // total weight ≤ w: the top cell itself is admissible
  auto z = word_cycle(parse_word("AF(W(1),W(2))"), 2);
  CHECK_FALSE(z.is_zero());
  auto spec = z.complex();
  CHECK(spec.admits(parse_cell("1 2")));
}

TEST_CASE("cycle cache returns the computed chain") {
  CycleCache cache;
  auto w = parse_word("F(W(2,1),W(3))");
  CHECK(cache.get(w, 3) == word_cycle(w, 3));
  CHECK(cache.get(w, 3) == word_cycle(w, 3));
  CHECK(cache.size() == 1);
}

TEST_CASE("plain and averaged filters on singletons project to the same cycle") {
  for (std::string s : {"W(1),W(2),W(3)", "W(1),W(2),W(3),W(4)"}) {
    auto af = word_cycle(parse_word("AF(" + s + ")"), 3);
    auto f = word_cycle(parse_word("F(" + s + ")"), 3);
    CHECK(boundary(af).is_zero());
    CHECK(af != f);
    CHECK(project(af) == project(f));
  }
}

}  // TEST_SUITE
