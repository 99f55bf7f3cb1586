#include <confmcg/freegroup.hpp>
#include <confmcg/suites.hpp>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace confmcg;

namespace {

Word W(const std::string& s, int n) { return parse_word(s, n); }

oracle::Letters letters_of(const Word& w) {
  oracle::Letters l;
  for (const Letter& x : w.letters()) l.push_back(x.sign * x.gen);
  return l;
}

Bivector bivector_of(const std::map<std::pair<int, int>, long>& m, int n) {
  Bivector b(n);
  for (const auto& [k, c] : m) b.add(k.first, k.second, c);
  return b;
}

}  // namespace

TEST(Reduce, InverseCancellation) {
  std::vector<Letter> l{{1, 1}, {1, -1}};
  EXPECT_TRUE(reduce(3, l).empty());
}

TEST(Reduce, InnerCancellation) {
  std::vector<Letter> l{{1, 1}, {2, 1}, {2, -1}, {1, 1}};
  Word w = reduce(2, l);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], (Letter{1, 1}));
  EXPECT_EQ(w[1], (Letter{1, 1}));
}

TEST(Reduce, IdempotentAndMatchesRescanOracle) {
  Random rnd(11);
  for (int t = 0; t < 500; ++t) {
    const int n = rnd.uniform(1, 5);
    auto raw = rnd.letters(n, rnd.uniform(0, 30));
    Word w = reduce(n, raw);
    EXPECT_EQ(reduce(n, w.letters()), w);
    oracle::Letters o;
    for (auto& l : raw) o.push_back(l.sign * l.gen);
    EXPECT_EQ(letters_of(w), oracle::reduce(o));
  }
}

TEST(Reduce, IndexOutOfRange) {
  std::vector<Letter> l{{3, 1}};
  EXPECT_THROW(reduce(2, l), IndexOutOfRange);
  EXPECT_THROW(parse_word("a5", 4), IndexOutOfRange);
}

TEST(WordText, RoundTrip) {
  Word w = W("a1 a2^-1 a3", 3);
  EXPECT_EQ(to_string(w), "a1 a2^-1 a3");
  EXPECT_EQ(to_string(Word(3)), "1");
  EXPECT_TRUE(W("1", 3).empty());
  EXPECT_EQ(W("a2^1 a1 a1^-1", 2), Word::generator(2, 2));
  EXPECT_THROW(W("b1", 2), ParseError);
  EXPECT_THROW(W("a1^2", 2), ParseError);
  EXPECT_THROW(W("1 a1", 2), ParseError);
}

TEST(Compose, IdentityLaw) {
  Random rnd(3);
  for (int t = 0; t < 50; ++t) {
    FreeHom g = rnd.hom(3, 2, 6);
    EXPECT_EQ(compose(FreeHom::identity(2), g), g);
    EXPECT_EQ(compose(g, FreeHom::identity(3)), g);
  }
}

TEST(Compose, Associativity) {
  Random rnd(5);
  for (int t = 0; t < 200; ++t) {
    FreeHom h = rnd.hom(2, 3, 5), g = rnd.hom(3, 3, 5), f = rnd.hom(3, 2, 5);
    EXPECT_EQ(compose(f, compose(g, h)), compose(compose(f, g), h));
  }
}

TEST(Compose, HandSubstitution) {
  // f: a1 -> a1 a2; g: a1 -> a1^-1. Applying f and then g sends a1 to a1^-1 a2.
  FreeHom f(2, 2, {W("a1 a2", 2), W("a2", 2)});
  FreeHom g(2, 2, {W("a1^-1", 2), W("a2", 2)});
  EXPECT_EQ(compose(g, f).image(1), W("a1^-1 a2", 2));
  // f o g applies g first: a1 -> f(a1^-1) = a2^-1 a1^-1.
  EXPECT_EQ(compose(f, g).image(1), W("a2^-1 a1^-1", 2));
}

TEST(Compose, RankMismatch) {
  FreeHom f = FreeHom::identity(2), g = FreeHom::identity(3);
  EXPECT_THROW(compose(f, g), RankMismatch);
  EXPECT_THROW(apply(f, Word::generator(3, 1)), RankMismatch);
}

TEST(Apply, InnerAutomorphismOnA2) {
  const int n = 3;
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) im.push_back(W("a1", n) * Word::generator(n, i) * W("a1^-1", n));
  FreeHom phi(n, n, im);
  EXPECT_EQ(apply(phi, W("a2", n)), W("a1 a2 a1^-1", n));
  EXPECT_EQ(apply(phi, W("a1", n)), W("a1", n));
}

TEST(Apply, HomomorphismAndOracle) {
  Random rnd(7);
  for (int t = 0; t < 300; ++t) {
    FreeHom f = rnd.hom(3, 4, 6);
    Word a = rnd.word(3, 10), b = rnd.word(3, 10);
    EXPECT_EQ(apply(f, commutator(a, b)), commutator(apply(f, a), apply(f, b)));
    EXPECT_EQ(apply(FreeHom::identity(3), a), a);
    std::vector<oracle::Letters> ims;
    for (const Word& w : f.images()) ims.push_back(letters_of(w));
    EXPECT_EQ(letters_of(apply(f, a)), oracle::substitute(ims, letters_of(a)));
  }
}

TEST(Abelianize, Examples) {
  EXPECT_EQ(abelianize(W("a1 a2 a1^-1", 3)), (IntVector{0, 1, 0}));
  Random rnd(2);
  for (int t = 0; t < 50; ++t) {
    Word a = rnd.word(4, 12), b = rnd.word(4, 12);
    EXPECT_EQ(abelianize(commutator(a, b)), IntVector(4, 0));
  }
  for (int g = 0; g <= 4; ++g) EXPECT_EQ(abelianize(boundary_word(g)), IntVector(static_cast<std::size_t>(2 * g), 0));
}

TEST(Abelianize, NaturalityUnderHomomorphisms) {
  Random rnd(9);
  for (int t = 0; t < 300; ++t) {
    FreeHom f = rnd.hom(3, 4, 7);
    Word w = rnd.word(3, 15);
    EXPECT_EQ(abelianize(apply(f, w)), abelianization_matrix(f) * abelianize(w));
    Word u = rnd.word(3, 15);
    IntVector s = abelianize(w), su = abelianize(u);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += su[i];
    EXPECT_EQ(abelianize(w * u), s);
  }
}

TEST(Content, SmallValues) {
  EXPECT_TRUE(content(Word(3)).is_zero());
  for (int i = 1; i <= 3; ++i) EXPECT_TRUE(content(Word::generator(3, i)).is_zero());
  Bivector e12(2);
  e12.add(1, 2, 1);
  EXPECT_EQ(content(W("a1 a2", 2)), e12);
}

TEST(Content, BoundaryWordGenus2) {
  Bivector expect(4);
  expect.add(1, 2, 2);
  expect.add(3, 4, 2);
  EXPECT_EQ(content(boundary_word(2)), expect);
  EXPECT_EQ(to_string(content(boundary_word(2))), "2*e1^e2 + 2*e3^e4");
}

TEST(Content, BoundaryWordAllGenera) {
  for (int g = 1; g <= 6; ++g) EXPECT_EQ(content(boundary_word(g)), symplectic_bivector(g) * Rational(2));
}

TEST(Content, MatchesDoubleSumOracle) {
  Random rnd(13);
  for (int t = 0; t < 1000; ++t) {
    const int n = rnd.uniform(1, 6);
    Word w = rnd.word(n, 40);
    EXPECT_EQ(content(w), bivector_of(oracle::content(letters_of(w)), n));
  }
}

TEST(Content, BasisDependence) {
  // In the basis b1 = a1 a2, b2 = a2 the word b1 is a single letter: content 0.
  EXPECT_TRUE(content(W("a1", 2)).is_zero());
  // The same element spelled in the a-basis is a1 a2: content e1^e2.
  Bivector e12(2);
  e12.add(1, 2, 1);
  EXPECT_EQ(content(W("a1 a2", 2)), e12);
}

TEST(Content, RandomizedIdentities) {
  SuiteConfig cfg;
  cfg.seed = 2024;
  SuiteReport r = suites::content_properties(cfg, 2000);
  EXPECT_TRUE(r.pass) << r.failure;
  EXPECT_EQ(r.cases, 2000);
}

TEST(BoundaryWord, Shape) {
  EXPECT_EQ(boundary_word(1), W("a1 a2 a1^-1 a2^-1", 2));
  EXPECT_TRUE(boundary_word(0).empty());
  for (int g = 0; g <= 6; ++g) EXPECT_EQ(boundary_word(g).size(), static_cast<std::size_t>(4 * g));
}

TEST(Bivector, Formatting) {
  Bivector b(3);
  EXPECT_EQ(to_string(b), "0");
  b.add(2, 1, 1);
  EXPECT_EQ(to_string(b), "-e1^e2");
  b.add(1, 3, Rational(1, 2));
  EXPECT_EQ(to_string(b), "-e1^e2 + 1/2*e1^e3");
  EXPECT_EQ(b.coeff(2, 1), 1);
}

TEST(IntMatrix, CheckedOverflow) {
  IntMatrix m = IntMatrix::identity(1);
  m.columns[0][0] = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(m * IntVector{2}, std::overflow_error);
}
