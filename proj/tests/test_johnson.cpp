#include <confmcg/johnson.hpp>
#include <confmcg/mcg.hpp>
#include <confmcg/suites.hpp>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace confmcg;

namespace {

Word W(const std::string& s, int n) { return parse_word(s, n); }

APoly random_poly(Random& rnd, int n) {
  APoly p(n);
  for (int t = rnd.uniform(1, 4); t > 0; --t) {
    AMonomial m{std::vector<int>(static_cast<std::size_t>(n), 0), static_cast<Mask>(rnd.uniform(0, (1 << n) - 1))};
    for (int k = rnd.uniform(0, 2); k > 0; --k) ++m.y[static_cast<std::size_t>(rnd.uniform(0, n - 1))];
    p.add(std::move(m), rnd.uniform(-3, 3));
  }
  return p;
}

long chain_dim(int n, int p, int q) { return oracle::binom(n + p - 1, p) * oracle::binom(n, q); }

// Exactness away from (0,0): kernel at (p,q) is the image arriving from (p+1,q-1).
long kernel_dim(int n, int p, int q) {
  if (q == 0) return p == 0 ? 1 : 0;
  return chain_dim(n, p + 1, q - 1) - kernel_dim(n, p + 1, q - 1);
}

}  // namespace

TEST(Xi, TwistExample) {
  FreeHom t1(2, 2, {W("a1 a2", 2), W("a2", 2)});
  XiMap x = xi(t1);
  EXPECT_EQ(to_string(x), "e1 -> e1^e2; e2 -> 0");
  EXPECT_TRUE(xi(FreeHom::identity(4)).is_zero());
}

TEST(Xi, InnerAutomorphismIsNonzero) {
  // Conjugation by a1 acts trivially on homology but xi(e2) = 2 e1^e2.
  FreeHom c = conjugation_by(W("a1", 2), 1);
  EXPECT_EQ(abelianization_matrix(c), IntMatrix::identity(2));
  EXPECT_EQ(to_string(xi(c)), "e1 -> 0; e2 -> 2*e1^e2");
}

TEST(Xi, CrossedHomomorphismIdentity) {
  Random rnd(51);
  for (int t = 0; t < 300; ++t) {
    FreeHom psi = rnd.hom(3, 4, 6), phi = rnd.hom(4, 3, 6);
    XiMap lhs = xi(compose(psi, phi));
    XiMap xp = xi(psi), xf = xi(phi);
    IntMatrix mpsi = abelianization_matrix(psi), mphi = abelianization_matrix(phi);
    for (int i = 1; i <= 4; ++i) {
      Bivector rhs = xp(mphi.columns[static_cast<std::size_t>(i - 1)]) + xf(i).pushforward(mpsi);
      EXPECT_EQ(lhs(i), rhs);
    }
  }
}

TEST(Xi, VanishesOnDoubleCommutatorPerturbations) {
  Random rnd(52);
  for (int t = 0; t < 100; ++t) {
    const int n = 4;
    std::vector<Word> im;
    for (int i = 1; i <= n; ++i) {
      Word h = commutator(rnd.word(n, 3), commutator(rnd.word(n, 3), rnd.word(n, 3)));
      im.push_back(Word::generator(n, i) * h);
    }
    EXPECT_TRUE(xi(FreeHom(n, n, im)).is_zero());
  }
}

TEST(JohnsonEndo, Functoriality) {
  Random rnd(53);
  for (int t = 0; t < 200; ++t) {
    FreeHom f = rnd.hom(3, 4, 5), g = rnd.hom(4, 3, 5);
    JohnsonEndo jf = johnson_endo(f), jg = johnson_endo(g), jfg = johnson_endo(compose(f, g));
    APoly a = random_poly(rnd, 4);
    EXPECT_EQ(jfg(a), jf(jg(a)));
  }
}

TEST(JohnsonEndo, Images) {
  FreeHom t1(2, 2, {W("a1 a2", 2), W("a2", 2)});
  JohnsonEndo j = johnson_endo(t1);
  EXPECT_EQ(to_string(j.image_x(1)), "x1 + x2");
  EXPECT_EQ(to_string(j.image_y(1)), "x1x2 + y2 + y1");
  EXPECT_EQ(to_string(j.image_y(2)), "y2");
}

TEST(JohnsonEndo, NotLinearInAbelianization) {
  // Same matrix, different xi: the endomorphism sees more than homology.
  FreeHom c = conjugation_by(W("a1", 2), 1);
  JohnsonEndo jc = johnson_endo(c), jid = johnson_endo(FreeHom::identity(2));
  EXPECT_EQ(jc.matrix, jid.matrix);
  EXPECT_NE(jc(APoly::y(2, 2)), jid(APoly::y(2, 2)));
}

TEST(JohnsonRep, DimensionsAtGenus1) {
  FreeHom t1(2, 2, {W("a1 a2", 2), W("a2", 2)});
  FreeHom t1inv(2, 2, {W("a1 a2^-1", 2), W("a2", 2)});
  JohnsonRepElement full = johnson_rep(t1, false, &t1inv);
  EXPECT_EQ(full.matrix.rows(), 3);
  EXPECT_EQ(full.h_dim, 2);
  JohnsonRepElement red = johnson_rep(t1, true);
  EXPECT_EQ(red.matrix.rows(), 2);
  EXPECT_TRUE(red.reduced);
}

TEST(JohnsonRep, ReducedDimensionAtGenus2) {
  EXPECT_EQ(johnson_rep(FreeHom::identity(4), true).matrix.rows(), 4 + 5);
  EXPECT_TRUE(johnson_rep(FreeHom::identity(4), true).matrix.is_identity());
  EXPECT_EQ(johnson_rep(FreeHom::identity(4), false).matrix.rows(), 4 + 6);
}

TEST(JohnsonRep, GroupLawAndBlockTriangular) {
  Random rnd(54);
  for (int t = 0; t < 100; ++t) {
    const int n = rnd.uniform(2, 4);
    auto [f, fi] = rnd.automorphism(n, rnd.uniform(1, 6));
    auto [g, gi] = rnd.automorphism(n, rnd.uniform(1, 6));
    FreeHom fg = compose(f, g), fgi = compose(gi, fi);
    RatMatrix jf = johnson_rep(f, false, &fi).matrix, jg = johnson_rep(g, false, &gi).matrix;
    EXPECT_EQ(johnson_rep(fg, false, &fgi).matrix, jf * jg);
    EXPECT_TRUE((johnson_rep(fi, false, &f).matrix * jf).is_identity());
    for (int r = 0; r < n; ++r)
      for (int c = n; c < jf.cols(); ++c) EXPECT_EQ(jf(r, c), 0);
  }
}

TEST(JohnsonRep, ReducedGroupLawOnCatalog) {
  TwistCatalog cat = load_catalog(std::string(CONFMCG_DATA_DIR) + "/catalog_g2.txt");
  for (const auto& a : cat.entries)
    for (const auto& b : cat.entries) {
      MappingClass ab = product(a.element, b.element);
      RatMatrix lhs = johnson_rep(ab.phi, true, &*ab.inverse).matrix;
      RatMatrix rhs = johnson_rep(a.element.phi, true, &*a.element.inverse).matrix *
                      johnson_rep(b.element.phi, true, &*b.element.inverse).matrix;
      EXPECT_EQ(lhs, rhs) << a.name << "*" << b.name;
    }
}

TEST(JohnsonRep, Errors) {
  FreeHom sq(2, 2, {W("a1 a1", 2), W("a2", 2)});
  EXPECT_THROW(johnson_rep(sq, false), NotInvertible);
  FreeHom id = FreeHom::identity(2);
  EXPECT_THROW(johnson_rep(sq, false, &id), NotInvertible);
  FreeHom ns(4, 4, {W("a1 a3", 4), W("a2", 4), W("a3", 4), W("a4", 4)});
  EXPECT_THROW(johnson_rep(ns, true), NotSymplectic);
  EXPECT_NO_THROW(johnson_rep(ns, false));
  EXPECT_THROW(johnson_rep(FreeHom::identity(3), true), DegreeOutOfRange);
}

TEST(Koszul, DifferentialExamples) {
  KoszulDifferential d = koszul_differential(2, 1);
  EXPECT_EQ(d(APoly::y(2, 1)), APoly::x(2, 1));
  EXPECT_TRUE(d(APoly::x(2, 1)).is_zero());
  // d(y1 y2) = x1 y2 + y1 x2
  EXPECT_EQ(to_string(d(APoly::y(2, 1) * APoly::y(2, 2))), to_string(APoly::x(2, 1) * APoly::y(2, 2) + APoly::y(2, 1) * APoly::x(2, 2)));
  // d(y1 x2) = x1 x2, d(x2 y1) = -x2 x1 = x1 x2
  EXPECT_EQ(d(APoly::x(2, 2) * APoly::y(2, 1)), APoly::x(2, 1) * APoly::x(2, 2));
  RatMatrix m = koszul_matrix(d, 1, 0);
  EXPECT_TRUE(m.is_identity());
}

TEST(Koszul, SquaresToZero) {
  Random rnd(55);
  for (int t = 0; t < 200; ++t) {
    const int n = rnd.uniform(1, 5);
    KoszulDifferential d = koszul_differential(n, 1);
    EXPECT_TRUE(d(d(random_poly(rnd, n))).is_zero());
  }
}

TEST(Koszul, IsADerivation) {
  Random rnd(56);
  for (int t = 0; t < 200; ++t) {
    const int n = 3;
    KoszulDifferential d = koszul_differential(n, 1);
    // homogeneous in x-parity so the Koszul sign is defined
    APoly a(n);
    AMonomial ma{std::vector<int>(3, 0), static_cast<Mask>(rnd.uniform(0, 7))};
    ++ma.y[static_cast<std::size_t>(rnd.uniform(0, 2))];
    a.add(ma, 1);
    APoly b = random_poly(rnd, n);
    const int sign = std::popcount(ma.x) % 2 == 0 ? 1 : -1;
    EXPECT_EQ(d(a * b), d(a) * b + a * d(b) * Rational(sign));
  }
}

TEST(Koszul, SliceDimensions) {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; q <= n; ++q) EXPECT_EQ(static_cast<long>(koszul_slice(n, p, q).size()), chain_dim(n, p, q));
}

TEST(Koszul, HomologyIsRationalsInDegreeZero) {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 2; ++m) {
      std::vector<int> h = koszul_homology_dims(n, m, 12);
      EXPECT_EQ(h[0], 1);
      for (std::size_t d = 1; d < h.size(); ++d) EXPECT_EQ(h[d], 0) << "n=" << n << " m=" << m << " degree " << d;
    }
}

TEST(Koszul, KernelDimensionsByExactness) {
  for (int n = 1; n <= 4; ++n)
    for (const KoszulSlice& s : koszul_slices(n, 1, 8)) {
      EXPECT_EQ(s.chain_dim, chain_dim(n, s.p, s.q));
      EXPECT_EQ(s.kernel_dim(), kernel_dim(n, s.p, s.q)) << n << " " << s.p << " " << s.q;
    }
}

TEST(Koszul, EulerCharacteristicByTotalLength) {
  // d_K preserves p+q; the alternating sum over q is 1 at p+q = 0 and 0 otherwise.
  for (int n = 1; n <= 4; ++n) {
    std::map<int, long> chi;
    for (const KoszulSlice& s : koszul_slices(n, 1, 12)) {
      if (s.p + s.q > 4) continue;
      chi[s.p + s.q] += (s.q % 2 == 0 ? 1 : -1) * s.chain_dim;
    }
    for (const auto& [len, c] : chi) EXPECT_EQ(c, len == 0 ? 1 : 0) << "n=" << n << " p+q=" << len;
  }
}

TEST(Koszul, Grading) {
  for (const KoszulSlice& s : koszul_slices(2, 2, 15)) {
    EXPECT_EQ(s.weight, 2 * s.p + s.q);
    EXPECT_EQ(s.degree, 3 * s.weight);
  }
}

TEST(Koszul, EquivariantUnderJohnsonEndomorphisms) {
  Random rnd(57);
  for (int t = 0; t < 100; ++t) {
    FreeHom f = rnd.hom(3, 3, 6);
    JohnsonEndo j = johnson_endo(f);
    KoszulDifferential d = koszul_differential(3, 1);
    APoly a = random_poly(rnd, 3);
    EXPECT_EQ(d(j(a)), j(d(a)));
  }
}

TEST(FreeMaps, DimensionsFromExactness) {
  for (int n = 1; n <= 4; ++n) {
    const int m = 1, mu = 1, cap = 6;
    std::map<std::pair<int, int>, int> expect;
    for (int w = 0; mu * w <= cap; ++w)
      for (int q = 0; q <= std::min(n, w); ++q) {
        if ((w - q) % 2) continue;
        const int p = (w - q) / 2;
        const long ker = kernel_dim(n, p, q);
        const long coker = chain_dim(n, p, q) - ker + (p == 0 && q == 0 ? 1 : 0);
        if (ker > 0) expect[{mu * w, w}] += static_cast<int>(ker);
        if (coker > 0 && mu * w + mu + 1 <= cap) expect[{mu * w + mu + 1, w + 1}] += static_cast<int>(coker);
      }
    EXPECT_EQ(free_maps_dims(n, m, cap), expect) << "n=" << n;
  }
}

TEST(FreeMaps, FrozenSmallCase) {
  // n = 2, m = 1, degrees up to 3.
  std::map<std::pair<int, int>, int> expect{{{0, 0}, 1}, {{1, 1}, 2}, {{2, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 3}};
  EXPECT_EQ(free_maps_dims(2, 1, 3), expect);
}

TEST(EmSpace, Dimensions) {
  std::vector<Integer> ext = em_space_dims(2, 2, 1, 6);
  std::vector<Integer> e1{1, 4, 6, 4, 1, 0, 0};
  EXPECT_EQ(ext, e1);
  std::vector<Integer> pol = em_space_dims(2, 3, 1, 6);
  std::vector<Integer> e2{1, 0, 4, 0, 10, 0, 20};
  EXPECT_EQ(pol, e2);
  std::vector<Integer> g0 = em_space_dims(0, 2, 1, 3);
  std::vector<Integer> e3{1, 0, 0, 0};
  EXPECT_EQ(g0, e3);
  EXPECT_THROW(em_space_dims(1, 1, 1, 3), DegreeOutOfRange);
}
