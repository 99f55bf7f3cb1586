#include <confmcg/mcg.hpp>
#include <confmcg/nielsen.hpp>
#include <confmcg/suites.hpp>

#include <gtest/gtest.h>

using namespace confmcg;

TEST(Nielsen, IdentityAndElementary) {
  auto inv = find_inverse(FreeHom::identity(3));
  ASSERT_TRUE(inv);
  EXPECT_TRUE(inv->is_identity());
  FreeHom t(2, 2, {parse_word("a1 a2", 2), parse_word("a2", 2)});
  auto ti = find_inverse(t);
  ASSERT_TRUE(ti);
  EXPECT_EQ(ti->image(1), parse_word("a1 a2^-1", 2));
}

TEST(Nielsen, RandomAutomorphisms) {
  Random rnd(31);
  int found = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = rnd.uniform(2, 4);
    auto [f, g] = rnd.automorphism(n, rnd.uniform(1, 8));
    ASSERT_TRUE(is_inverse_pair(f, g));
    auto inv = find_inverse(f);
    if (inv) {
      ++found;
      EXPECT_EQ(*inv, g);  // inverses are unique
    }
  }
  EXPECT_EQ(found, 200);
}

TEST(Nielsen, CatalogProductsNeedPlateauEscape) {
  // Products of twists that the greedy pass alone cannot invert.
  TwistCatalog cat = load_catalog(std::string(CONFMCG_DATA_DIR) + "/catalog_g2.txt");
  Random rnd(32);
  for (int t = 0; t < 150; ++t) {
    MappingClass m = identity_class(2);
    for (int k = 0; k < 4; ++k) {
      const auto& e = cat.entries[static_cast<std::size_t>(rnd.uniform(0, static_cast<int>(cat.entries.size()) - 1))];
      m = product(m, e.element);
    }
    auto inv = find_inverse(m.phi);
    ASSERT_TRUE(inv) << to_string(m.phi);
    EXPECT_EQ(*inv, *m.inverse);
  }
}

TEST(Nielsen, NonInvertibleIsNotFound) {
  FreeHom sq(2, 2, {parse_word("a1 a1", 2), parse_word("a2", 2)});
  EXPECT_FALSE(find_inverse(sq).has_value());
  FreeHom collapse(2, 2, {parse_word("a1", 2), parse_word("1", 2)});
  EXPECT_FALSE(find_inverse(collapse).has_value());
  FreeHom same(2, 2, {parse_word("a1", 2), parse_word("a1", 2)});
  EXPECT_FALSE(find_inverse(same).has_value());
}
