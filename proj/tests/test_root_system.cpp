#include <catch2/catch_amalgamated.hpp>

#include "nlq/root_system.hpp"

using namespace nlq;

TEST_CASE("highest roots") {
  CHECK(highest_root_coeffs(RootSystem::a(1)) == std::vector<std::int64_t>{1});
  CHECK(highest_root_coeffs(RootSystem::a(2)) == std::vector<std::int64_t>{1, 1});
  auto e8 = highest_root_coeffs(RootSystem::e8());
  CHECK(e8 == std::vector<std::int64_t>{2, 3, 4, 6, 5, 4, 3, 2});
  std::int64_t height = 0;
  for (std::int64_t c : e8) height += c;
  CHECK(height + 1 == 30);  // Coxeter number of E8
}

TEST_CASE("irreducibility") {
  RootSystem a1a1 = product(RootSystem::a(1), RootSystem::a(1));
  CHECK_FALSE(a1a1.irreducible());
  CHECK(a1a1.components().size() == 2);
  CHECK_THROWS_AS(highest_root_coeffs(a1a1), NotIrreducible);
  CHECK(RootSystem::e8().irreducible());
}

TEST_CASE("weighted projective weights") {
  CHECK(wp_weights(RootSystem::a(1)) == std::vector<std::int64_t>{1, 1});
  CHECK(wp_weights(RootSystem::e8()) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 5, 4, 3, 2});

  auto ee = wp_weights(product(RootSystem::e8(), RootSystem::e8()));
  REQUIRE(ee.size() == 17);  // WP^16
  std::vector<std::int64_t> expected{1, 2, 3, 4, 6, 5, 4, 3, 2, 2, 3, 4, 6, 5, 4, 3, 2};
  CHECK(ee == expected);
}

TEST_CASE("name parsing") {
  CHECK(wp_weights(root_system_from_name("E8xE8")).size() == 17);
  CHECK(root_system_from_name("A1xA1").rank() == 2);
  CHECK(root_system_from_name("D4").rank() == 4);
  CHECK_THROWS_AS(root_system_from_name("Z9"), Error);
}

TEST_CASE("invariant bilinear forms") {
  auto e8_basis = invariant_form_space(RootSystem::e8());
  REQUIRE(e8_basis.size() == 1);
  // spanned by the Gram form: proportional to the Cartan matrix
  const auto& m = e8_basis[0];
  RootSystem e8 = RootSystem::e8();
  const GramMatrix& cartan = e8.cartan();
  Rational scale;
  bool scale_set = false;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (cartan[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) {
        CHECK(m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0);
      } else if (!scale_set) {
        scale = m[static_cast<size_t>(i)][static_cast<size_t>(j)] / cartan[static_cast<size_t>(i)][static_cast<size_t>(j)];
        scale_set = true;
        CHECK(scale != 0);
      } else {
        CHECK(m[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
              scale * cartan[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      }
    }

  CHECK(invariant_form_space(RootSystem::a(1)).size() == 1);

  // one scalar per factor: the form need not be a multiple of the Gram form
  // on a reducible system, which is why the boundary argument works factor
  // by factor
  auto a1a1 = invariant_form_space(product(RootSystem::a(1), RootSystem::a(1)));
  CHECK(a1a1.size() == 2);
  for (const auto& b : a1a1) CHECK(b[0][1] == 0);
}

TEST_CASE("invariance of the returned forms under the Weyl generators") {
  for (const auto& rs : {RootSystem::a(2), RootSystem::d(4), product(RootSystem::a(1), RootSystem::a(2))}) {
    int n = rs.rank();
    for (const auto& m : invariant_form_space(rs)) {
      for (int i = 0; i < n; ++i) {
        GramMatrix s = reflection_matrix(rs, i);
        // S^T M S == M entrywise
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) {
            Rational acc;
            for (int r = 0; r < n; ++r)
              for (int t = 0; t < n; ++t) {
                std::int64_t coef = s[static_cast<size_t>(r)][static_cast<size_t>(p)] * s[static_cast<size_t>(t)][static_cast<size_t>(q)];
                if (coef != 0) acc += Rational(coef) * m[static_cast<size_t>(r)][static_cast<size_t>(t)];
              }
            CHECK(acc == m[static_cast<size_t>(p)][static_cast<size_t>(q)]);
          }
      }
    }
  }
}

TEST_CASE("reflection matrices are involutions preserving the Cartan form") {
  for (const auto& rs : {RootSystem::a(2), RootSystem::e8()}) {
    int n = rs.rank();
    for (int i = 0; i < n; ++i) {
      GramMatrix s = reflection_matrix(rs, i);
      // s fixes alpha_i up to sign and squares to the identity
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          std::int64_t sq = 0;
          for (int k = 0; k < n; ++k)
            sq += s[static_cast<size_t>(r)][static_cast<size_t>(k)] * s[static_cast<size_t>(k)][static_cast<size_t>(c)];
          CHECK(sq == (r == c ? 1 : 0));
        }
      // s_i(alpha_i) = -alpha_i in root coordinates
      auto e = rs.simple_root(i);
      std::vector<std::int64_t> image(static_cast<size_t>(n), 0);
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
          image[static_cast<size_t>(r)] += s[static_cast<size_t>(r)][static_cast<size_t>(k)] * e[static_cast<size_t>(k)];
      for (int r = 0; r < n; ++r) CHECK(image[static_cast<size_t>(r)] == (r == i ? -1 : 0));
    }
  }
}

TEST_CASE("cartan validation") {
  CHECK_THROWS_AS(RootSystem(GramMatrix{{3}}), Error);           // diagonal must be 2
  CHECK_THROWS_AS(RootSystem(GramMatrix{{2, 1}, {1, 2}}), Error);  // off-diagonal must be <= 0
  CHECK_THROWS_AS(RootSystem(GramMatrix{{2, -1}, {-2, 2}}), Error);  // symmetric only
}
