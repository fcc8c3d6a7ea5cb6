#include <doctest.h>

#include "oracles.hpp"
#include "shadow_wlo/lie.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace shadow_wlo;

TEST_SUITE("lie") {

TEST_CASE("A1 data") {
  const auto L = LieData::type_a(1);
  CHECK(L.dual_coxeter() == 2);
  CHECK(L.positive_roots().size() == 1);
  CHECK(L.positive_roots()[0] == Weight{2});
  // rho = alpha / 2, theta = alpha, <alpha,alpha> = 2
  CHECK(2 * L.rho() == L.positive_roots()[0]);
  CHECK(L.highest_root() == Weight{2});
  CHECK(L.inner(Weight{2}, Weight{2}) == Rational(2));
  CHECK(L.weyl_group().size() == 2);
}

TEST_CASE("root data invariants") {
  for (int r = 1; r <= 4; ++r) {
    const auto L = LieData::type_a(r);
    CAPTURE(r);
    CHECK(L.dual_coxeter() == r + 1);
    CHECK(Rational(L.dual_coxeter()) == 1 + L.inner(L.highest_root(), L.rho()));
    CHECK(L.positive_roots().size() == std::size_t(r * (r + 1) / 2));
    std::size_t fact = 1;
    for (int i = 2; i <= r + 1; ++i) fact *= i;
    CHECK(L.weyl_group().size() == fact);
    for (const auto& a : L.positive_roots()) CHECK(L.inner(a, a) == Rational(2));
    // duality of fundamental weights and simple coroots, exact
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        CHECK(L.inner(L.fundamental_weights()[i], L.coroot_basis()[j]) == Rational(i == j ? 1 : 0));
    // coroot lattice is integral and even
    for (const auto& a : L.coroot_basis())
      for (const auto& b : L.coroot_basis()) CHECK(L.inner(a, b).denominator() == 1);
    // Weyl group preserves the form and is closed under products
    for (const auto& w : L.weyl_group())
      for (const auto& a : L.positive_roots())
        for (const auto& b : L.fundamental_weights()) CHECK(L.inner(w.apply(a), w.apply(b)) == L.inner(a, b));
  }
}

TEST_CASE("level labels") {
  const auto A1 = LieData::type_a(1);
  CHECK(level_labels(A1, 4) == std::vector<Weight>{Weight{0}, Weight{1}, Weight{2}});
  CHECK(level_labels(A1, 1).empty());
  for (int k = 2; k <= 10; ++k) CHECK(level_labels(A1, k).size() == std::size_t(k - 1));
  const auto A2 = LieData::type_a(2);
  CHECK(level_labels(A2, 2).empty());
  CHECK(level_labels(A2, 3).size() == 1);
  CHECK(level_labels(A2, 4).size() == 3);
  CHECK(level_labels(A2, 5).size() == 6);
  // brute force: all coords up to k
  for (int k = 3; k <= 9; ++k) {
    std::vector<Weight> bf;
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        if (a + b <= k - 3) bf.push_back(Weight{a, b});
    CHECK(level_labels(A2, k) == bf);
  }
}

TEST_CASE("level set equals lattice points of the shifted alcove") {
  // Lambda^k_+ = Lambda cap (P k - rho): lambda + rho strictly inside the scaled alcove
  for (int r = 1; r <= 2; ++r) {
    const auto L = LieData::type_a(r);
    for (int k = 1; k <= L.dual_coxeter() + 6; ++k) {
      std::vector<Weight> alc;
      for (const auto& p : box_points(L, k)) {
        bool inside = true;
        for (int i = 0; i < r; ++i) inside = inside && p[i] > 0;
        inside = inside && L.theta_pairing(p) < k;
        if (inside) alc.push_back(p - L.rho());
      }
      std::sort(alc.begin(), alc.end());
      CHECK(alc == level_labels(L, k));
    }
  }
}

TEST_CASE("quantum dimensions") {
  const auto A1 = LieData::type_a(1);
  CHECK(quantum_dim(A1, 3, Weight{0}) == doctest::Approx(1.0));
  CHECK(quantum_dim(A1, 4, Weight{1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const double q5 = std::sin(3 * std::numbers::pi / 5) / std::sin(std::numbers::pi / 5);
  CHECK(quantum_dim(A1, 5, Weight{2}) == doctest::Approx(q5).epsilon(1e-14));
  // Chebyshev recursion [2][n] = [n+1] + [n-1]
  for (int k = 3; k <= 9; ++k) {
    const double two = quantum_dim(A1, k, Weight{1});
    for (int n = 1; n + 1 <= k - 2; ++n)
      CHECK(two * quantum_dim(A1, k, Weight{n}) ==
            doctest::Approx(quantum_dim(A1, k, Weight{n + 1}) + quantum_dim(A1, k, Weight{n - 1})).epsilon(1e-12));
  }
  CHECK_THROWS(quantum_dim(A1, 4, Weight{3}));
  for (int r = 1; r <= 2; ++r) {
    const auto L = LieData::type_a(r);
    for (int k = L.dual_coxeter(); k <= L.dual_coxeter() + 6; ++k)
      for (const auto& lam : level_labels(L, k)) {
        const double q = quantum_dim(L, k, lam);
        CHECK(q > 0);
        CHECK(q == doctest::Approx(oracle::character_qdim(L, k, lam)).epsilon(1e-12));
      }
  }
}

TEST_CASE("weight multiplicities") {
  const auto A1 = LieData::type_a(1);
  CHECK(weight_multiplicity(A1, Weight{1}, Weight{1}) == 1);
  CHECK(weight_multiplicity(A1, Weight{1}, Weight{-1}) == 1);
  CHECK(weight_multiplicity(A1, Weight{2}, Weight{0}) == 1);
  CHECK(weight_multiplicity(A1, Weight{2}, Weight{1}) == 0);
  const auto A2 = LieData::type_a(2);
  CHECK(weight_multiplicity(A2, A2.rho(), Weight{0, 0}) == 2);
  CHECK(weight_multiplicity(A2, Weight{5, 5}, Weight{9, 9}) == 0);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const Character ch(A2, Weight{a, b});
      CHECK(ch.dimension() == weyl_dimension(A2, Weight{a, b}));
      for (int x = -8; x <= 8; ++x)
        for (int y = -8; y <= 8; ++y)
          CHECK(ch.multiplicity(Weight{x, y}) == oracle::gt_multiplicity_su3(Weight{a, b}, Weight{x, y}));
    }
  const auto A3 = LieData::type_a(3);
  CHECK(Character(A3, A3.rho()).dimension() == 64);
  CHECK(weight_multiplicity(A3, Weight{1, 0, 1}, Weight{0, 0, 0}) == 3);
}

TEST_CASE("fusion A1 against truncated Clebsch-Gordan") {
  const auto A1 = LieData::type_a(1);
  CHECK(fusion_coefficient(A1, 4, Weight{1}, Weight{1}, Weight{0}) == 1);
  CHECK(fusion_coefficient(A1, 4, Weight{1}, Weight{1}, Weight{1}) == 0);
  for (int k = 2; k <= 8; ++k)
    for (const auto& mu : level_labels(A1, k))
      for (const auto& nu : level_labels(A1, k))
        for (const auto& lam : level_labels(A1, k)) {
          const auto n = fusion_coefficient(A1, k, mu, nu, lam);
          CHECK(n == oracle::su2_fusion(k, int(mu[0]), int(lam[0]), int(nu[0])));
          CHECK(n == fusion_coefficient(A1, k, lam, nu, mu));
        }
}

TEST_CASE("fusion identities") {
  for (int r = 1; r <= 2; ++r) {
    const auto L = LieData::type_a(r);
    for (int k = L.dual_coxeter(); k <= (r == 1 ? 8 : 6); ++k) {
      const auto labs = level_labels(L, k);
      for (const auto& mu : labs)
        for (const auto& nu : labs) {
          CHECK(fusion_coefficient(L, k, Weight::zero(r), nu, nu) == 1);
          // N^0 : 0 appears in mu (x) lambda iff lambda = mu*
          for (const auto& lam : labs) {
            const auto n0 = fusion_coefficient(L, k, mu, Weight::zero(r), lam);
            CHECK(n0 == (lam == L.dual(mu) ? 1 : 0));
          }
        }
    }
  }
}

TEST_CASE("fusion A2 against Verlinde") {
  const auto A2 = LieData::type_a(2);
  for (int k = 3; k <= 7; ++k) {
    const auto labs = level_labels(A2, k);
    for (const auto& mu : labs)
      for (const auto& nu : labs)
        for (const auto& lam : labs) {
          const auto n = fusion_coefficient(A2, k, mu, nu, lam);
          CHECK(double(n) == doctest::Approx(oracle::verlinde_fusion(A2, k, mu, nu, lam)).epsilon(1e-9));
          CHECK(n >= 0);
        }
  }
}

TEST_CASE("fusion with colors beyond the level set") {
  // colors outside the level set: signed sums, may vanish or go negative
  const auto A1 = LieData::type_a(1);
  CHECK(fusion_coefficient(A1, 3, Weight{2}, Weight{0}, Weight{0}) == 0);
  CHECK(fusion_coefficient(A1, 3, Weight{2}, Weight{1}, Weight{1}) == 0);
  CHECK(fusion_coefficient(A1, 4, Weight{3}, Weight{0}, Weight{1}) == 0);
  CHECK(fusion_coefficient(A1, 4, Weight{4}, Weight{2}, Weight{0}) == -1);
}

TEST_CASE("regularity and ad determinant") {
  const auto A1 = LieData::type_a(1);
  CHECK_FALSE(is_regular(A1, Eigen::VectorXd::Zero(1)));
  CHECK_FALSE(is_regular(A1, Weight{2}.to_real() / 2.0));
  for (int k = 2; k <= 8; ++k)
    for (const auto& lam : level_labels(A1, k)) CHECK(is_regular(A1, (lam + A1.rho()).to_real() / k));
  CHECK(ad_det_k(A1, Weight{2}.to_real() / 4.0) == doctest::Approx(4.0));
  CHECK(ad_det_k(A1, Eigen::VectorXd::Zero(1)) == 0.0);
  CHECK(oracle::dense_ad_det(A1, Weight{2}.to_real() / 4.0) == doctest::Approx(4.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  for (int r = 1; r <= 3; ++r) {
    const auto L = LieData::type_a(r);
    for (int t = 0; t < 100; ++t) {
      const Eigen::VectorXd b = oracle::random_vector(rng, r, -2.0, 2.0);
      const double ad = ad_det_k(L, b);
      if (r <= 2) CHECK(ad == doctest::Approx(oracle::dense_ad_det(L, b)).epsilon(1e-9));
      // periodicity under the coroot lattice
      std::uniform_int_distribution<int> u(-3, 3);
      Weight x = Weight::zero(r);
      for (int i = 0; i < r; ++i) x += std::int64_t(u(rng)) * L.coroot_basis()[i];
      const double shifted = ad_det_k(L, b + x.to_real());
      CHECK(shifted == doctest::Approx(ad).epsilon(1e-10));
      CHECK(weyl_denominator(L, b + x.to_real()) == doctest::Approx(weyl_denominator(L, b)).epsilon(1e-9));
      const double wd = weyl_denominator(L, b);
      CHECK(wd * wd == doctest::Approx(ad).epsilon(1e-12));
    }
  }
}

TEST_CASE("alcove decomposition") {
  const auto A1 = LieData::type_a(1);
  const int k = 4;
  {
    auto p = alcove_decompose(A1, k, Weight{1} + A1.rho());
    CHECK(p.label == Weight{1});
    CHECK(p.tau.sign() == 1);
  }
  {
    auto p = alcove_decompose(A1, k, -(Weight{1} + A1.rho()));
    CHECK(p.label == Weight{1});
    CHECK(p.tau.sign() == -1);
    CHECK(p.tau.apply(Weight{1} + A1.rho()) == -(Weight{1} + A1.rho()));
  }
  {
    const Weight b = A1.rho() + std::int64_t(k) * A1.coroot_basis()[0];
    auto p = alcove_decompose(A1, k, b);
    CHECK(p.label == Weight{0});
    CHECK(p.tau.sign() == 1);
    CHECK(p.tau.linear.matrix == IMat::Identity(1, 1));
    CHECK(p.tau.apply(A1.rho()) == b);
  }
  CHECK_THROWS(alcove_decompose(A1, k, Weight{4}));
  // every regular box point lands in the label set, signs match the Weyl denominator
  for (int r = 1; r <= 2; ++r) {
    const auto L = LieData::type_a(r);
    for (int kk = L.dual_coxeter(); kk <= L.dual_coxeter() + 4; ++kk)
      for (const auto& p : box_points(L, kk)) {
        if (!is_regular_at_level(L, p, kk)) continue;
        const auto a = alcove_decompose(L, kk, p);
        CHECK(in_level_set(L, kk, a.label));
        CHECK(a.tau.apply(a.label + L.rho()) == p);
        const double ratio = weyl_denominator_at_level(L, p, kk) /
                             weyl_denominator_at_level(L, a.label + L.rho(), kk);
        CHECK(ratio == doctest::Approx(double(a.tau.sign())).epsilon(1e-12));
      }
  }
}

TEST_CASE("box points are a fundamental domain of k Gamma") {
  for (int r = 1; r <= 2; ++r) {
    const auto L = LieData::type_a(r);
    for (int k = 1; k <= 6; ++k) {
      const auto pts = box_points(L, k);
      // index of Gamma in Lambda is r + 1, volume ratio k^r
      std::size_t expect = r + 1;
      for (int i = 0; i < r; ++i) expect *= k;
      CHECK(pts.size() == expect);
    }
  }
  // a different unimodular basis of Gamma gives a set of the same size, equal mod k Gamma
  const auto A2 = LieData::type_a(2);
  IMat B(2, 2);
  B << 2, -1, 1, 1;  // alpha_1, alpha_1 + alpha_2
  const auto p1 = box_points(A2, 4);
  const auto p2 = box_points(A2, 4, &B);
  CHECK(p1.size() == p2.size());
  CHECK(p1 != p2);
}

}  // TEST_SUITE
