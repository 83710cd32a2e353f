#include <gtest/gtest.h>

#include <random>

#include "wgcalc/charalg.hpp"
#include "wgcalc/weingarten.hpp"

using namespace wgcalc;

namespace {

Permutation one_based(std::vector<int> v) { return Permutation::from_one_based(v); }

Rational random_rational(std::mt19937& gen) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return make_rational(num(gen), den(gen));
}

GroupFunction random_group_function(int m, std::mt19937& gen) {
  return GroupFunction::from(m, [&](const Permutation&) { return random_rational(gen); });
}

CosetFunction random_coset_function(int k, Twist t, std::mt19937& gen) {
  CosetFunction f = CosetFunction::zero(k, t);
  for (auto& [mu, v] : f.values)
    if (!twist_forces_zero(mu, t)) v = random_rational(gen);
  return f;
}

ClassFunction random_class_function(int k, std::mt19937& gen) {
  ClassFunction f = ClassFunction::zero(k);
  for (auto& [mu, v] : f.values) v = random_rational(gen);
  return f;
}

// Semistandard tableaux of shape λ with entries in [a+b], weighted by
// ∏ (+1 for entries <= a, -1 otherwise).
Rational schur_by_tableaux(const Partition& lambda, int a, int b) {
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < lambda.length(); ++r)
    for (int c = 0; c < lambda[static_cast<std::size_t>(r)]; ++c) cells.emplace_back(r, c);
  std::map<std::pair<int, int>, int> fill;
  long total = 0;
  auto rec = [&](auto&& self, std::size_t idx, long weight) -> void {
    if (idx == cells.size()) {
      total += weight;
      return;
    }
    const auto [r, c] = cells[idx];
    for (int v = 1; v <= a + b; ++v) {
      if (c > 0 && fill[{r, c - 1}] > v) continue;
      if (r > 0 && fill[{r - 1, c}] >= v) continue;
      fill[{r, c}] = v;
      self(self, idx + 1, v <= a ? weight : -weight);
    }
  };
  rec(rec, 0, 1);
  return Rational(total);
}

}  // namespace

TEST(Characters, DimensionsAndOrthogonality) {
  for (int k = 1; k <= 7; ++k) {
    const auto parts = partitions_of(k);
    Integer sum_sq = 0;
    for (const auto& lambda : parts) {
      EXPECT_EQ(Rational(dimension(lambda)), character(lambda, Partition::ones(k)));
      sum_sq += dimension(lambda) * dimension(lambda);
    }
    EXPECT_EQ(sum_sq, factorial(static_cast<unsigned>(k)));
    for (const auto& mu : parts)
      for (const auto& nu : parts) {
        Rational col(0);
        for (const auto& lambda : parts) col += character(lambda, mu) * character(lambda, nu);
        EXPECT_EQ(col, mu == nu ? Rational(centralizer_order(mu)) : Rational(0));
      }
    for (const auto& l1 : parts)
      for (const auto& l2 : parts) {
        Rational row(0);
        for (const auto& mu : parts) row += character(l1, mu) * character(l2, mu) / Rational(centralizer_order(mu));
        EXPECT_EQ(row, l1 == l2 ? Rational(1) : Rational(0));
      }
  }
  EXPECT_EQ(character(Partition({2, 1}), Partition({3})), -1);
  EXPECT_EQ(character(Partition({2, 1}), Partition({2, 1})), 0);
  EXPECT_THROW(character(Partition({2}), Partition({1, 1, 1})), std::invalid_argument);
}

TEST(Characters, ClassSizesMatchEnumeration) {
  for (int k = 1; k <= 6; ++k) {
    std::map<Partition, Integer> count;
    for_each_permutation(k, [&](const Permutation& p) { count[cycle_type(p)] += 1; });
    for (const auto& [mu, c] : count) {
      EXPECT_EQ(class_size(mu), c);
      EXPECT_EQ(class_size(mu) * centralizer_order(mu), factorial(static_cast<unsigned>(k)));
    }
  }
}

TEST(Convolution, ClassRouteMatchesDenseSum) {
  std::mt19937 gen(1);
  for (int k = 2; k <= 4; ++k) {
    const ClassFunction f = random_class_function(k, gen);
    const ClassFunction g = random_class_function(k, gen);
    EXPECT_EQ(GroupFunction::from(convolve(f, g)), convolve(GroupFunction::from(f), GroupFunction::from(g))) << "k=" << k;
  }
}

TEST(Convolution, StarProductExampleOnS4) {
  std::mt19937 gen(2);
  const GroupFunction f1 = random_group_function(4, gen);
  const GroupFunction f2 = random_group_function(4, gen);
  const GroupFunction star = convolve_star(f1, f2);
  auto F1 = [&](std::vector<int> v) { return f1.at(one_based(v)); };
  auto F2 = [&](std::vector<int> v) { return f2.at(one_based(v)); };
  EXPECT_EQ(star.at(one_based({1, 2, 3, 4})),
            Rational(F1({1, 2, 3, 4}) * F2({1, 2, 3, 4}) + F1({1, 3, 2, 4}) * F2({1, 3, 2, 4}) + F1({1, 4, 2, 3}) * F2({1, 3, 4, 2})));
  EXPECT_EQ(star.at(one_based({1, 3, 2, 4})),
            Rational(F1({1, 2, 3, 4}) * F2({1, 3, 2, 4}) + F1({1, 3, 2, 4}) * F2({1, 2, 3, 4}) + F1({1, 4, 2, 3}) * F2({1, 4, 3, 2})));
  EXPECT_EQ(star.at(one_based({1, 4, 2, 3})),
            Rational(F1({1, 2, 3, 4}) * F2({1, 4, 2, 3}) + F1({1, 3, 2, 4}) * F2({1, 4, 3, 2}) + F1({1, 4, 2, 3}) * F2({1, 2, 3, 4})));
}

TEST(CosetFunctions, CovarianceOfStoredTables) {
  std::mt19937 gen(3);
  for (int k = 1; k <= 2; ++k) {
    const auto h = hyperoctahedral_elements(k);
    for (Twist t : {Twist::none(), Twist::both(), Twist::left_only(), Twist::right_only()}) {
      const CosetFunction f = random_coset_function(k, t, gen);
      const GroupFunction dense = GroupFunction::from(f);
      for_each_permutation(2 * k, [&](const Permutation& s) {
        for (const auto& z : h)
          for (const auto& zp : h) {
            Rational expected = dense.at(s);
            if (t.left && z.signature() < 0) expected = -expected;
            if (t.right && zp.signature() < 0) expected = -expected;
            ASSERT_EQ(dense.at(z * s * zp), expected) << to_string(t);
          }
      });
      for (const auto& mu : partitions_of(k)) EXPECT_EQ(f.at(sigma_mu(mu)), f.at(mu));
    }
  }
}

// A one-sided twist is consistent on the double coset of σ_μ iff no stabilizing
// pair (ζ, ζ') has ε(ζ) = -1.
TEST(CosetFunctions, ForcedZerosMatchStabilizers) {
  for (int k = 1; k <= 3; ++k) {
    const auto h = hyperoctahedral_elements(k);
    for (const auto& mu : partitions_of(k)) {
      const Permutation s = sigma_mu(mu);
      bool odd_stabilizer = false;
      for (const auto& z : h) {
        const Permutation zp = s.inverse() * z.inverse() * s;
        if (is_in_hyperoctahedral(zp) && z.signature() < 0) odd_stabilizer = true;
      }
      EXPECT_EQ(twist_forces_zero(mu, Twist::left_only()), odd_stabilizer) << to_string(mu);
      EXPECT_EQ(twist_forces_zero(mu, Twist::right_only()), odd_stabilizer);
      EXPECT_FALSE(twist_forces_zero(mu, Twist::both()));
    }
  }
}

TEST(CosetFunctions, StarMatchesDenseForEveryTwistPairing) {
  std::mt19937 gen(4);
  const Twist twists[] = {Twist::none(), Twist::both(), Twist::left_only(), Twist::right_only()};
  for (int k = 1; k <= 3; ++k)
    for (Twist tf : twists)
      for (Twist tg : twists) {
        const CosetFunction f = random_coset_function(k, tf, gen);
        const CosetFunction g = random_coset_function(k, tg, gen);
        if (tf.right != tg.left) {
          EXPECT_THROW(convolve_star(f, g), std::invalid_argument);
          continue;
        }
        const CosetFunction fg = convolve_star(f, g);
        EXPECT_EQ(fg.twist, (Twist{tf.left, tg.right}));
        const GroupFunction dense = convolve_star(GroupFunction::from(f), GroupFunction::from(g));
        EXPECT_EQ(GroupFunction::from(fg), dense) << "k=" << k << " " << to_string(tf) << " then " << to_string(tg);
        if (k <= 2) {
          const GroupFunction full = convolve(GroupFunction::from(f), GroupFunction::from(g));
          EXPECT_EQ(GroupFunction::from(convolve(f, g)), full);
        }
      }
}

TEST(CosetFunctions, IdentityElementsAndEpsilonTwist) {
  std::mt19937 gen(5);
  for (int k = 1; k <= 3; ++k) {
    const CosetFunction f = random_coset_function(k, Twist::none(), gen);
    const CosetFunction g = random_coset_function(k, Twist::none(), gen);
    EXPECT_EQ(convolve_star(hyperoctahedral_indicator(k, false), f), f);
    const CosetFunction ft = epsilon_twist(f);
    EXPECT_EQ(convolve_star(hyperoctahedral_indicator(k, true), ft), ft);
    EXPECT_EQ(epsilon_twist(convolve_star(f, g)), convolve_star(ft, epsilon_twist(g)));
    for_each_permutation(2 * k, [&](const Permutation& s) { EXPECT_EQ(ft.at(s), Rational(s.signature() * f.at(s))); });
  }
}

TEST(SphericalFunctions, DefinitionsByDirectSum) {
  for (int k = 1; k <= 3; ++k) {
    const auto h = hyperoctahedral_elements(k);
    const Rational order(static_cast<long>(h.size()));
    for (const auto& lambda : partitions_of(k))
      for (const auto& mu : partitions_of(k)) {
        const Permutation s = sigma_mu(mu);
        Rational omega(0), pi(0);
        for (const auto& z : h) {
          omega += character(lambda.doubled(), cycle_type(s * z));
          pi += z.signature() * character(lambda.self_union(), cycle_type(s * z));
        }
        EXPECT_EQ(zonal_spherical(lambda, mu), omega / order);
        EXPECT_EQ(twisted_spherical(lambda, mu), pi / order) << to_string(lambda) << " at " << to_string(mu);
      }
  }
}

TEST(SphericalFunctions, Orthogonality) {
  for (int k = 1; k <= 3; ++k) {
    const Rational scale = Rational(factorial(static_cast<unsigned>(2 * k))) / Rational(hyperoctahedral_order(k));
    for (const auto& l1 : partitions_of(k))
      for (const auto& l2 : partitions_of(k)) {
        const CosetFunction w = convolve_star(zonal_spherical_function(l1), zonal_spherical_function(l2));
        const CosetFunction p = convolve_star(twisted_spherical_function(l1), twisted_spherical_function(l2));
        CosetFunction w_expected = zonal_spherical_function(l1);
        CosetFunction p_expected = twisted_spherical_function(l1);
        for (auto& [mu, v] : w_expected.values) v = l1 == l2 ? Rational(v * scale / Rational(dimension(l1.doubled()))) : Rational(0);
        for (auto& [mu, v] : p_expected.values) v = l1 == l2 ? Rational(v * scale / Rational(dimension(l1.self_union()))) : Rational(0);
        EXPECT_EQ(w, w_expected);
        EXPECT_EQ(p, p_expected);
      }
  }
}

TEST(SymmetricFunctions, SchurAtSignedOnes) {
  for (int k = 1; k <= 3; ++k)
    for (const auto& lambda : partitions_of(k))
      for (auto [a, b] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 1}, {1, 2}, {3, 2}})
        EXPECT_EQ(schur_eval_signed(lambda, a, b), schur_by_tableaux(lambda, a, b)) << to_string(lambda) << " a=" << a << " b=" << b;
  EXPECT_EQ(power_sum_signed(Partition({2, 1}), 3, 1), Rational(4 * 2));
}

TEST(SymmetricFunctions, ZonalAtOnesGivesContentProducts) {
  for (int k = 1; k <= 4; ++k)
    for (const auto& lambda : partitions_of(k))
      for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(zonal_eval_signed(lambda, n, 0), d_poly(lambda, n)) << to_string(lambda) << " n=" << n;
        EXPECT_EQ(twisted_zonal_eval_signed(lambda, n, 0), dprime_poly(lambda, n)) << to_string(lambda) << " n=" << n;
      }
}
