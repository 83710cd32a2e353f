#pragma once

// Characters of S_k, zonal and twisted spherical functions of (S_{2k}, H_k),
// the group-algebra products * and ⋆, and the signed evaluations of Schur,
// zonal and twisted zonal polynomials at (1^a, (-1)^b).
//
// Functions that are (twisted) H_k-biinvariant are stored on the coset-type
// representatives σ_μ only; class functions on cycle-types only. A dense table
// over all of S_m exists for small m and serves as the brute-force reference.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wgcalc/matrix.hpp"
#include "wgcalc/rational.hpp"
#include "wgcalc/symgroup.hpp"

namespace wgcalc {

// ---------------------------------------------------------------------------
// Dimensions and characters

// f^λ by the hook length formula.
inline Integer dimension(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  Integer hooks(1);
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j) {
      const int arm = lambda[static_cast<std::size_t>(i)] - j - 1;
      const int leg = conj[static_cast<std::size_t>(j)] - i - 1;
      hooks *= arm + leg + 1;
    }
  return Integer(factorial(static_cast<unsigned>(lambda.weight())) / hooks);
}

// z_μ = ∏ i^{m_i} m_i!
inline Integer centralizer_order(const Partition& mu) {
  Integer z(1);
  const auto mult = mu.multiplicities();
  for (std::size_t i = 1; i < mult.size(); ++i) {
    for (int r = 0; r < mult[i]; ++r) z *= static_cast<unsigned long>(i);
    z *= factorial(static_cast<unsigned>(mult[i]));
  }
  return z;
}

inline Integer class_size(const Partition& mu) {
  return Integer(factorial(static_cast<unsigned>(mu.weight())) / centralizer_order(mu));
}

namespace detail {

class CharacterCache {
 public:
  using Key = std::pair<std::vector<int>, std::vector<int>>;

  bool lookup(const Key& key, std::int64_t& out) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(Key key, std::int64_t value) {
    std::lock_guard lock(mutex_);
    table_.emplace(std::move(key), value);
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::int64_t> table_;
};

inline CharacterCache& character_cache() {
  static CharacterCache cache;
  return cache;
}

// Murnaghan–Nakayama on beta-sets: removing a rim hook of length r moves one
// bead from β to β - r; the sign counts the beads jumped over.
inline std::int64_t mn_character(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from) {
  if (from == mu.size()) return lambda.empty() ? 1 : 0;
  CharacterCache::Key key{lambda, std::vector<int>(mu.begin() + static_cast<std::ptrdiff_t>(from), mu.end())};
  std::int64_t cached = 0;
  if (character_cache().lookup(key, cached)) return cached;

  const int r = mu[from];
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;

  std::int64_t total = 0;
  for (int i = 0; i < len; ++i) {
    const int target = beta[static_cast<std::size_t>(i)] - r;
    if (target < 0) continue;
    bool occupied = false;
    int jumped = 0;
    for (int j = 0; j < len; ++j) {
      if (beta[static_cast<std::size_t>(j)] == target) occupied = true;
      if (beta[static_cast<std::size_t>(j)] > target && beta[static_cast<std::size_t>(j)] < beta[static_cast<std::size_t>(i)]) ++jumped;
    }
    if (occupied) continue;
    std::vector<int> nb(beta);
    nb[static_cast<std::size_t>(i)] = target;
    std::sort(nb.begin(), nb.end(), std::greater<>());
    std::vector<int> reduced;
    for (int j = 0; j < len; ++j) {
      const int part = nb[static_cast<std::size_t>(j)] - (len - 1 - j);
      if (part > 0) reduced.push_back(part);
    }
    const std::int64_t sub = mn_character(reduced, mu, from + 1);
    total += (jumped % 2 == 0) ? sub : -sub;
  }
  character_cache().insert(std::move(key), total);
  return total;
}

}  // namespace detail

// χ^λ evaluated on the class of cycle-type μ.
inline std::int64_t character_int(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight())
    throw std::invalid_argument("character: |lambda|=" + std::to_string(lambda.weight()) + " but |mu|=" + std::to_string(mu.weight()));
  return detail::mn_character(lambda.parts(), mu.parts(), 0);
}

inline Rational character(const Partition& lambda, const Partition& mu) {
  return Rational(static_cast<long>(character_int(lambda, mu)));
}

// ---------------------------------------------------------------------------
// Function containers

// Central function on S_k stored by cycle-type.
struct ClassFunction {
  int k = 0;
  std::map<Partition, Rational> values;

  static ClassFunction zero(int k) {
    ClassFunction f{k, {}};
    for (const auto& mu : partitions_of(k)) f.values.emplace(mu, Rational(0));
    return f;
  }

  const Rational& at(const Partition& mu) const {
    auto it = values.find(mu);
    if (it == values.end()) throw std::out_of_range("class function has no value at " + to_string(mu));
    return it->second;
  }
  const Rational& at(const Permutation& p) const { return at(cycle_type(p)); }

  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
};

// Covariance of a function on S_{2k} under H_k × H_k:
// f(ζ σ ζ') = s_L(ζ) f(σ) s_R(ζ'), s = ε when twisted, 1 otherwise.
struct Twist {
  bool left = false;
  bool right = false;

  static constexpr Twist none() { return {false, false}; }
  static constexpr Twist both() { return {true, true}; }
  static constexpr Twist left_only() { return {true, false}; }
  static constexpr Twist right_only() { return {false, true}; }

  friend bool operator==(const Twist&, const Twist&) = default;
};

inline std::string to_string(Twist t) {
  if (t.left && t.right) return "both-sides";
  if (t.left) return "left-only";
  if (t.right) return "right-only";
  return "none";
}

// A one-sided twist is inconsistent on double cosets whose stabilizer contains
// odd elements; those are exactly the non-even coset-types, where the function
// must vanish.
inline bool twist_forces_zero(const Partition& mu, Twist t) {
  return t.left != t.right && !mu.is_even();
}

// (Twisted) H_k-biinvariant function on S_{2k}, stored at σ_μ for μ ⊢ k.
struct CosetFunction {
  int k = 0;
  Twist twist;
  std::map<Partition, Rational> values;

  static CosetFunction zero(int k, Twist t) {
    CosetFunction f{k, t, {}};
    for (const auto& mu : partitions_of(k)) f.values.emplace(mu, Rational(0));
    return f;
  }

  const Rational& at(const Partition& mu) const {
    auto it = values.find(mu);
    if (it == values.end()) throw std::out_of_range("coset function has no value at " + to_string(mu));
    return it->second;
  }

  Rational at(const Permutation& p) const {
    if (p.size() != 2 * k) throw std::invalid_argument("coset function evaluated off S_{2k}");
    if (!twist.left && !twist.right) return at(coset_type(p));
    if (twist.left && twist.right) {
      Rational v = at(coset_type(p));
      if (p.signature() < 0) v = -v;
      return v;
    }
    const auto red = double_coset_reduce(p);
    if (twist_forces_zero(red.mu, twist)) return Rational(0);
    Rational v = at(red.mu);
    const int sign = twist.left ? red.left_sign : red.right_sign;
    if (sign < 0) v = -v;
    return v;
  }

  friend bool operator==(const CosetFunction&, const CosetFunction&) = default;
};

// Dense table over S_m indexed by Lehmer rank. Only for small m.
struct GroupFunction {
  int m = 0;
  std::vector<Rational> values;

  static constexpr int kMaxDegree = 8;

  template <class F>
  static GroupFunction from(int m, F&& f) {
    if (m > kMaxDegree) throw std::out_of_range("dense group function above S_8");
    GroupFunction g{m, std::vector<Rational>(static_cast<std::size_t>(factorial(static_cast<unsigned>(m)).get_ui()))};
    for_each_permutation(m, [&](const Permutation& p) { g.values[permutation_rank(p)] = f(p); });
    return g;
  }
  static GroupFunction from(const ClassFunction& f) {
    return from(f.k, [&](const Permutation& p) { return f.at(p); });
  }
  static GroupFunction from(const CosetFunction& f) {
    return from(2 * f.k, [&](const Permutation& p) { return f.at(p); });
  }
  static GroupFunction delta_identity(int m) {
    return from(m, [](const Permutation& p) { return Rational(p.is_identity() ? 1 : 0); });
  }

  const Rational& at(const Permutation& p) const { return values[permutation_rank(p)]; }

  friend bool operator==(const GroupFunction&, const GroupFunction&) = default;
};

// ---------------------------------------------------------------------------
// Products

// (f * g)(σ) = Σ_{τ ∈ S_m} f(τ) g(τ^{-1} σ), by the defining sum.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  if (f.m != g.m) throw std::invalid_argument("convolution of functions on different groups");
  std::vector<Permutation> elems;
  for_each_permutation(f.m, [&](const Permutation& p) { elems.push_back(p); });
  return GroupFunction::from(f.m, [&](const Permutation& sigma) {
    Rational acc(0);
    for (const auto& tau : elems) {
      const Rational& a = f.at(tau);
      if (a == 0) continue;
      acc += a * g.at(tau.inverse() * sigma);
    }
    return acc;
  });
}

// (f ⋆ g)(σ) = Σ_{τ ∈ M_{2k}} f(τ) g(τ^{-1} σ), by the defining sum.
inline GroupFunction convolve_star(const GroupFunction& f, const GroupFunction& g) {
  if (f.m != g.m || f.m % 2 != 0) throw std::invalid_argument("⋆ needs two functions on the same S_{2k}");
  const auto reps = enumerate_matchings(f.m / 2);
  return GroupFunction::from(f.m, [&](const Permutation& sigma) {
    Rational acc(0);
    for (const auto& tau : reps) acc += f.at(tau) * g.at(tau.inverse() * sigma);
    return acc;
  });
}

// Class functions multiply through their character expansions:
// f = Σ a_λ χ^λ with a_λ = Σ_μ f(μ) χ^λ(μ) / z_μ, and χ^λ * χ^ν = δ (k!/f^λ) χ^λ.
inline ClassFunction convolve(const ClassFunction& f, const ClassFunction& g) {
  if (f.k != g.k) throw std::invalid_argument("convolution of class functions of different degree");
  const int k = f.k;
  const auto parts = partitions_of(k);
  const Rational kfact(factorial(static_cast<unsigned>(k)));
  ClassFunction out = ClassFunction::zero(k);
  for (const auto& lambda : parts) {
    Rational a(0), b(0);
    for (const auto& mu : parts) {
      const Rational w = character(lambda, mu) / Rational(centralizer_order(mu));
      a += f.at(mu) * w;
      b += g.at(mu) * w;
    }
    if (a == 0 || b == 0) continue;
    const Rational coef = a * b * kfact / Rational(dimension(lambda));
    for (const auto& mu : parts) out.values[mu] += coef * character(lambda, mu);
  }
  return out;
}

// (f * g) for a (twisted) biinvariant f and a central g on S_{2k}, by summing
// over S_{2k}. The result keeps the covariance of f.
inline CosetFunction convolve(const CosetFunction& f, const ClassFunction& g) {
  if (g.k != 2 * f.k) throw std::invalid_argument("class function must live on S_{2k}");
  CosetFunction out = CosetFunction::zero(f.k, f.twist);
  for (auto& [mu, value] : out.values) {
    const Permutation target = sigma_mu(mu);
    Rational acc(0);
    for_each_permutation(2 * f.k, [&](const Permutation& tau) {
      Rational a = f.at(tau);
      if (a == 0) return;
      acc += a * g.at(cycle_type(tau.inverse() * target));
    });
    value = acc;
  }
  return out;
}

// (f ⋆ g) for covariant f, g: the right twist of f must match the left twist
// of g; the result carries f's left twist and g's right twist.
inline CosetFunction convolve_star(const CosetFunction& f, const CosetFunction& g) {
  if (f.k != g.k) throw std::invalid_argument("⋆ of coset functions of different k");
  if (f.twist.right != g.twist.left)
    throw std::invalid_argument("⋆ of twist-incompatible functions (" + to_string(f.twist) + " then " + to_string(g.twist) + ")");
  const Twist out_twist{f.twist.left, g.twist.right};
  const auto reps = enumerate_matchings(f.k);
  CosetFunction out = CosetFunction::zero(f.k, out_twist);
  for (auto& [mu, value] : out.values) {
    const Permutation target = sigma_mu(mu);
    Rational acc(0);
    for (const auto& tau : reps) {
      Rational a = f.at(tau);
      if (a == 0) continue;
      acc += a * g.at(tau.inverse() * target);
    }
    value = acc;
  }
  return out;
}

// (f ∗ g) = |H_k| (f ⋆ g) for covariant functions.
inline CosetFunction convolve(const CosetFunction& f, const CosetFunction& g) {
  CosetFunction out = convolve_star(f, g);
  const Rational h(Integer(Integer(1) << static_cast<unsigned>(f.k)) * factorial(static_cast<unsigned>(f.k)));
  for (auto& [mu, v] : out.values) v *= h;
  return out;
}

// Identity elements of the ⋆ algebras: 1_k and its ε-twist.
inline CosetFunction hyperoctahedral_indicator(int k, bool twisted) {
  CosetFunction f = CosetFunction::zero(k, twisted ? Twist::both() : Twist::none());
  f.values[Partition::ones(k)] = 1;
  return f;
}

// f ↦ f^ε on the stored table; maps an untwisted function to a both-sides one.
inline CosetFunction epsilon_twist(const CosetFunction& f) {
  if (f.twist.left != f.twist.right) throw std::invalid_argument("ε-twist of a one-sided function");
  CosetFunction out = f;
  out.twist = f.twist.left ? Twist::none() : Twist::both();
  return out;
}

// ---------------------------------------------------------------------------
// Spherical functions

namespace detail {

// For each coset-type μ ⊢ k: the cycle-types of σ_μ ζ over ζ ∈ H_k, with plain
// and ε(ζ)-signed multiplicities.
struct HyperoctahedralProfile {
  struct Counts {
    std::int64_t plain = 0;
    std::int64_t signed_ = 0;
  };
  std::map<Partition, std::map<Partition, Counts>> by_coset_type;
};

inline const HyperoctahedralProfile& hyperoctahedral_profile(int k) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const HyperoctahedralProfile>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return *it->second;
  }
  auto prof = std::make_shared<HyperoctahedralProfile>();
  const auto h = hyperoctahedral_elements(k);
  for (const auto& mu : partitions_of(k)) {
    const Permutation s = sigma_mu(mu);
    auto& row = prof->by_coset_type[mu];
    for (const auto& zeta : h) {
      auto& c = row[cycle_type(s * zeta)];
      ++c.plain;
      c.signed_ += zeta.signature();
    }
  }
  std::lock_guard lock(mutex);
  return *cache.emplace(k, std::move(prof)).first->second;
}

}  // namespace detail

inline Integer hyperoctahedral_order(int k) {
  return Integer(Integer(1) << static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k));
}

// ω^λ(σ_μ) = |H_k|^{-1} Σ_{ζ ∈ H_k} χ^{2λ}(σ_μ ζ)
inline Rational zonal_spherical(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) throw std::invalid_argument("zonal spherical: |lambda| != |mu|");
  const int k = mu.weight();
  const Partition two_lambda = lambda.doubled();
  Rational acc(0);
  for (const auto& [rho, counts] : detail::hyperoctahedral_profile(k).by_coset_type.at(mu))
    acc += Rational(static_cast<long>(counts.plain)) * character(two_lambda, rho);
  return acc / Rational(hyperoctahedral_order(k));
}

// π^λ(σ_μ) = ω^{λ'}(σ_μ); elsewhere π^λ follows the both-sides ε-twist.
inline Rational twisted_spherical(const Partition& lambda, const Partition& mu) {
  return zonal_spherical(lambda.conjugate(), mu);
}

inline CosetFunction zonal_spherical_function(const Partition& lambda) {
  CosetFunction f = CosetFunction::zero(lambda.weight(), Twist::none());
  for (auto& [mu, v] : f.values) v = zonal_spherical(lambda, mu);
  return f;
}

inline CosetFunction twisted_spherical_function(const Partition& lambda) {
  CosetFunction f = CosetFunction::zero(lambda.weight(), Twist::both());
  for (auto& [mu, v] : f.values) v = twisted_spherical(lambda, mu);
  return f;
}

inline ClassFunction character_function(const Partition& lambda) {
  ClassFunction f = ClassFunction::zero(lambda.weight());
  for (auto& [mu, v] : f.values) v = character(lambda, mu);
  return f;
}

// ---------------------------------------------------------------------------
// Signed evaluations at (1^a, (-1)^b)

// p_μ(1^a, (-1)^b) = ∏_i (a + (-1)^{μ_i} b)
inline Rational power_sum_signed(const Partition& mu, const Rational& a, const Rational& b) {
  Rational out(1);
  for (int part : mu.parts()) out *= (part % 2 == 0) ? Rational(a + b) : Rational(a - b);
  return out;
}

// s_λ = Σ_μ z_μ^{-1} χ^λ(μ) p_μ
inline Rational schur_eval_signed(const Partition& lambda, const Rational& a, const Rational& b) {
  Rational acc(0);
  for (const auto& mu : partitions_of(lambda.weight()))
    acc += character(lambda, mu) * power_sum_signed(mu, a, b) / Rational(centralizer_order(mu));
  return acc;
}

namespace detail {

// Inverse of the transition matrix p_μ = Σ_λ A[μ][λ] Y_λ, cached per (k, kind).
inline const RationalMatrix& expansion_inverse(int k, bool twisted) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, std::shared_ptr<const RationalMatrix>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({k, twisted});
    if (it != cache.end()) return *it->second;
  }
  const auto parts = partitions_of(k);
  const std::size_t n = parts.size();
  const Rational c = Rational(hyperoctahedral_order(k)) / Rational(factorial(static_cast<unsigned>(2 * k)));
  RationalMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Partition& mu = parts[r];
    Rational row_scale = c;
    if (twisted) {
      if ((k - mu.length()) % 2 != 0) row_scale = -row_scale;
      row_scale /= Rational(Integer(Integer(1) << static_cast<unsigned>(mu.length())));
    }
    for (std::size_t col = 0; col < n; ++col) {
      const Partition& lambda = parts[col];
      if (twisted)
        a(r, col) = row_scale * Rational(dimension(lambda.self_union())) * twisted_spherical(lambda, mu);
      else
        a(r, col) = row_scale * Rational(dimension(lambda.doubled())) * zonal_spherical(lambda, mu);
    }
  }
  auto inv = std::make_shared<const RationalMatrix>(a.inverse());
  std::lock_guard lock(mutex);
  return *cache.emplace(std::make_pair(k, twisted), std::move(inv)).first->second;
}

inline Rational expansion_eval(const Partition& lambda, const Rational& a, const Rational& b, bool twisted) {
  const int k = lambda.weight();
  const auto parts = partitions_of(k);
  const auto& inv = expansion_inverse(k, twisted);
  std::size_t row = 0;
  while (parts[row] != lambda) ++row;
  Rational acc(0);
  for (std::size_t col = 0; col < parts.size(); ++col) acc += inv(row, col) * power_sum_signed(parts[col], a, b);
  return acc;
}

}  // namespace detail

// Z_λ at (1^a, (-1)^b), from p_μ = (2^k k!/(2k)!) Σ_λ f^{2λ} ω^λ(σ_μ) Z_λ.
inline Rational zonal_eval_signed(const Partition& lambda, const Rational& a, const Rational& b) {
  return detail::expansion_eval(lambda, a, b, false);
}

// Z'_λ at (1^a, (-1)^b), from
// p_μ = (2^k k!/(2k)!) (-1)^{k-ℓ(μ)} 2^{-ℓ(μ)} Σ_λ f^{λ∪λ} π^λ(σ_μ) Z'_λ.
inline Rational twisted_zonal_eval_signed(const Partition& lambda, const Rational& a, const Rational& b) {
  return detail::expansion_eval(lambda, a, b, true);
}

}  // namespace wgcalc
