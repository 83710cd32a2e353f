#pragma once

// Content polynomials C_λ, D_λ, D'_λ; the T-functions of every ensemble class;
// and the ten Weingarten functions, evaluated exactly at rational parameters.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wgcalc/charalg.hpp"
#include "wgcalc/rational.hpp"
#include "wgcalc/symgroup.hpp"

namespace wgcalc {

// ---------------------------------------------------------------------------
// Ensemble classes

enum class Ensemble { U, O, Sp, AI, AII, AIII, BDI, CII, DIII, CI };

inline constexpr Ensemble kAllEnsembles[] = {Ensemble::U,    Ensemble::O,   Ensemble::Sp,  Ensemble::AI,   Ensemble::AII,
                                             Ensemble::AIII, Ensemble::BDI, Ensemble::CII, Ensemble::DIII, Ensemble::CI};

inline std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::U: return "U";
    case Ensemble::O: return "O";
    case Ensemble::Sp: return "Sp";
    case Ensemble::AI: return "AI";
    case Ensemble::AII: return "AII";
    case Ensemble::AIII: return "AIII";
    case Ensemble::BDI: return "BDI";
    case Ensemble::CII: return "CII";
    case Ensemble::DIII: return "DIII";
    case Ensemble::CI: return "CI";
  }
  return "?";
}

inline Ensemble parse_ensemble(std::string_view s) {
  for (Ensemble e : kAllEnsembles)
    if (to_string(e) == s) return e;
  throw std::invalid_argument("unknown class '" + std::string(s) + "' (expected U, O, Sp, AI, AII, AIII, BDI, CII, DIII, CI)");
}

inline bool is_chiral(Ensemble e) { return e == Ensemble::AIII || e == Ensemble::BDI || e == Ensemble::CII; }

// Weingarten function lives on S_k (class function) rather than S_{2k}.
inline bool lives_on_sk(Ensemble e) { return e == Ensemble::U || e == Ensemble::AIII; }

struct EnsembleClass {
  Ensemble tag = Ensemble::U;
  Rational n{1};  // dimension parameter; a + b for the chiral classes
  int a = 0;
  int b = 0;

  static EnsembleClass make(Ensemble tag, const Rational& n) {
    EnsembleClass c{tag, n, 0, 0};
    c.validate();
    return c;
  }
  static EnsembleClass make(Ensemble tag, long n) { return make(tag, Rational(n)); }
  static EnsembleClass chiral(Ensemble tag, int a, int b) {
    EnsembleClass c{tag, Rational(a + b), a, b};
    c.validate();
    return c;
  }

  void validate() const {
    if (is_chiral(tag)) {
      if (!(a >= b && b >= 1)) throw std::invalid_argument(to_string(tag) + " requires a >= b >= 1");
      if (n != a + b) throw std::invalid_argument(to_string(tag) + " requires n = a + b");
    } else if (n < 1) {
      throw std::invalid_argument(to_string(tag) + " requires n >= 1");
    }
  }

  std::string key() const {
    std::string out = to_string(tag);
    if (is_chiral(tag))
      out += "_a" + std::to_string(a) + "_b" + std::to_string(b);
    else
      out += "_n" + to_string(n);
    return out;
  }

  friend bool operator==(const EnsembleClass&, const EnsembleClass&) = default;
};

// ---------------------------------------------------------------------------
// Content polynomials

// C_λ(z) = ∏_{(i,j) ∈ λ} (z + j - i)
inline Rational c_poly(const Partition& lambda, const Rational& z) {
  Rational out(1);
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j) out *= z + (j - i);
  return out;
}

// D_λ(z) = ∏ (z + 2j - i - 1)
inline Rational d_poly(const Partition& lambda, const Rational& z) {
  Rational out(1);
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j) out *= z + (2 * j - i - 1);
  return out;
}

// D'_λ(z) = ∏ (2z - 2i + j + 1)
inline Rational dprime_poly(const Partition& lambda, const Rational& z) {
  Rational out(1);
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j) out *= 2 * z + (-2 * i + j + 1);
  return out;
}

// ---------------------------------------------------------------------------
// T-functions, as tables on representatives

inline ClassFunction t_unitary(int k, const Rational& z) {
  ClassFunction f = ClassFunction::zero(k);
  for (auto& [mu, v] : f.values) v = pow(z, static_cast<unsigned>(mu.length()));
  return f;
}

inline CosetFunction t_orthogonal(int k, const Rational& z) {
  CosetFunction f = CosetFunction::zero(k, Twist::none());
  for (auto& [mu, v] : f.values) v = pow(z, static_cast<unsigned>(mu.length()));
  return f;
}

// T^Sp(σ; z) = (-1)^k ε(σ) (-2z)^{ℓ(μ)}
inline CosetFunction t_symplectic(int k, const Rational& z) {
  CosetFunction f = CosetFunction::zero(k, Twist::both());
  for (auto& [mu, v] : f.values) {
    v = pow(Rational(-2 * z), static_cast<unsigned>(mu.length()));
    if (k % 2 != 0) v = -v;
  }
  return f;
}

namespace detail {
inline Rational chiral_weight(const Partition& mu, int a, int b) {
  return pow(Rational(a + b), static_cast<unsigned>(mu.even_parts())) * pow(Rational(a - b), static_cast<unsigned>(mu.odd_parts()));
}
}  // namespace detail

// T^{AIII}(σ) = (a+b)^{ℓe(μ)} (a-b)^{ℓo(μ)}, μ the cycle-type.
inline ClassFunction t_chiral_unitary(int k, int a, int b) {
  ClassFunction f = ClassFunction::zero(k);
  for (auto& [mu, v] : f.values) v = detail::chiral_weight(mu, a, b);
  return f;
}

// T^{BDI}: same weight on the coset-type.
inline CosetFunction t_chiral_orthogonal(int k, int a, int b) {
  CosetFunction f = CosetFunction::zero(k, Twist::none());
  for (auto& [mu, v] : f.values) v = detail::chiral_weight(mu, a, b);
  return f;
}

// T^{CII}(σ_μ) = (-1)^{k-ℓ(μ)} 2^{ℓ(μ)} (a+b)^{ℓe} (a-b)^{ℓo}
inline CosetFunction t_chiral_symplectic(int k, int a, int b) {
  CosetFunction f = CosetFunction::zero(k, Twist::both());
  for (auto& [mu, v] : f.values) {
    v = detail::chiral_weight(mu, a, b) * pow(Rational(2), static_cast<unsigned>(mu.length()));
    if ((k - mu.length()) % 2 != 0) v = -v;
  }
  return f;
}

// T^{DIII}(σ_μ) = ∏_i Tr(J^{μ_i}) = (-1)^{k/2} (2n)^{ℓ(μ)} for even μ, else 0.
// Left ε-covariant, right invariant.
inline CosetFunction t_bdg_orthogonal(int k, const Rational& n) {
  CosetFunction f = CosetFunction::zero(k, Twist::left_only());
  for (auto& [mu, v] : f.values) {
    if (!mu.is_even()) continue;
    v = pow(Rational(2 * n), static_cast<unsigned>(mu.length()));
    if ((k / 2) % 2 != 0) v = -v;
  }
  return f;
}

// T^{CI}(σ_μ) = (-2n)^{ℓ(μ)} for even μ, else 0. Left invariant, right ε-covariant.
inline CosetFunction t_bdg_symplectic(int k, const Rational& n) {
  CosetFunction f = CosetFunction::zero(k, Twist::right_only());
  for (auto& [mu, v] : f.values)
    if (mu.is_even()) v = pow(Rational(-2 * n), static_cast<unsigned>(mu.length()));
  return f;
}

// Pointwise T^C(σ). σ ∈ S_k for U and AIII, σ ∈ S_{2k} otherwise. AI and AII use
// the T-function of their underlying theorem (T^O(·;n) and T^Sp(·;n)).
inline Rational t_function(const EnsembleClass& cls, const Permutation& sigma) {
  cls.validate();
  if (lives_on_sk(cls.tag)) {
    const int k = sigma.size();
    return cls.tag == Ensemble::U ? t_unitary(k, cls.n).at(sigma) : t_chiral_unitary(k, cls.a, cls.b).at(sigma);
  }
  if (sigma.size() % 2 != 0) throw std::invalid_argument(to_string(cls.tag) + " T-function lives on S_{2k}");
  const int k = sigma.size() / 2;
  switch (cls.tag) {
    case Ensemble::O:
    case Ensemble::AI: return t_orthogonal(k, cls.n).at(sigma);
    case Ensemble::Sp:
    case Ensemble::AII: return t_symplectic(k, cls.n).at(sigma);
    case Ensemble::BDI: return t_chiral_orthogonal(k, cls.a, cls.b).at(sigma);
    case Ensemble::CII: return t_chiral_symplectic(k, cls.a, cls.b).at(sigma);
    case Ensemble::DIII: return t_bdg_orthogonal(k, cls.n).at(sigma);
    case Ensemble::CI: return t_bdg_symplectic(k, cls.n).at(sigma);
    default: break;
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Weingarten functions

// Wg^U(·; z) = (1/k!) Σ_{C_λ(z) ≠ 0} f^λ / C_λ(z) χ^λ
inline ClassFunction wg_unitary(int k, const Rational& z, std::vector<Partition>* poles = nullptr) {
  ClassFunction f = ClassFunction::zero(k);
  const Rational kfact(factorial(static_cast<unsigned>(k)));
  for (const auto& lambda : partitions_of(k)) {
    const Rational c = c_poly(lambda, z);
    if (c == 0) {
      if (poles) poles->push_back(lambda);
      continue;
    }
    const Rational coef = Rational(dimension(lambda)) / (kfact * c);
    for (auto& [mu, v] : f.values) v += coef * character(lambda, mu);
  }
  return f;
}

// Wg^O(·; z) = (2^k k!/(2k)!) Σ_{D_λ(z) ≠ 0} f^{2λ} / D_λ(z) ω^λ
inline CosetFunction wg_orthogonal(int k, const Rational& z, std::vector<Partition>* poles = nullptr) {
  CosetFunction f = CosetFunction::zero(k, Twist::none());
  const Rational scale = Rational(hyperoctahedral_order(k)) / Rational(factorial(static_cast<unsigned>(2 * k)));
  for (const auto& lambda : partitions_of(k)) {
    const Rational d = d_poly(lambda, z);
    if (d == 0) {
      if (poles) poles->push_back(lambda);
      continue;
    }
    const Rational coef = scale * Rational(dimension(lambda.doubled())) / d;
    for (auto& [mu, v] : f.values) v += coef * zonal_spherical(lambda, mu);
  }
  return f;
}

// Wg^Sp(·; z) = (2^k k!/(2k)!) Σ_{D'_λ(z) ≠ 0} f^{λ∪λ} / D'_λ(z) π^λ
inline CosetFunction wg_symplectic(int k, const Rational& z, std::vector<Partition>* poles = nullptr) {
  CosetFunction f = CosetFunction::zero(k, Twist::both());
  const Rational scale = Rational(hyperoctahedral_order(k)) / Rational(factorial(static_cast<unsigned>(2 * k)));
  for (const auto& lambda : partitions_of(k)) {
    const Rational d = dprime_poly(lambda, z);
    if (d == 0) {
      if (poles) poles->push_back(lambda);
      continue;
    }
    const Rational coef = scale * Rational(dimension(lambda.self_union())) / d;
    for (auto& [mu, v] : f.values) v += coef * twisted_spherical(lambda, mu);
  }
  return f;
}

namespace detail {

// Polynomials in z, lowest degree first.
using Poly = std::vector<Rational>;

inline Rational poly_eval(const Poly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

// p(z) / (z - r) for p(r) = 0.
inline Poly poly_deflate(const Poly& p, const Rational& r) {
  Poly q(p.size() - 1);
  Rational carry(0);
  for (std::size_t d = p.size() - 1; d-- > 0;) {
    carry = carry * r + p[d + 1];
    q[d] = carry;
  }
  return q;
}

// lim_{z → at} num(z) / den(z); den is a nonzero polynomial.
inline Rational limit_ratio(Poly num, Poly den, const Rational& at) {
  if (std::all_of(num.begin(), num.end(), [](const Rational& c) { return c == 0; })) return Rational(0);
  while (poly_eval(den, at) == 0) {
    if (poly_eval(num, at) != 0) throw std::domain_error("unitary route has a genuine pole at z=" + to_string(at));
    num = poly_deflate(num, at);
    den = poly_deflate(den, at);
  }
  return poly_eval(num, at) / poly_eval(den, at);
}

inline Poly c_polynomial(const Partition& lambda) {
  Poly p{Rational(1)};
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j) {
      Poly next(p.size() + 1, Rational(0));
      for (std::size_t d = 0; d < p.size(); ++d) {
        next[d] += p[d] * (j - i);
        next[d + 1] += p[d];
      }
      p = std::move(next);
    }
  return p;
}

}  // namespace detail

inline constexpr int kUnitaryRouteCap = 3;

// Wg^{AI}(·;n) as T^O(·;n) ∗ Wg^U(·;n), or Wg^{AII}(·;n) as T^Sp(·;n) ∗ Wg^U(·;2n),
// formed in the unitary parameter z. Isotypic terms whose C_λ(z) vanishes at the
// parameter are taken as limits rather than dropped.
inline CosetFunction wg_via_unitary(Ensemble e, int k, const Rational& n) {
  if (e != Ensemble::AI && e != Ensemble::AII) throw std::invalid_argument("unitary route exists for AI and AII only");
  if (k < 1 || k > kUnitaryRouteCap) throw std::out_of_range("unitary route needs 1 <= k <= " + std::to_string(kUnitaryRouteCap));
  const bool sp = e == Ensemble::AII;
  const int m = 2 * k;
  const Rational z0 = sp ? Rational(2 * n) : n;
  const auto lambdas = partitions_of(m);
  const Rational mfact(factorial(static_cast<unsigned>(m)));

  // T(τ; z) = sign(τ) z^{ℓ(τ)}, ℓ the coset-type length.
  struct Term {
    Permutation tau;
    int sign;
    int ell;
  };
  std::vector<Term> terms;
  for_each_permutation(m, [&](const Permutation& tau) {
    const int ell = coset_type(tau).length();
    int sign = 1;
    if (sp) sign = ((k + ell) % 2 == 0 ? 1 : -1) * tau.signature();
    terms.push_back({tau, sign, ell});
  });

  CosetFunction out = CosetFunction::zero(k, sp ? Twist::both() : Twist::none());
  for (auto& [mu, value] : out.values) {
    const Permutation sigma = sigma_mu(mu);
    std::vector<detail::Poly> num(lambdas.size(), detail::Poly(static_cast<std::size_t>(k + 1), Rational(0)));
    for (const auto& t : terms) {
      const Partition nu = cycle_type(t.tau.inverse() * sigma);
      for (std::size_t l = 0; l < lambdas.size(); ++l) num[l][static_cast<std::size_t>(t.ell)] += t.sign * character_int(lambdas[l], nu);
    }
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      const Rational scale = Rational(dimension(lambdas[l])) / mfact;
      for (auto& c : num[l]) c *= scale;
      value += detail::limit_ratio(num[l], detail::c_polynomial(lambdas[l]), z0);
    }
  }
  return out;
}

struct WgEvaluation {
  EnsembleClass cls;
  int k = 0;
  std::variant<ClassFunction, CosetFunction> values;
  // Partitions whose spectral denominator vanished at this parameter.
  std::vector<Partition> pole_report;

  bool is_class_function() const { return std::holds_alternative<ClassFunction>(values); }
  const ClassFunction& class_function() const { return std::get<ClassFunction>(values); }
  const CosetFunction& coset_function() const { return std::get<CosetFunction>(values); }

  Rational at(const Permutation& sigma) const {
    return is_class_function() ? class_function().at(sigma) : coset_function().at(sigma);
  }
  // Value at the representative of a cycle-type (S_k classes) or coset-type.
  const Rational& at(const Partition& mu) const {
    return is_class_function() ? class_function().at(mu) : coset_function().at(mu);
  }
};

namespace detail {

inline WgEvaluation compute_wg(const EnsembleClass& cls, int k) {
  WgEvaluation out{cls, k, ClassFunction{}, {}};
  auto* poles = &out.pole_report;
  const Rational& n = cls.n;
  switch (cls.tag) {
    case Ensemble::U: out.values = wg_unitary(k, n, poles); break;
    case Ensemble::O: out.values = wg_orthogonal(k, n, poles); break;
    case Ensemble::Sp: out.values = wg_symplectic(k, n, poles); break;
    case Ensemble::AI: out.values = wg_orthogonal(k, n + 1, poles); break;
    case Ensemble::AII: out.values = wg_symplectic(k, n - Rational(1, 2), poles); break;
    case Ensemble::AIII: out.values = convolve(t_chiral_unitary(k, cls.a, cls.b), wg_unitary(k, n, poles)); break;
    case Ensemble::BDI: out.values = convolve_star(t_chiral_orthogonal(k, cls.a, cls.b), wg_orthogonal(k, n, poles)); break;
    case Ensemble::CII: out.values = convolve_star(t_chiral_symplectic(k, cls.a, cls.b), wg_symplectic(k, n, poles)); break;
    case Ensemble::DIII: out.values = convolve_star(t_bdg_orthogonal(k, n), wg_orthogonal(k, 2 * n, poles)); break;
    case Ensemble::CI: out.values = convolve_star(t_bdg_symplectic(k, n), wg_symplectic(k, n, poles)); break;
  }
  return out;
}

}  // namespace detail

inline constexpr int kMaxWgDegree = 6;

// Wg^C(·; params) for degree k (permutations of S_k for U/AIII, S_{2k} otherwise).
// Results are memoized per (class, k, parameters).
inline std::shared_ptr<const WgEvaluation> wg_function(const EnsembleClass& cls, int k) {
  cls.validate();
  if (k < 1) throw std::invalid_argument("Weingarten degree must be >= 1");
  const int cap = lives_on_sk(cls.tag) ? 2 * kMaxWgDegree : kMaxWgDegree;
  if (k > cap) throw std::out_of_range("k=" + std::to_string(k) + " exceeds the cap " + std::to_string(cap) + " for class " + to_string(cls.tag));

  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const WgEvaluation>> cache;
  const std::string key = cls.key() + "_k" + std::to_string(k);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto value = std::make_shared<const WgEvaluation>(detail::compute_wg(cls, k));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(value)).first->second;
}

}  // namespace wgcalc
