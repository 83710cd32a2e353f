#pragma once

// Exact moments of matrix entries for every ensemble class, the δ / Δ / Δ'
// contraction symbols, and two brute-force oracles: the index contraction
// 𝒯_σ(X, Y) and the Gram-matrix pseudo-inverse over M_{2k}.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wgcalc/charalg.hpp"
#include "wgcalc/matrix.hpp"
#include "wgcalc/rational.hpp"
#include "wgcalc/symgroup.hpp"
#include "wgcalc/weingarten.hpp"

namespace wgcalc {

using IndexSpan = std::span<const int>;

// ---------------------------------------------------------------------------
// Contraction symbols. Index entries are 1-based.

// δ_σ(i, i') = ∏_s [i_{σ(s)} = i'_s]
inline int delta(const Permutation& sigma, IndexSpan i, IndexSpan i_prime) {
  if (static_cast<int>(i.size()) != sigma.size() || i_prime.size() != i.size())
    throw std::invalid_argument("delta: sequence lengths must equal the permutation degree");
  for (int s = 0; s < sigma.size(); ++s)
    if (i[static_cast<std::size_t>(sigma(s))] != i_prime[static_cast<std::size_t>(s)]) return 0;
  return 1;
}

// Δ_σ(i) = ∏_s [i_{σ(2s-1)} = i_{σ(2s)}]
inline int delta_pair(const Permutation& sigma, IndexSpan i) {
  if (static_cast<int>(i.size()) != sigma.size() || sigma.size() % 2 != 0)
    throw std::invalid_argument("delta_pair: sequence length must equal the permutation degree 2k");
  for (int r = 0; r < sigma.size(); r += 2)
    if (i[static_cast<std::size_t>(sigma(r))] != i[static_cast<std::size_t>(sigma(r + 1))]) return 0;
  return 1;
}

// ⟨i, j⟩ = ⟨e_i, e_j⟩ for the form v^T J w on C^{2n}, J = [[0, I], [-I, 0]].
struct PairingTable {
  int n = 1;

  int operator()(int i, int j) const {
    if (i < 1 || j < 1 || i > 2 * n || j > 2 * n) throw std::out_of_range("pairing index outside [2n]");
    if (i <= n && j == i + n) return 1;
    if (j <= n && i == j + n) return -1;
    return 0;
  }

  // J_n as an exact matrix.
  RationalMatrix matrix() const {
    RationalMatrix j(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
    for (int r = 1; r <= 2 * n; ++r)
      for (int c = 1; c <= 2 * n; ++c) j(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) = (*this)(r, c);
    return j;
  }
};

// Δ'_σ(i) = ∏_r ⟨i_{σ(2r-1)}, i_{σ(2r)}⟩
inline int delta_pair_symplectic(const Permutation& sigma, IndexSpan i, const PairingTable& pairing) {
  if (static_cast<int>(i.size()) != sigma.size() || sigma.size() % 2 != 0)
    throw std::invalid_argument("delta_pair_symplectic: sequence length must equal the permutation degree 2k");
  int out = 1;
  for (int r = 0; r < sigma.size() && out != 0; r += 2)
    out *= pairing(i[static_cast<std::size_t>(sigma(r))], i[static_cast<std::size_t>(sigma(r + 1))]);
  return out;
}

// X^D = J X^T J^T
inline RationalMatrix dual(const RationalMatrix& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0) throw std::invalid_argument("dual needs a 2n x 2n matrix");
  const RationalMatrix j = PairingTable{static_cast<int>(x.rows() / 2)}.matrix();
  return j * x.transpose() * j.transpose();
}

// ---------------------------------------------------------------------------
// Pruned enumerations

// All σ ∈ S_k with δ_σ(i, i') = 1.
inline std::vector<Permutation> delta_support(IndexSpan i, IndexSpan i_prime) {
  const std::size_t k = i.size();
  std::vector<Permutation> out;
  if (i_prime.size() != k) return out;
  std::vector<int> images(k);
  std::vector<char> used(k, 0);
  auto rec = [&](auto&& self, std::size_t s) -> void {
    if (s == k) {
      out.emplace_back(images);
      return;
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (used[t] || i[t] != i_prime[s]) continue;
      used[t] = 1;
      images[s] = static_cast<int>(t);
      self(self, s + 1);
      used[t] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

struct WeightedMatching {
  Permutation sigma;  // in M_{2k}
  int weight;         // Δ or Δ' value, never 0
};

// All σ ∈ M_{2k} with nonzero ∏ pair_weight(i_{σ(2r-1)}, i_{σ(2r)}).
template <class PairWeight>
std::vector<WeightedMatching> matching_support(IndexSpan i, PairWeight&& pair_weight) {
  const int m = static_cast<int>(i.size());
  std::vector<WeightedMatching> out;
  if (m % 2 != 0) return out;
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  std::vector<int> images;
  auto rec = [&](auto&& self, int weight) -> void {
    int first = 0;
    while (first < m && used[static_cast<std::size_t>(first)]) ++first;
    if (first == m) {
      out.push_back({Permutation(images), weight});
      return;
    }
    used[static_cast<std::size_t>(first)] = 1;
    for (int partner = first + 1; partner < m; ++partner) {
      if (used[static_cast<std::size_t>(partner)]) continue;
      const int w = pair_weight(i[static_cast<std::size_t>(first)], i[static_cast<std::size_t>(partner)]);
      if (w == 0) continue;
      used[static_cast<std::size_t>(partner)] = 1;
      images.push_back(first);
      images.push_back(partner);
      self(self, weight * w);
      images.resize(images.size() - 2);
      used[static_cast<std::size_t>(partner)] = 0;
    }
    used[static_cast<std::size_t>(first)] = 0;
  };
  rec(rec, 1);
  return out;
}

inline std::vector<WeightedMatching> delta_pair_support(IndexSpan i) {
  return matching_support(i, [](int a, int b) { return a == b ? 1 : 0; });
}

inline std::vector<WeightedMatching> delta_pair_symplectic_support(IndexSpan i, const PairingTable& pairing) {
  return matching_support(i, [&](int a, int b) { return pairing(a, b); });
}

// ---------------------------------------------------------------------------
// Queries

// Entry-product moment. Field use per class:
//   U           E[u_{i1 j1}..u_{ik jk} conj(u_{i'1 j'1}..u_{i'l j'l})], i'/j' in iconj/jconj
//   O, Sp       E[x_{i1 j1} .. x_{im jm}]
//   AI, AII     E[v_{i1 i2}..v_{i2k-1 i2k} conj(v_{j1 j2}..v_{j2l-1 j2l})]   (AII: tilde entries)
//   AIII        E[w_{i1 j1} .. w_{ik jk}]
//   BDI, DIII   E[w_{i1 i2} .. w_{i2k-1 i2k}]                               (DIII: tilde entries)
//   CII, CI     E[w~_{i1 i2} .. w~_{i2k-1 i2k}]
// Tilde entries are x~_{ij} = ⟨e_i, X e_j⟩ = (J X)_{ij}; see plain_to_tilde.
// For AIII/BDI/CII the matrix is W = g^* I' g, not V = I' W.
struct MomentQuery {
  EnsembleClass cls;
  std::vector<int> i;
  std::vector<int> j;
  std::vector<int> iconj;
  std::vector<int> jconj;
};

// Side length of the random matrix: n, a+b, or 2n.
inline int matrix_dimension(const EnsembleClass& cls) {
  if (!is_integer(cls.n)) throw std::invalid_argument("moments need an integer dimension parameter");
  const int n = static_cast<int>(cls.n.get_num().get_si());
  switch (cls.tag) {
    case Ensemble::Sp:
    case Ensemble::AII:
    case Ensemble::CII:
    case Ensemble::DIII:
    case Ensemble::CI: return 2 * n;
    default: return n;
  }
}

inline bool uses_tilde_entries(Ensemble e) {
  return e == Ensemble::AII || e == Ensemble::CII || e == Ensemble::DIII || e == Ensemble::CI;
}

struct EvaluatorLimits {
  int single_sum_degree = 5;  // AI, AII, AIII, BDI, CII, DIII, CI
  int double_sum_degree = 4;  // U, O, Sp
};

inline std::string expected_shape(Ensemble e) {
  switch (e) {
    case Ensemble::U: return "U needs i, j of equal length k and iconj, jconj of equal length l";
    case Ensemble::O:
    case Ensemble::Sp: return to_string(e) + " needs i and j of equal length";
    case Ensemble::AI:
    case Ensemble::AII: return to_string(e) + " needs i and j of even length (index pairs), no iconj/jconj";
    case Ensemble::AIII: return "AIII needs i and j of equal length k";
    default: return to_string(e) + " needs a single even-length sequence i (index pairs)";
  }
}

namespace detail {

inline void check_range(const std::vector<int>& seq, int dim, const char* name) {
  for (int v : seq)
    if (v < 1 || v > dim)
      throw std::out_of_range(std::string("index ") + std::to_string(v) + " in " + name + " is outside [1," + std::to_string(dim) + "]");
}

inline void shape_error(Ensemble e, const std::string& what) {
  throw std::invalid_argument("shape error: " + what + " (" + expected_shape(e) + ")");
}

// Checks the query shape; returns the Weingarten degree k, or -1 when the
// theorem's vanishing clause applies without any computation.
inline int validate_query(const MomentQuery& q, const EvaluatorLimits& limits) {
  q.cls.validate();
  const Ensemble e = q.cls.tag;
  const int dim = matrix_dimension(q.cls);
  check_range(q.i, dim, "i");
  check_range(q.j, dim, "j");
  check_range(q.iconj, dim, "iconj");
  check_range(q.jconj, dim, "jconj");
  const bool has_conj = !q.iconj.empty() || !q.jconj.empty();
  int k = 0;
  bool vanishes = false;
  int cap = limits.single_sum_degree;
  switch (e) {
    case Ensemble::U:
      if (q.i.size() != q.j.size()) shape_error(e, "i and j differ in length");
      if (q.iconj.size() != q.jconj.size()) shape_error(e, "iconj and jconj differ in length");
      k = static_cast<int>(q.i.size());
      vanishes = q.i.size() != q.iconj.size();
      cap = limits.double_sum_degree;
      break;
    case Ensemble::O:
    case Ensemble::Sp:
      if (has_conj) shape_error(e, "conjugate factors given");
      if (q.i.size() != q.j.size()) shape_error(e, "i and j differ in length");
      vanishes = q.i.size() % 2 != 0;
      k = static_cast<int>(q.i.size() / 2);
      cap = limits.double_sum_degree;
      break;
    case Ensemble::AI:
    case Ensemble::AII:
      if (has_conj) shape_error(e, "iconj/jconj given");
      if (q.i.size() % 2 != 0 || q.j.size() % 2 != 0) shape_error(e, "odd-length index pair sequence");
      vanishes = q.i.size() != q.j.size();
      k = static_cast<int>(q.i.size() / 2);
      break;
    case Ensemble::AIII:
      if (has_conj) shape_error(e, "conjugate factors given");
      if (q.i.size() != q.j.size()) shape_error(e, "i and j differ in length");
      k = static_cast<int>(q.i.size());
      break;
    default:
      if (has_conj || !q.j.empty()) shape_error(e, "unexpected j/iconj/jconj");
      if (q.i.size() % 2 != 0) shape_error(e, "odd-length index pair sequence");
      k = static_cast<int>(q.i.size() / 2);
      vanishes = (e == Ensemble::DIII || e == Ensemble::CI) && k % 2 != 0;
      break;
  }
  if (vanishes) return -1;
  if (k > cap) throw std::out_of_range("degree " + std::to_string(k) + " exceeds the evaluator cap " + std::to_string(cap) + " for class " + to_string(e));
  return k;
}

}  // namespace detail

// Exact value of the query's moment.
inline Rational evaluate_moment(const MomentQuery& q, const EvaluatorLimits& limits = {}) {
  const int k = detail::validate_query(q, limits);
  if (k < 0) return Rational(0);
  if (k == 0) return Rational(1);
  const Ensemble e = q.cls.tag;
  const int n = static_cast<int>(q.cls.n.get_num().get_si());
  const PairingTable pairing{n};

  Rational acc(0);
  switch (e) {
    case Ensemble::U: {
      const auto rows = delta_support(q.i, q.iconj);
      if (rows.empty()) return acc;
      const auto cols = delta_support(q.j, q.jconj);
      if (cols.empty()) return acc;
      const auto wg = wg_function(q.cls, k);
      for (const auto& s : rows) {
        const Permutation sinv = s.inverse();
        for (const auto& t : cols) acc += wg->at(sinv * t);
      }
      return acc;
    }
    case Ensemble::O:
    case Ensemble::Sp: {
      const bool symp = e == Ensemble::Sp;
      const auto rows = symp ? delta_pair_symplectic_support(q.i, pairing) : delta_pair_support(q.i);
      if (rows.empty()) return acc;
      const auto cols = symp ? delta_pair_symplectic_support(q.j, pairing) : delta_pair_support(q.j);
      if (cols.empty()) return acc;
      const auto wg = wg_function(q.cls, k);
      for (const auto& s : rows) {
        const Permutation sinv = s.sigma.inverse();
        for (const auto& t : cols) {
          const Rational v = wg->at(sinv * t.sigma);
          if (s.weight * t.weight > 0) acc += v; else acc -= v;
        }
      }
      return acc;
    }
    case Ensemble::AI:
    case Ensemble::AII:
    case Ensemble::AIII: {
      const auto support = delta_support(q.i, q.j);
      if (support.empty()) return acc;
      const auto wg = wg_function(q.cls, k);
      for (const auto& s : support) acc += wg->at(s);
      return acc;
    }
    case Ensemble::BDI:
    case Ensemble::DIII:
    case Ensemble::CII:
    case Ensemble::CI: {
      const bool symp = e == Ensemble::CII || e == Ensemble::CI;
      const auto support = symp ? delta_pair_symplectic_support(q.i, pairing) : delta_pair_support(q.i);
      if (support.empty()) return acc;
      const auto wg = wg_function(q.cls, k);
      for (const auto& s : support) {
        const Rational v = wg->at(s.sigma);
        if (s.weight > 0) acc += v; else acc -= v;
      }
      return acc;
    }
  }
  return acc;
}

// Plain entries of the tilde-entry classes in terms of tilde entries:
// x_{ij} = -x~_{i+n, j} (i <= n), x_{ij} = x~_{i-n, j} (i > n).
// Rewrites a query posed on plain entries into the tilde form the evaluator
// uses and returns the accumulated sign.
inline std::pair<int, MomentQuery> plain_to_tilde(const MomentQuery& plain) {
  if (!uses_tilde_entries(plain.cls.tag)) return {1, plain};
  const int n = static_cast<int>(plain.cls.n.get_num().get_si());
  int sign = 1;
  MomentQuery out = plain;
  auto convert_rows = [&](std::vector<int>& seq) {
    for (std::size_t r = 0; r < seq.size(); r += 2) {
      int& row = seq[r];
      if (row <= n) {
        row += n;
        sign = -sign;
      } else {
        row -= n;
      }
    }
  };
  convert_rows(out.i);
  convert_rows(out.j);
  return {sign, out};
}

inline Rational evaluate_plain_moment(const MomentQuery& plain, const EvaluatorLimits& limits = {}) {
  detail::validate_query(plain, limits);
  auto [sign, tilde] = plain_to_tilde(plain);
  Rational v = evaluate_moment(tilde, limits);
  return sign > 0 ? v : Rational(-v);
}

// ---------------------------------------------------------------------------
// Oracles

inline constexpr double kContractionBudget = 1e7;

// 𝒯_σ(X, Y) = Σ_{p ∈ [m]^{2k}} ∏_r x_{p_{σ(2r-1)}, p_{σ(2r)}} y_{p_{2r-1}, p_{2r}}.
// The sum runs over the nonzero entries of Y pair by pair, which visits every
// term of the defining sum that can be nonzero.
inline Rational contraction_T(const Permutation& sigma, const RationalMatrix& x, const RationalMatrix& y) {
  if (sigma.size() % 2 != 0) throw std::invalid_argument("contraction needs σ ∈ S_{2k}");
  const std::size_t m = x.rows();
  if (x.cols() != m || y.rows() != m || y.cols() != m) throw std::invalid_argument("contraction needs square X, Y of one size");
  const int k = sigma.size() / 2;
  if (std::pow(static_cast<double>(m), 2.0 * k) > kContractionBudget)
    throw std::out_of_range("contraction exceeds the term budget m^{2k} <= 1e7");

  std::vector<std::pair<int, int>> ynz;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (y(a, b) != 0) ynz.emplace_back(static_cast<int>(a), static_cast<int>(b));

  std::vector<int> p(static_cast<std::size_t>(2 * k));
  Rational acc(0);
  Rational term;
  auto rec = [&](auto&& self, int r, const Rational& yprod) -> void {
    if (r == k) {
      term = yprod;
      for (int s = 0; s < k && term != 0; ++s)
        term *= x(static_cast<std::size_t>(p[static_cast<std::size_t>(sigma(2 * s))]), static_cast<std::size_t>(p[static_cast<std::size_t>(sigma(2 * s + 1))]));
      acc += term;
      return;
    }
    for (const auto& [a, b] : ynz) {
      p[static_cast<std::size_t>(2 * r)] = a;
      p[static_cast<std::size_t>(2 * r + 1)] = b;
      self(self, r + 1, Rational(yprod * y(static_cast<std::size_t>(a), static_cast<std::size_t>(b))));
    }
  };
  rec(rec, 0, Rational(1));
  return acc;
}

// I'_{ab} = diag(I_a, -I_b)
inline RationalMatrix signature_matrix(int a, int b) {
  RationalMatrix out(static_cast<std::size_t>(a + b), static_cast<std::size_t>(a + b));
  for (int i = 0; i < a + b; ++i) out(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = i < a ? 1 : -1;
  return out;
}

// I''_{ab} = diag(I'_{ab}, I'_{ab})
inline RationalMatrix double_signature_matrix(int a, int b) {
  const int n = a + b;
  RationalMatrix out(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) out(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = (i % n) < a ? 1 : -1;
  return out;
}

// The T-function of a matrix-defined class as a contraction:
// BDI 𝒯(I'_{ab}, I_n), CII 𝒯(J, J I''_{ab}), DIII 𝒯(I_{2n}, J), CI 𝒯(J, J I'_{nn}),
// O 𝒯(I_n, I_n), Sp 𝒯(J, J).
inline Rational contraction_t_function(const EnsembleClass& cls, const Permutation& sigma) {
  const int n = static_cast<int>(cls.n.get_num().get_si());
  const RationalMatrix jn = PairingTable{n}.matrix();
  switch (cls.tag) {
    case Ensemble::O: return contraction_T(sigma, RationalMatrix::identity(static_cast<std::size_t>(n)), RationalMatrix::identity(static_cast<std::size_t>(n)));
    case Ensemble::Sp: return contraction_T(sigma, jn, jn);
    case Ensemble::BDI: return contraction_T(sigma, signature_matrix(cls.a, cls.b), RationalMatrix::identity(static_cast<std::size_t>(n)));
    case Ensemble::CII: return contraction_T(sigma, jn, jn * double_signature_matrix(cls.a, cls.b));
    case Ensemble::DIII: return contraction_T(sigma, RationalMatrix::identity(static_cast<std::size_t>(2 * n)), jn);
    case Ensemble::CI: return contraction_T(sigma, jn, jn * signature_matrix(n, n));
    default: break;
  }
  throw std::invalid_argument("class " + to_string(cls.tag) + " has no contraction form on S_{2k}");
}

struct GramOracle {
  std::vector<Permutation> matchings;  // row/column order: enumerate_matchings(k)
  RationalMatrix gram;                 // (⟨ρ(σ)θ, ρ(τ)θ⟩) = (𝒯_{σ^{-1}τ}(J, J))
  RationalMatrix pseudo_inverse;
};

inline constexpr int kGramOracleCap = 3;

// Builds the Gram matrix of the symplectic invariants over M_{2k} from the
// contraction 𝒯(J, J) and inverts it in the Moore–Penrose sense.
inline GramOracle gram_pseudo_inverse_oracle(int k, int n) {
  if (k < 1 || k > kGramOracleCap) throw std::out_of_range("Gram oracle supports 1 <= k <= 3");
  if (n < 1) throw std::invalid_argument("Gram oracle needs n >= 1");
  GramOracle out;
  out.matchings = enumerate_matchings(k);
  const std::size_t size = out.matchings.size();
  const RationalMatrix jn = PairingTable{n}.matrix();
  out.gram = RationalMatrix(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c)
      out.gram(r, c) = contraction_T(out.matchings[r].inverse() * out.matchings[c], jn, jn);
  out.pseudo_inverse = out.gram.pseudo_inverse();
  return out;
}

}  // namespace wgcalc
