#pragma once

// Haar samplers for U(n), O(n), Sp(2n) (as a subgroup of U(2n)), the random
// matrices of the seven symmetric-space classes, and empirical moment
// estimation checked against the exact evaluator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "wgcalc/moments.hpp"
#include "wgcalc/philox.hpp"

namespace wgcalc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// ---------------------------------------------------------------------------
// Haar samplers. Gaussians are drawn column by column, top to bottom.

inline ComplexMatrix sample_haar_unitary(int n, GaussianStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary needs n >= 1");
  ComplexMatrix z(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) z(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& packed = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    const Complex d = packed(c, c);
    const double mag = std::abs(d);
    if (mag > 0) q.col(c) *= d / mag;
  }
  return q;
}

inline ComplexMatrix sample_haar_orthogonal(int n, GaussianStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_orthogonal needs n >= 1");
  Eigen::MatrixXd z(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) z(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (int c = 0; c < n; ++c)
    if (packed(c, c) < 0) q.col(c) *= -1.0;
  return q.cast<Complex>();
}

inline ComplexMatrix j_matrix(int n) {
  ComplexMatrix j = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, i + n) = 1.0;
    j(i + n, i) = -1.0;
  }
  return j;
}

// X^D = J X^T J^T
inline ComplexMatrix dual(const ComplexMatrix& x) {
  const ComplexMatrix j = j_matrix(static_cast<int>(x.rows() / 2));
  return j * x.transpose() * j.transpose();
}

// Quaternionic Gram–Schmidt on the Ginibre matrix [[A, B], [-conj B, conj A]].
// Column j of the result is x_j for j < n and y_{j-n} = -J conj(x_{j-n})
// otherwise; every x_j is orthonormalized against all earlier x_i and y_i,
// so S is unitary with S J S^T = J.
inline ComplexMatrix sample_haar_symplectic(int n, GaussianStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_symplectic needs n >= 1");
  ComplexMatrix a(n, n), b(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) a(r, c) = rng.complex_normal();
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) b(r, c) = rng.complex_normal();

  const ComplexMatrix j = j_matrix(n);
  ComplexMatrix s = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXcd v(2 * n);
    v.head(n) = a.col(c);
    v.tail(n) = -b.col(c).conjugate();
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < c; ++prev) {
        v -= s.col(prev) * s.col(prev).dot(v);
        v -= s.col(prev + n) * s.col(prev + n).dot(v);
      }
    }
    v.normalize();
    s.col(c) = v;
    s.col(c + n) = -(j * v.conjugate());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Ensembles

inline ComplexMatrix signature_matrix_c(int a, int b) {
  ComplexMatrix out = ComplexMatrix::Zero(a + b, a + b);
  for (int i = 0; i < a + b; ++i) out(i, i) = i < a ? 1.0 : -1.0;
  return out;
}

inline int class_dimension(const EnsembleClass& cls) { return matrix_dimension(cls); }

inline int class_n(const EnsembleClass& cls) {
  if (!is_integer(cls.n)) throw std::invalid_argument("sampling needs an integer dimension parameter");
  return static_cast<int>(cls.n.get_num().get_si());
}

// Draws the group element the class is built from.
inline ComplexMatrix sample_group(const EnsembleClass& cls, GaussianStream& rng) {
  const int n = class_n(cls);
  switch (cls.tag) {
    case Ensemble::U:
    case Ensemble::AI:
    case Ensemble::AIII: return sample_haar_unitary(n, rng);
    case Ensemble::AII: return sample_haar_unitary(2 * n, rng);
    case Ensemble::O:
    case Ensemble::BDI: return sample_haar_orthogonal(n, rng);
    case Ensemble::DIII: return sample_haar_orthogonal(2 * n, rng);
    case Ensemble::Sp:
    case Ensemble::CII:
    case Ensemble::CI: return sample_haar_symplectic(n, rng);
  }
  throw std::invalid_argument("unknown class");
}

// AI ᵀU U, AII U^D U, AIII U* I' U, BDI ᵀR I' R, CII S^D I'' S, DIII R^D R,
// CI S^D I'_{nn} S. U, O, Sp return g itself.
inline ComplexMatrix build_ensemble(const EnsembleClass& cls, const ComplexMatrix& g) {
  const int dim = matrix_dimension(cls);
  if (g.rows() != dim || g.cols() != dim)
    throw std::invalid_argument("group element has size " + std::to_string(g.rows()) + ", class " + to_string(cls.tag) + " needs " + std::to_string(dim));
  switch (cls.tag) {
    case Ensemble::U:
    case Ensemble::O:
    case Ensemble::Sp: return g;
    case Ensemble::AI: return g.transpose() * g;
    case Ensemble::AII:
    case Ensemble::DIII: return dual(g) * g;
    case Ensemble::AIII: return g.adjoint() * signature_matrix_c(cls.a, cls.b) * g;
    case Ensemble::BDI: return g.transpose() * signature_matrix_c(cls.a, cls.b) * g;
    case Ensemble::CII: {
      ComplexMatrix i2 = ComplexMatrix::Zero(dim, dim);
      i2.topLeftCorner(cls.a + cls.b, cls.a + cls.b) = signature_matrix_c(cls.a, cls.b);
      i2.bottomRightCorner(cls.a + cls.b, cls.a + cls.b) = signature_matrix_c(cls.a, cls.b);
      return dual(g) * i2 * g;
    }
    case Ensemble::CI: {
      const int n = dim / 2;
      return dual(g) * signature_matrix_c(n, n) * g;
    }
  }
  throw std::invalid_argument("unknown class");
}

// Largest violation of the defining constraints of g and of the class matrix.
inline double structural_residual(const EnsembleClass& cls, const ComplexMatrix& g, const ComplexMatrix& m) {
  const long dim = g.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  auto norm = [](const ComplexMatrix& x) { return x.cwiseAbs().maxCoeff(); };
  auto imag_part = [](const ComplexMatrix& x) { return x.imag().cwiseAbs().maxCoeff(); };

  double r = norm(g * g.adjoint() - id);
  switch (cls.tag) {
    case Ensemble::O:
    case Ensemble::BDI:
    case Ensemble::DIII: r = std::max(r, imag_part(g)); break;
    case Ensemble::Sp:
    case Ensemble::CII:
    case Ensemble::CI: r = std::max(r, norm(g * dual(g) - id)); break;
    default: break;
  }

  const ComplexMatrix j = dim % 2 == 0 ? j_matrix(static_cast<int>(dim / 2)) : ComplexMatrix();
  switch (cls.tag) {
    case Ensemble::AI:
      r = std::max({r, norm(m - m.transpose()), norm(m * m.adjoint() - id)});
      break;
    case Ensemble::AII: {
      const ComplexMatrix t = j * m;
      r = std::max({r, norm(m - dual(m)), norm(t + t.transpose()), norm(m * m.adjoint() - id)});
      break;
    }
    case Ensemble::AIII:
      r = std::max({r, norm(m - m.adjoint()), norm(m * m - id)});
      break;
    case Ensemble::BDI:
      r = std::max({r, norm(m - m.transpose()), imag_part(m), norm(m * m - id)});
      break;
    case Ensemble::CII: {
      const ComplexMatrix t = j * m;
      r = std::max({r, norm(m - m.adjoint()), norm(m * m - id), norm(m - dual(m)), norm(t + t.transpose())});
      break;
    }
    case Ensemble::DIII: {
      const ComplexMatrix t = j * m;
      r = std::max({r, imag_part(m), norm(m * m.transpose() - id), norm(m - dual(m)), norm(t + t.transpose())});
      break;
    }
    case Ensemble::CI: {
      const ComplexMatrix t = j * m;
      r = std::max({r, norm(m - m.adjoint()), norm(m * m - id), norm(t - t.transpose())});
      break;
    }
    default: break;
  }
  return r;
}

// The matrix whose entries a query of the class addresses: g for U/O/Sp, the
// class matrix for AI/AIII/BDI, and the tilde matrix J·M for AII/CII/DIII/CI.
inline ComplexMatrix observed_matrix(const EnsembleClass& cls, const ComplexMatrix& g, const ComplexMatrix& m) {
  if (cls.tag == Ensemble::U || cls.tag == Ensemble::O || cls.tag == Ensemble::Sp) return g;
  if (uses_tilde_entries(cls.tag)) return j_matrix(static_cast<int>(m.rows() / 2)) * m;
  return m;
}

// Entry product of one sample, in the layout documented on MomentQuery.
inline Complex entry_product(const MomentQuery& q, const ComplexMatrix& x) {
  auto at = [&](int r, int c) { return x(r - 1, c - 1); };
  Complex acc(1.0, 0.0);
  switch (q.cls.tag) {
    case Ensemble::U:
      for (std::size_t s = 0; s < q.i.size(); ++s) acc *= at(q.i[s], q.j[s]);
      for (std::size_t s = 0; s < q.iconj.size(); ++s) acc *= std::conj(at(q.iconj[s], q.jconj[s]));
      return acc;
    case Ensemble::O:
    case Ensemble::Sp:
    case Ensemble::AIII:
      for (std::size_t s = 0; s < q.i.size(); ++s) acc *= at(q.i[s], q.j[s]);
      return acc;
    case Ensemble::AI:
    case Ensemble::AII:
      for (std::size_t s = 0; s + 1 < q.i.size(); s += 2) acc *= at(q.i[s], q.i[s + 1]);
      for (std::size_t s = 0; s + 1 < q.j.size(); s += 2) acc *= std::conj(at(q.j[s], q.j[s + 1]));
      return acc;
    default:
      for (std::size_t s = 0; s + 1 < q.i.size(); s += 2) acc *= at(q.i[s], q.i[s + 1]);
      return acc;
  }
}

// ---------------------------------------------------------------------------
// Estimation

struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 200000;
  unsigned workers = 1;
};

struct EstimateReport {
  MomentQuery query;
  std::optional<Rational> exact;
  Complex mean;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  double standard_error = 0.0;  // hypot(stderr_re, stderr_im)
  double sigmas = 0.0;          // largest componentwise deviation in SE units
  bool pass = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;  // worst structural residual over all samples
};

inline constexpr std::size_t kSampleBlock = 1024;
inline constexpr double kResidualLimit = 1e-10;
inline constexpr double kAbsoluteFloor = 1e-12;

namespace detail {

struct BlockSums {
  std::vector<double> values;  // per query: sum re, sum im, sum re^2, sum im^2
  double residual = 0.0;
};

inline BlockSums merge(const BlockSums& a, const BlockSums& b) {
  BlockSums out{std::vector<double>(a.values.size()), std::max(a.residual, b.residual)};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
  return out;
}

// Fixed-shape pairwise reduction over [lo, hi).
inline BlockSums pairwise(const std::vector<BlockSums>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(pairwise(blocks, lo, mid), pairwise(blocks, mid, hi));
}

inline bool component_passes(double delta, double se, double tolerance) {
  return std::abs(delta) <= std::max(tolerance * se, kAbsoluteFloor);
}

inline double deviation(double delta, double se) {
  if (std::abs(delta) <= kAbsoluteFloor) return 0.0;
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(delta) / se;
}

}  // namespace detail

// Estimates every query from one shared set of samples. All queries must
// name the same class. Sample s uses GaussianStream(seed, s); block sums are
// combined in block order, so the result does not depend on cfg.workers.
inline std::vector<EstimateReport> estimate_moments(const std::vector<MomentQuery>& queries, const SamplerConfig& cfg,
                                                    double tolerance = 5.0) {
  if (queries.empty()) return {};
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  const EnsembleClass cls = queries.front().cls;
  for (const auto& q : queries) {
    if (q.cls.key() != cls.key()) throw std::invalid_argument("estimate_moments needs queries of a single class");
    detail::validate_query(q, EvaluatorLimits{});
  }

  const std::size_t nq = queries.size();
  const std::size_t nblocks = (cfg.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<detail::BlockSums> blocks(nblocks);

  auto run_block = [&](std::size_t b) {
    detail::BlockSums sums{std::vector<double>(4 * nq, 0.0), 0.0};
    const std::size_t end = std::min(cfg.samples, (b + 1) * kSampleBlock);
    for (std::size_t s = b * kSampleBlock; s < end; ++s) {
      GaussianStream rng(cfg.seed, s);
      const ComplexMatrix g = sample_group(cls, rng);
      const ComplexMatrix m = build_ensemble(cls, g);
      sums.residual = std::max(sums.residual, structural_residual(cls, g, m));
      const ComplexMatrix x = observed_matrix(cls, g, m);
      for (std::size_t qi = 0; qi < nq; ++qi) {
        const Complex v = entry_product(queries[qi], x);
        double* acc = &sums.values[4 * qi];
        acc[0] += v.real();
        acc[1] += v.imag();
        acc[2] += v.real() * v.real();
        acc[3] += v.imag() * v.imag();
      }
    }
    blocks[b] = std::move(sums);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(nblocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < nblocks; b += workers) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  const detail::BlockSums total = detail::pairwise(blocks, 0, nblocks);
  const double count = static_cast<double>(cfg.samples);
  std::vector<EstimateReport> out;
  out.reserve(nq);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    EstimateReport r;
    r.query = queries[qi];
    r.samples = cfg.samples;
    r.seed = cfg.seed;
    r.residual = total.residual;
    const double* acc = &total.values[4 * qi];
    r.mean = Complex(acc[0] / count, acc[1] / count);
    auto stderr_of = [&](double sum, double sumsq) {
      if (cfg.samples < 2) return 0.0;
      const double var = std::max(0.0, (sumsq - sum * sum / count) / (count - 1.0));
      return std::sqrt(var / count);
    };
    r.stderr_re = stderr_of(acc[0], acc[2]);
    r.stderr_im = stderr_of(acc[1], acc[3]);
    r.standard_error = std::hypot(r.stderr_re, r.stderr_im);
    try {
      r.exact = evaluate_moment(r.query);
    } catch (const std::out_of_range&) {
      r.exact.reset();
    }
    if (r.exact) {
      const double dre = r.mean.real() - r.exact->get_d();
      const double dim = r.mean.imag();
      r.sigmas = std::max(detail::deviation(dre, r.stderr_re), detail::deviation(dim, r.stderr_im));
      r.pass = detail::component_passes(dre, r.stderr_re, tolerance) && detail::component_passes(dim, r.stderr_im, tolerance);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline EstimateReport estimate_moment(const MomentQuery& q, const SamplerConfig& cfg, double tolerance = 5.0) {
  return estimate_moments({q}, cfg, tolerance).front();
}

// ---------------------------------------------------------------------------
// Default verification battery: k <= 2, n <= 3, a mix of vanishing and
// non-vanishing queries per class.

// Degree of the Weingarten function a query touches (k in S_k or S_{2k}).
inline int query_degree(const MomentQuery& q) {
  switch (q.cls.tag) {
    case Ensemble::U:
    case Ensemble::AIII: return static_cast<int>(std::max(q.i.size(), q.iconj.size()));
    case Ensemble::O:
    case Ensemble::Sp: return static_cast<int>((q.i.size() + 1) / 2);
    case Ensemble::AI:
    case Ensemble::AII: return static_cast<int>(std::max(q.i.size(), q.j.size()) / 2);
    default: return static_cast<int>(q.i.size() / 2);
  }
}

inline EnsembleClass default_battery_class(Ensemble e) {
  switch (e) {
    case Ensemble::AIII:
    case Ensemble::BDI:
    case Ensemble::CII: return EnsembleClass::chiral(e, 2, 1);
    case Ensemble::Sp:
    case Ensemble::AII:
    case Ensemble::DIII:
    case Ensemble::CI: return EnsembleClass::make(e, 2);
    default: return EnsembleClass::make(e, 3);
  }
}

inline std::vector<MomentQuery> default_battery(const EnsembleClass& cls) {
  using V = std::vector<int>;
  struct Row {
    V i, j = {}, iconj = {}, jconj = {};
  };
  std::vector<Row> rows;
  switch (cls.tag) {
    case Ensemble::U:
      rows = {{{1}, {1}, {1}, {1}},          {{1}, {2}, {1}, {2}},          {{1, 1}, {1, 1}, {1, 1}, {1, 1}},
              {{1, 2}, {1, 2}, {1, 2}, {1, 2}}, {{1, 2}, {1, 2}, {2, 1}, {1, 2}}, {{1, 2}, {1, 2}, {1, 2}, {2, 1}},
              {{1}, {1}, {}, {}},            {{1, 1}, {1, 2}, {1, 1}, {1, 2}}, {{1, 2}, {3, 3}, {1, 2}, {3, 3}},
              {{1}, {1}, {2}, {1}},          {{1, 2}, {2, 3}, {2, 1}, {3, 2}}};
      break;
    case Ensemble::O:
      rows = {{{1, 1}, {1, 1}},       {{1, 2}, {1, 2}},       {{1, 1, 1, 1}, {1, 1, 1, 1}}, {{1, 1, 2, 2}, {1, 1, 1, 1}},
              {{1, 2, 1, 2}, {1, 1, 2, 2}}, {{1, 1, 2, 2}, {3, 3, 3, 3}}, {{1, 1, 1}, {1, 1, 1}},    {{1, 2, 1, 2}, {3, 1, 3, 1}},
              {{1, 1}, {2, 2}},       {{2, 2, 3, 3}, {1, 2, 1, 2}}};
      break;
    case Ensemble::Sp:
      rows = {{{1, 3}, {1, 3}},       {{3, 1}, {1, 3}},       {{1, 2}, {1, 3}},       {{1, 3, 1, 3}, {1, 3, 1, 3}},
              {{1, 3, 2, 4}, {1, 3, 2, 4}}, {{1, 3, 2, 4}, {1, 4, 3, 2}}, {{1, 1, 3, 3}, {1, 3, 1, 3}}, {{1}, {1}},
              {{1, 3, 1, 3}, {2, 4, 2, 4}}, {{2, 4, 4, 2}, {1, 3, 3, 1}}};
      break;
    case Ensemble::AI:
      rows = {{{1, 1}, {1, 1}},       {{1, 2}, {1, 2}},       {{1, 2}, {2, 1}},       {{1, 1, 1, 1}, {1, 1, 1, 1}},
              {{1, 2, 1, 2}, {1, 2, 1, 2}}, {{1, 1, 2, 2}, {1, 2, 1, 2}}, {{1, 1}, {}},           {{1, 2, 2, 3}, {1, 2, 2, 3}},
              {{1, 2}, {1, 3}},       {{1, 1, 2, 2}, {1, 1, 2, 2}}};
      break;
    case Ensemble::AII:
      rows = {{{1, 3}, {1, 3}},       {{1, 2}, {1, 2}},       {{1, 1}, {1, 1}},       {{1, 3, 1, 3}, {1, 3, 1, 3}},
              {{1, 3, 2, 4}, {1, 3, 2, 4}}, {{1, 2, 3, 4}, {1, 2, 3, 4}}, {{1, 3}, {}},           {{1, 2}, {3, 4}},
              {{1, 3, 2, 4}, {2, 4, 1, 3}}, {{1, 4, 2, 3}, {1, 4, 2, 3}}};
      break;
    case Ensemble::AIII:
      rows = {{{1}, {1}},       {{1}, {2}},       {{1, 1}, {1, 1}}, {{1, 2}, {1, 2}}, {{1, 2}, {2, 1}},
              {{3, 3}, {3, 3}}, {{1, 2}, {1, 3}}, {{1, 3}, {3, 1}}, {{2}, {2}},       {{3}, {3}}};
      break;
    case Ensemble::BDI:
      rows = {{{1, 1}},       {{1, 2}},       {{1, 1, 1, 1}}, {{1, 1, 2, 2}}, {{1, 2, 1, 2}},
              {{1, 2, 2, 1}}, {{3, 3, 3, 3}}, {{1, 1, 3, 3}}, {{2, 2}},       {{1, 3, 1, 3}}};
      break;
    case Ensemble::CII:
      rows = {{{1, 4}},       {{4, 1}},       {{1, 2}},       {{1, 4, 1, 4}}, {{1, 4, 2, 5}},
              {{1, 2, 5, 4}}, {{1, 5, 2, 4}}, {{3, 6, 3, 6}}, {{1, 4, 3, 6}}, {{3, 6}}};
      break;
    case Ensemble::DIII:
      rows = {{{1, 2}},       {{1, 3}},       {{1, 1, 1, 1}}, {{1, 1, 2, 2}}, {{1, 2, 1, 2}},
              {{1, 2, 2, 1}}, {{1, 3, 1, 3}}, {{1, 1, 3, 3}}, {{2, 4, 2, 4}}, {{1, 2, 3, 4}}};
      break;
    case Ensemble::CI:
      rows = {{{1, 3}},       {{1, 1}},       {{1, 3, 1, 3}}, {{1, 3, 2, 4}}, {{1, 3, 3, 1}},
              {{1, 2, 3, 4}}, {{1, 4, 3, 2}}, {{1, 1, 3, 3}}, {{2, 4, 2, 4}}, {{1, 3, 4, 2}}};
      break;
  }
  const int dim = matrix_dimension(cls);
  std::vector<MomentQuery> out;
  for (auto& r : rows) {
    MomentQuery q{cls, r.i, r.j, r.iconj, r.jconj};
    auto fits = [&](const V& seq) { return std::all_of(seq.begin(), seq.end(), [&](int v) { return v <= dim; }); };
    if (fits(q.i) && fits(q.j) && fits(q.iconj) && fits(q.jconj)) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace wgcalc
