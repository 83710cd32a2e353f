// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wgcalc/wgcalc.hpp"

using namespace wgcalc;

namespace {

struct Tally {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
  void expect_eq(const Rational& got, const Rational& want, const std::string& what) {
    expect(got == want, what + ": got " + to_string(got) + ", want " + to_string(want));
  }
};

Permutation one_based(std::vector<int> v) { return Permutation::from_one_based(v); }
Rational q(long p, long d = 1) { return make_rational(p, d); }

Rational wg_at(const EnsembleClass& cls, std::vector<int> sigma) {
  const int m = static_cast<int>(sigma.size());
  return wg_function(cls, lives_on_sk(cls.tag) ? m : m / 2)->at(one_based(sigma));
}

void golden_values(Tally& t) {
  for (long n : {3, 4, 5}) {
    const std::string at = " n=" + std::to_string(n);
    const auto U = EnsembleClass::make(Ensemble::U, n);
    t.expect_eq(wg_at(U, {1, 2}), q(1, (n + 1) * (n - 1)), "U id_2" + at);
    t.expect_eq(wg_at(U, {2, 1}), q(-1, n * (n + 1) * (n - 1)), "U (1 2)" + at);

    const auto O = EnsembleClass::make(Ensemble::O, n);
    t.expect_eq(wg_at(O, {1, 2, 3, 4}), q(n + 1, n * (n + 2) * (n - 1)), "O id_4" + at);
    t.expect_eq(wg_at(O, {1, 4, 2, 3}), q(-1, n * (n + 2) * (n - 1)), "O sigma_(2)" + at);

    const auto Sp = EnsembleClass::make(Ensemble::Sp, n);
    const auto AI = EnsembleClass::make(Ensemble::AI, n);
    const auto AII = EnsembleClass::make(Ensemble::AII, n);
    const long sp_den = 4 * n * (n - 1) * (2 * n + 1);
    for_each_permutation(4, [&](const Permutation& p) {
      const bool in_h = is_in_hyperoctahedral(p);
      const int eps = p.signature();
      t.expect_eq(wg_function(Sp, 2)->at(p), q(eps * (in_h ? 2 * n - 1 : 1), sp_den), "Sp " + to_string(p) + at);
      t.expect_eq(wg_function(AI, 2)->at(p), in_h ? q(n + 2, n * (n + 1) * (n + 3)) : q(-1, n * (n + 1) * (n + 3)), "AI " + to_string(p) + at);
      if (in_h) t.expect_eq(wg_function(AII, 2)->at(p), q(eps * (n - 1), n * (2 * n - 1) * (2 * n - 3)), "AII " + to_string(p) + at);
    });

    const auto DIII = EnsembleClass::make(Ensemble::DIII, n);
    const auto CI = EnsembleClass::make(Ensemble::CI, n);
    t.expect_eq(wg_at(DIII, {1, 4, 2, 3}), q(-1, 2 * n - 1), "DIII (1,4,2,3)" + at);
    t.expect_eq(wg_at(DIII, {1, 3, 2, 4}), q(1, 2 * n - 1), "DIII (3 4)-translate" + at);
    t.expect_eq(wg_at(CI, {1, 4, 2, 3}), q(-1, 2 * n + 1), "CI (1,4,2,3)" + at);
    t.expect_eq(wg_at(CI, {1, 3, 2, 4}), q(-1, 2 * n + 1), "CI (1,3,2,4)" + at);
  }
  for (auto [a, b] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    const long n = a + b;
    const std::string at = " (a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")";
    const auto AIII = EnsembleClass::chiral(Ensemble::AIII, a, b);
    t.expect_eq(wg_at(AIII, {1}), q(a - b, n), "AIII id_1" + at);
    t.expect_eq(wg_at(AIII, {2, 1}), q(4 * a * b, n * (n - 1) * (n + 1)), "AIII (1 2)" + at);
    t.expect_eq(wg_at(EnsembleClass::chiral(Ensemble::BDI, a, b), {1, 2, 3, 4}), q((a - b) * (a - b) * (n + 1) - 2 * n, n * (n + 2) * (n - 1)),
                "BDI id_4" + at);
    t.expect_eq(wg_at(EnsembleClass::chiral(Ensemble::CII, a, b), {1, 2, 3, 4}),
                q((a - b) * (a - b) * (2 * n - 1) - n, n * (n - 1) * (2 * n + 1)), "CII id_4" + at);
  }
}

void pseudo_inverse_identities(Tally& t) {
  for (int k = 1; k <= 3; ++k)
    for (long n : {1, 2, 3, 5}) {
      const std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n);
      const ClassFunction tu = t_unitary(k, n);
      t.expect(convolve(convolve(tu, wg_unitary(k, n)), tu) == tu, "U TWT=T" + at);
      const CosetFunction to = t_orthogonal(k, n);
      t.expect(convolve_star(convolve_star(to, wg_orthogonal(k, n)), to) == to, "O TWT=T" + at);
      const CosetFunction ts = t_symplectic(k, n);
      t.expect(convolve_star(convolve_star(ts, wg_symplectic(k, n)), ts) == ts, "Sp TWT=T" + at);
    }
}

void parameter_shifts(Tally& t) {
  for (int k = 1; k <= 3; ++k)
    for (long n : {2, 3, 4}) {
      const std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n);
      const CosetFunction ai = wg_via_unitary(Ensemble::AI, k, n);
      t.expect(ai == wg_orthogonal(k, n + 1), "T^O*Wg^U = Wg^O(n+1)" + at);
      t.expect(ai == wg_function(EnsembleClass::make(Ensemble::AI, n), k)->coset_function(), "AI table" + at);
      const CosetFunction aii = wg_via_unitary(Ensemble::AII, k, n);
      t.expect(aii == wg_symplectic(k, Rational(n) - q(1, 2)), "T^Sp*Wg^U(2n) = Wg^Sp(n-1/2)" + at);
      t.expect(aii == wg_function(EnsembleClass::make(Ensemble::AII, n), k)->coset_function(), "AII table" + at);
    }
}

void oracle_equivalences(Tally& t) {
  // (a) contraction vs closed form, exhaustive over S_2 and S_4
  std::vector<EnsembleClass> classes;
  for (auto [a, b] : {std::pair{1, 1}, {2, 1}, {3, 2}}) {
    classes.push_back(EnsembleClass::chiral(Ensemble::BDI, a, b));
    classes.push_back(EnsembleClass::chiral(Ensemble::CII, a, b));
  }
  for (long n : {1, 2}) {
    classes.push_back(EnsembleClass::make(Ensemble::DIII, n));
    classes.push_back(EnsembleClass::make(Ensemble::CI, n));
  }
  for (const auto& cls : classes)
    for (int k = 1; k <= 2; ++k)
      for_each_permutation(2 * k, [&](const Permutation& s) {
        t.expect_eq(contraction_t_function(cls, s), t_function(cls, s), "contraction " + cls.key() + " " + to_string(s));
      });

  // (b) Gram pseudo-inverse vs Wg^Sp
  for (int k = 1; k <= 3; ++k)
    for (int n : {2, 3}) {
      const GramOracle o = gram_pseudo_inverse_oracle(k, n);
      const std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n);
      t.expect(o.gram * o.pseudo_inverse * o.gram == o.gram, "GWG=G" + at);
      t.expect(o.pseudo_inverse * o.gram * o.pseudo_inverse == o.pseudo_inverse, "WGW=W" + at);
      t.expect(o.pseudo_inverse.is_symmetric(), "W symmetric" + at);
      const auto wg = wg_function(EnsembleClass::make(Ensemble::Sp, n), k);
      for (std::size_t r = 0; r < o.matchings.size(); ++r)
        for (std::size_t c = 0; c < o.matchings.size(); ++c)
          t.expect_eq(o.pseudo_inverse(r, c), wg->at(o.matchings[r].inverse() * o.matchings[c]), "Gram entry" + at);
    }

  // (c) character / zonal expansions
  for (int k = 1; k <= 3; ++k) {
    const Rational c = Rational(hyperoctahedral_order(k)) / Rational(factorial(static_cast<unsigned>(2 * k)));
    const Rational kfact(factorial(static_cast<unsigned>(k)));
    for (auto [a, b] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
      const int n = a + b;
      ClassFunction aiii = ClassFunction::zero(k);
      CosetFunction bdi = CosetFunction::zero(k, Twist::none());
      CosetFunction cii = CosetFunction::zero(k, Twist::both());
      for (const auto& lambda : partitions_of(k))
        for (const auto& mu : partitions_of(k)) {
          aiii.values[mu] += Rational(dimension(lambda)) / kfact * schur_eval_signed(lambda, a, b) / schur_eval_signed(lambda, n, 0) * character(lambda, mu);
          bdi.values[mu] += c * Rational(dimension(lambda.doubled())) * zonal_eval_signed(lambda, a, b) / zonal_eval_signed(lambda, n, 0) *
                            zonal_spherical(lambda, mu);
          cii.values[mu] += c * Rational(dimension(lambda.self_union())) * twisted_zonal_eval_signed(lambda, a, b) /
                            twisted_zonal_eval_signed(lambda, n, 0) * twisted_spherical(lambda, mu);
        }
      const std::string at = " k=" + std::to_string(k) + " (a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")";
      t.expect(aiii == wg_function(EnsembleClass::chiral(Ensemble::AIII, a, b), k)->class_function(), "AIII expansion" + at);
      t.expect(bdi == wg_function(EnsembleClass::chiral(Ensemble::BDI, a, b), k)->coset_function(), "BDI expansion" + at);
      t.expect(cii == wg_function(EnsembleClass::chiral(Ensemble::CII, a, b), k)->coset_function(), "CII expansion" + at);
    }
  }
}

void coe_closed_forms(Tally& t) {
  for (int k = 1; k <= 3; ++k)
    for (long n : {2, 3, 4, 6}) {
      const auto AI = EnsembleClass::make(Ensemble::AI, n);
      std::vector<int> diag, off;
      for (int r = 0; r < k; ++r) {
        diag.insert(diag.end(), {1, 1});
        off.insert(off.end(), {1, 2});
      }
      Rational want_diag = pow(Rational(2), static_cast<unsigned>(k)) * Rational(factorial(static_cast<unsigned>(k)));
      for (int r = 1; r <= k; ++r) want_diag /= n + 2 * r - 1;
      Rational want_off(factorial(static_cast<unsigned>(k)));
      for (long r = n; r <= n + k - 2; ++r) want_off /= r;
      want_off /= n + 2 * k - 1;
      const std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n);
      t.expect_eq(evaluate_moment({AI, diag, diag, {}, {}}), want_diag, "E|v_11|^2k" + at);
      t.expect_eq(evaluate_moment({AI, off, off, {}, {}}), want_off, "E|v_12|^2k" + at);
    }
}

void vanishing_clauses(Tally& t) {
  std::mt19937 gen(2024);
  auto fill = [&](std::size_t len, int dim) {
    std::uniform_int_distribution<int> idx(1, dim);
    std::vector<int> v(len);
    for (auto& x : v) x = idx(gen);
    return v;
  };
  std::uniform_int_distribution<int> small(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const long n = small(gen);
    // U with k != l
    const int k = small(gen);
    int l = small(gen);
    if (l == k) l = k + 1;
    const auto U = EnsembleClass::make(Ensemble::U, n);
    t.expect_eq(evaluate_moment({U, fill(k, n), fill(k, n), fill(l, n), fill(l, n)}), 0, "U k!=l");
    // O / Sp with odd total degree
    const std::size_t odd = static_cast<std::size_t>(2 * small(gen) - 1);
    const auto O = EnsembleClass::make(Ensemble::O, n);
    const auto Sp = EnsembleClass::make(Ensemble::Sp, n);
    t.expect_eq(evaluate_moment({O, fill(odd, n), fill(odd, n), {}, {}}), 0, "O odd degree");
    t.expect_eq(evaluate_moment({Sp, fill(odd, 2 * n), fill(odd, 2 * n), {}, {}}), 0, "Sp odd degree");
    // DIII / CI with odd k
    const std::size_t odd_pairs = 2 * odd;
    t.expect_eq(evaluate_moment({EnsembleClass::make(Ensemble::DIII, n), fill(odd_pairs, 2 * n), {}, {}, {}}), 0, "DIII odd k");
    t.expect_eq(evaluate_moment({EnsembleClass::make(Ensemble::CI, n), fill(odd_pairs, 2 * n), {}, {}, {}}), 0, "CI odd k");
  }
}

void monte_carlo_battery(Tally& t, std::string& detail) {
  const SamplerConfig serial{42, 200000, 1};
  const SamplerConfig threaded{42, 200000, 2};
  double worst_sigmas = 0.0, worst_residual = 0.0;
  std::size_t queries = 0;
  for (Ensemble e : kAllEnsembles) {
    const EnsembleClass cls = default_battery_class(e);
    const auto battery = default_battery(cls);
    t.expect(battery.size() >= 10 && cls.n <= 3, cls.key() + " battery shape");
    const auto first = estimate_moments(battery, serial);
    const auto second = estimate_moments(battery, threaded);
    for (std::size_t i = 0; i < first.size(); ++i) {
      const auto& r = first[i];
      ++queries;
      t.expect(query_degree(r.query) <= 2, cls.key() + " degree");
      t.expect(r.exact.has_value() && r.pass, cls.key() + " query " + std::to_string(i) + " off by " + std::to_string(r.sigmas) + " SE");
      t.expect(r.residual <= kResidualLimit, cls.key() + " residual");
      t.expect(r.mean == second[i].mean && r.stderr_re == second[i].stderr_re && r.stderr_im == second[i].stderr_im,
               cls.key() + " bit-for-bit reproducibility");
      if (std::isfinite(r.sigmas)) worst_sigmas = std::max(worst_sigmas, r.sigmas);
      worst_residual = std::max(worst_residual, r.residual);
    }
  }
  std::ostringstream out;
  out << queries << " queries, max " << worst_sigmas << " SE, max residual " << worst_residual;
  detail = out.str();
}

void combinatorial_examples(Tally& t) {
  const Permutation p = one_based({3, 1, 2, 4, 6, 5});
  t.expect(cycle_type(p) == Partition({3, 2, 1}), "cycle-type (3,2,1)");
  t.expect(coset_type(p) == Partition({2, 1}), "coset-type (2,1)");
  t.expect(to_string(sigma_mu(Partition({3, 1}))) == "1,6,2,3,4,5,7,8", "sigma_(3,1)");

  std::mt19937 gen(8);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 5; ++trial) {
    const GroupFunction f1 = GroupFunction::from(4, [&](const Permutation&) { return Rational(dist(gen), 1 + (dist(gen) + 9) % 4); });
    const GroupFunction f2 = GroupFunction::from(4, [&](const Permutation&) { return Rational(dist(gen), 1 + (dist(gen) + 9) % 4); });
    const GroupFunction star = convolve_star(f1, f2);
    auto F1 = [&](std::vector<int> v) { return f1.at(one_based(v)); };
    auto F2 = [&](std::vector<int> v) { return f2.at(one_based(v)); };
    t.expect_eq(star.at(one_based({1, 2, 3, 4})),
                F1({1, 2, 3, 4}) * F2({1, 2, 3, 4}) + F1({1, 3, 2, 4}) * F2({1, 3, 2, 4}) + F1({1, 4, 2, 3}) * F2({1, 3, 4, 2}), "star at id_4");
    t.expect_eq(star.at(one_based({1, 3, 2, 4})),
                F1({1, 2, 3, 4}) * F2({1, 3, 2, 4}) + F1({1, 3, 2, 4}) * F2({1, 2, 3, 4}) + F1({1, 4, 2, 3}) * F2({1, 4, 3, 2}), "star at (1,3,2,4)");
    t.expect_eq(star.at(one_based({1, 4, 2, 3})),
                F1({1, 2, 3, 4}) * F2({1, 4, 2, 3}) + F1({1, 3, 2, 4}) * F2({1, 4, 3, 2}) + F1({1, 4, 2, 3}) * F2({1, 2, 3, 4}), "star at (1,4,2,3)");
  }
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Tally&, std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "golden values", 10, [](Tally& t, std::string&) { golden_values(t); }},
      {2, "pseudo-inverse identities TWT=T", 60, [](Tally& t, std::string&) { pseudo_inverse_identities(t); }},
      {3, "parameter-shift theorems", 0, [](Tally& t, std::string&) { parameter_shifts(t); }},
      {4, "oracle equivalences (contraction, Gram, expansions)", 0, [](Tally& t, std::string&) { oracle_equivalences(t); }},
      {5, "COE single-entry closed forms", 0, [](Tally& t, std::string&) { coe_closed_forms(t); }},
      {6, "vanishing clauses", 0,
       [](Tally& t, std::string&) {
         vanishing_clauses(t);
         if (t.checks < 100) t.expect(false, "fewer than 100 queries");
       }},
      {7, "Monte Carlo battery", 300, monte_carlo_battery},
      {8, "worked combinatorial examples", 0, [](Tally& t, std::string&) { combinatorial_examples(t); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Tally tally;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally, detail);
    } catch (const std::exception& e) {
      tally.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds)
      tally.expect(false, "runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(c.budget_seconds) + " s");
    const bool pass = tally.failures == 0;
    all = all && pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " (" << tally.checks << " checks, " << timing;
    if (!detail.empty()) std::cout << ", " << detail;
    std::cout << ")\n";
    for (const auto& note : tally.notes) std::cout << "      " << note << '\n';
  }
  return all ? 0 : 1;
}
