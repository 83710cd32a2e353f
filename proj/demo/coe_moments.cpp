// Moments of a single entry of a COE matrix V = ᵀU U: exact values next to a
// Monte Carlo estimate.

#include <iomanip>
#include <iostream>

#include "wgcalc/wgcalc.hpp"

using namespace wgcalc;

int main() {
  const auto cls = EnsembleClass::make(Ensemble::AI, 3);
  std::vector<MomentQuery> queries;
  for (int k = 1; k <= 2; ++k) {
    queries.push_back({cls, std::vector<int>(2 * k, 1), std::vector<int>(2 * k, 1), {}, {}});
    std::vector<int> off;
    for (int r = 0; r < k; ++r) off.insert(off.end(), {1, 2});
    queries.push_back({cls, off, off, {}, {}});
  }
  const auto reports = estimate_moments(queries, {7, 50000, 1});
  std::cout << std::setprecision(6);
  for (const auto& r : reports)
    std::cout << "E[...] i=" << detail::join_ints(r.query.i) << "  exact " << to_string(*r.exact) << " = "
              << r.exact->get_d() << "  MC " << r.mean.real() << " +- " << r.stderr_re << '\n';
}
