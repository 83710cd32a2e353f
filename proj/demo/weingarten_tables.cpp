// Prints Weingarten values at k = 2 for every class at a few dimensions.

#include <iostream>

#include "wgcalc/wgcalc.hpp"

using namespace wgcalc;

int main() {
  for (Ensemble e : kAllEnsembles) {
    for (int n : {3, 4, 5}) {
      const EnsembleClass cls = is_chiral(e) ? EnsembleClass::chiral(e, n - 1, 1) : EnsembleClass::make(e, n);
      const auto wg = wg_function(cls, 2);
      std::cout << cls.key() << ':';
      for (const auto& row : wg_table_rows(*wg))
        std::cout << "  [" << to_string(row.representative) << "] " << to_string(row.value);
      std::cout << '\n';
    }
  }
}
