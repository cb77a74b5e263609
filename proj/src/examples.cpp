#include "wco/examples.hpp"

#include <cmath>

namespace wco::examples {

WeightedCompositionSystem cycle_demo() {
  return WeightedCompositionSystem(DiscreteMeasureSpace({1.0, 1.0, 1.0}),
                                   Transformation({1, 2, 0}),
                                   {1.0, 2.0, 4.0});
}

WeightedCompositionSystem discrete_window(std::size_t n) {
  if (n % 2 != 0) throw input_error("discrete window size must be even");
  std::vector<double> masses(n), u(n);
  std::vector<std::size_t> phi(n);
  for (std::size_t k = 0; k < n; ++k) {
    masses[k] = std::pow(2.0, -static_cast<double>(k + 1));
    // u * m is constant on each pair, so the pointwise criterion is 1.
    std::size_t pair = k / 2;
    double c = static_cast<double>(pair + 1) /
               (2.0 * static_cast<double>(pair + 2));
    u[k] = (k % 2 == 0) ? c : 2.0 * c;
    phi[k] = (k % 2 == 0) ? k + 1 : k - 1;
  }
  return WeightedCompositionSystem(DiscreteMeasureSpace(std::move(masses)),
                                   Transformation(std::move(phi)),
                                   std::move(u));
}

}  // namespace wco::examples
