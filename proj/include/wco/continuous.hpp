#ifndef WCO_CONTINUOUS_HPP
#define WCO_CONTINUOUS_HPP

#include <cstddef>
#include <string>

namespace wco {

// Composite midpoint grid for the continuous validator on X = [0, 1/2]
// with u(x) = sqrt(x^3), phi(x) = x^2. Nodes stay strictly inside the
// interval, away from the x = 0 singularity of h(x) = 1/(2 sqrt(x)).
struct QuadratureGrid {
  std::size_t nodes = 4096;
  double tol = 1e-6;
};

struct ContinuousReport {
  double h_at_quarter = 0.0;       // closed-form h(0.25)
  double max_cov_residual = 0.0;   // change-of-variables identity residuals
  double max_identity_residual = 0.0;  // ||Wf||^2 vs int J |f|^2 dmu
  double criterion_max = 0.0;      // measured criterion over the grid
  double criterion_max_stated = 0.0;  // 2 sqrt(x^3) form over the grid
  bool criterion_ok = false;       // both forms <= 1 everywhere
  double dev_sqrt_form = 0.0;      // max |J_num - sqrt(x)/4|
  double dev_linear_form = 0.0;    // max |J_num - x/2|
  std::string j_winner;            // "sqrt(x)/4" or "x/2"
  double winner_dev = 0.0;
  bool ok = false;
};

// Validates the worked continuous example numerically: change of variables,
// the pushforward identity defining J, the hyponormality criterion bound,
// and an adjudication between the two closed-form candidates for J.
ContinuousReport continuous_example_check(const QuadratureGrid& grid);

}  // namespace wco

#endif
