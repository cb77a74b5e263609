#include "wco/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wco/errors.hpp"

namespace wco {

namespace {

template <class F>
double midpoint(F f, double a, double b, std::size_t n) {
  if (!(b > a)) return 0.0;
  double h = (b - a) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += f(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

double u2(double x) { return x * x * x; }  // u(x)^2 = x^3

}  // namespace

ContinuousReport continuous_example_check(const QuadratureGrid& grid) {
  if (grid.nodes < 16) throw input_error("quadrature grid too coarse");
  ContinuousReport rep;

  const double half = 0.5;
  const double quarter = 0.25;  // phi([0, 1/2]) = [0, 1/4]
  auto h_closed = [](double x) { return 1.0 / (2.0 * std::sqrt(x)); };
  rep.h_at_quarter = h_closed(quarter);

  // (i) change of variables: int over phi^{-1}(a,b) of f equals
  // int_a^b f(sqrt(x)) / (2 sqrt(x)) dx, on intervals away from 0.
  const double pairs[][2] = {
      {0.01, 0.25}, {0.04, 0.16}, {0.0625, 0.2025}, {0.09, 0.25}};
  std::vector<std::vector<double>> polys = {
      {1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}, {1.0, -2.0, 0.0, 3.0}};
  auto evalp = [](const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  for (const auto& ab : pairs) {
    for (const auto& c : polys) {
      double lhs = midpoint([&](double x) { return evalp(c, x); },
                            std::sqrt(ab[0]), std::sqrt(ab[1]), grid.nodes);
      double rhs = midpoint(
          [&](double x) { return evalp(c, std::sqrt(x)) * h_closed(x); },
          ab[0], ab[1], grid.nodes);
      rep.max_cov_residual = std::max(rep.max_cov_residual,
                                      std::abs(lhs - rhs));
    }
  }

  // Numeric pushforward density of u^2 dmu under phi, from the cumulative
  // F(y) = int over phi^{-1}(0, y) of u^2 = int_0^{sqrt(y)} t^3 dt.
  auto cumulative = [&](double y) {
    double top = std::min(std::sqrt(std::max(y, 0.0)), half);
    return midpoint(u2, 0.0, top, grid.nodes);
  };
  auto j_num = [&](double y) {
    // keep the stencil inside (0, 1/4): past 1/4 the cumulative is flat
    // and a straddling difference would underestimate the density.
    double d = std::min({1e-3, 0.5 * y, quarter - y});
    d = std::max(d, 1e-6);
    return (cumulative(y + d) - cumulative(y - d)) / (2.0 * d);
  };

  // (ii) int J |f|^2 dmu over [0, 1/4] must equal ||Wf||^2 over [0, 1/2].
  std::vector<std::vector<double>> test_fs = {
      {1.0}, {0.0, 1.0}, {1.0, 1.0, 1.0}};
  std::size_t coarse = std::max<std::size_t>(grid.nodes / 16, 64);
  for (const auto& c : test_fs) {
    double lhs = midpoint(
        [&](double x) {
          double fx = evalp(c, x);
          return j_num(x) * fx * fx;
        },
        0.0, quarter, coarse);
    double rhs = midpoint(
        [&](double t) {
          double f_phi = evalp(c, t * t);
          return u2(t) * f_phi * f_phi;
        },
        0.0, half, grid.nodes);
    rep.max_identity_residual =
        std::max(rep.max_identity_residual, std::abs(lhs - rhs));
  }

  // (iii) criterion on the grid: the stated form 2 sqrt(x^3), and the
  // measured form h(phi(x)) * u(x)^2 / J(phi(x)) (phi is injective here,
  // so the conditional expectation is the identity).
  std::size_t crit_nodes = std::max<std::size_t>(grid.nodes / 64, 32);
  double hstep = half / static_cast<double>(crit_nodes);
  for (std::size_t i = 0; i < crit_nodes; ++i) {
    double x = (static_cast<double>(i) + 0.5) * hstep;
    double stated = 2.0 * std::sqrt(x * x * x);
    double measured = h_closed(x * x) * u2(x) / j_num(x * x);
    rep.criterion_max_stated = std::max(rep.criterion_max_stated, stated);
    rep.criterion_max = std::max(rep.criterion_max, measured);
  }
  rep.criterion_ok = rep.criterion_max <= 1.0 + grid.tol &&
                     rep.criterion_max_stated <= 1.0 + grid.tol;

  // (iv) adjudicate the closed-form candidates for J against the measured
  // pushforward density.
  std::size_t adj_nodes = 64;
  double astep = (0.24 - 0.01) / static_cast<double>(adj_nodes);
  for (std::size_t i = 0; i < adj_nodes; ++i) {
    double y = 0.01 + (static_cast<double>(i) + 0.5) * astep;
    double jn = j_num(y);
    rep.dev_sqrt_form =
        std::max(rep.dev_sqrt_form, std::abs(jn - std::sqrt(y) / 4.0));
    rep.dev_linear_form =
        std::max(rep.dev_linear_form, std::abs(jn - y / 2.0));
  }
  if (rep.dev_linear_form <= rep.dev_sqrt_form) {
    rep.j_winner = "x/2";
    rep.winner_dev = rep.dev_linear_form;
  } else {
    rep.j_winner = "sqrt(x)/4";
    rep.winner_dev = rep.dev_sqrt_form;
  }

  rep.ok = rep.max_cov_residual < grid.tol &&
           rep.max_identity_residual < grid.tol && rep.criterion_ok &&
           rep.winner_dev < grid.tol;
  if (!rep.ok && rep.max_cov_residual >= grid.tol)
    throw oracle_error("quadrature did not converge at the requested grid");
  return rep;
}

}  // namespace wco
