#ifndef WCO_MEASURE_HPP
#define WCO_MEASURE_HPP

#include <cstddef>
#include <vector>

#include "wco/errors.hpp"

namespace wco {

// Pointwise data on the atoms; indices are 0-based internally.
using RealFunction = std::vector<double>;

// Finite atomic measure space: atom k carries mass m_k > 0.
class DiscreteMeasureSpace {
 public:
  explicit DiscreteMeasureSpace(std::vector<double> masses);

  std::size_t size() const { return masses_.size(); }
  double mass(std::size_t k) const { return masses_[k]; }
  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const;

  // <f,g>_mu = sum f_k g_k m_k
  double inner(const RealFunction& f, const RealFunction& g) const;
  double norm(const RealFunction& f) const;

 private:
  std::vector<double> masses_;
};

// A total self-map of the atom index set, with preimage fibers cached.
// Construction requires every image index to stay inside the window, so
// the truncated system is a genuine finite measure system.
class Transformation {
 public:
  Transformation(std::vector<std::size_t> phi);

  std::size_t size() const { return phi_.size(); }
  std::size_t operator()(std::size_t k) const { return phi_[k]; }
  const std::vector<std::size_t>& map() const { return phi_; }
  const std::vector<std::size_t>& preimage(std::size_t k) const {
    return preimages_[k];
  }

  // phi^n, n >= 0 (n = 0 is the identity).
  Transformation power(std::size_t n) const;

 private:
  std::vector<std::size_t> phi_;
  std::vector<std::vector<std::size_t>> preimages_;
};

// Tolerance-thresholded support S(f) = { k : |f_k| > tol }.
struct Support {
  std::vector<std::size_t> indices;  // sorted
  double tolerance = 0.0;

  bool contains(std::size_t k) const;
  bool subset_of(const Support& other) const;
  bool empty() const { return indices.empty(); }
};

// Default threshold: 1e-12 * max|f|.
double default_support_tol(const RealFunction& f);

Support support_of(const RealFunction& f, double tol);

// g(k) = (1/m_k) * sum_{j in phi^{-1}(k)} w_j m_j.
// Density of the pushforward of w dmu under phi; w == 1 gives the
// Radon-Nikodym derivative h = d(mu o phi^{-1})/dmu.
RealFunction pushforward_density(const DiscreteMeasureSpace& space,
                                 const Transformation& t,
                                 const RealFunction& w);

RealFunction radon_nikodym_h(const DiscreteMeasureSpace& space,
                             const Transformation& t);

// E(f)(k) = weighted average of f over the fiber phi^{-1}(phi(k)).
RealFunction conditional_expectation(const DiscreteMeasureSpace& space,
                                     const Transformation& t,
                                     const RealFunction& f);

}  // namespace wco

#endif
